#include "simplegrp/catalog.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace simplegrp {

namespace {

// Keep byte-identical to data/group_catalog.tsv (tests enforce this).
constexpr std::string_view kCatalogText =
    "# Isomorphism types of subgroups of S_n generated by two permutations,\n"
    "# complete for n <= 5.  Classification matches on the fingerprint\n"
    "# (order, element-order histogram, abelian); these 16 fingerprints are\n"
    "# pairwise distinct.\n"
    "# Columns: gap_id<TAB>name<TAB>order<TAB>simple<TAB>abelian<TAB>profile\n"
    "# profile: comma-separated order:count pairs, ascending by order.\n"
    "[1,1]\t1\t1\t0\t1\t1:1\n"
    "[2,1]\tC2\t2\t1\t1\t1:1,2:1\n"
    "[3,1]\tC3\t3\t1\t1\t1:1,3:2\n"
    "[4,1]\tC4\t4\t0\t1\t1:1,2:1,4:2\n"
    "[4,2]\tC2 x C2\t4\t0\t1\t1:1,2:3\n"
    "[5,1]\tC5\t5\t1\t1\t1:1,5:4\n"
    "[6,1]\tS3\t6\t0\t0\t1:1,2:3,3:2\n"
    "[6,2]\tC6\t6\t0\t1\t1:1,2:1,3:2,6:2\n"
    "[8,3]\tD8\t8\t0\t0\t1:1,2:5,4:2\n"
    "[10,1]\tD10\t10\t0\t0\t1:1,2:5,5:4\n"
    "[12,3]\tA4\t12\t0\t0\t1:1,2:3,3:8\n"
    "[12,4]\tD12\t12\t0\t0\t1:1,2:7,3:2,6:2\n"
    "[20,3]\tC5 : C4\t20\t0\t0\t1:1,2:5,4:10,5:4\n"
    "[24,12]\tS4\t24\t0\t0\t1:1,2:9,3:8,4:6\n"
    "[60,5]\tA5\t60\t1\t0\t1:1,2:15,3:20,5:24\n"
    "[120,34]\tS5\t120\t0\t0\t1:1,2:25,3:20,4:30,5:24,6:20\n";

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::uint64_t parse_u64(std::string_view s, int line_no, const char* what) {
  std::uint64_t value = 0;
  if (s.empty()) throw std::invalid_argument(std::string("catalog line ") +
                                             std::to_string(line_no) +
                                             ": empty " + what);
  for (char c : s) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("catalog line " + std::to_string(line_no) +
                                  ": bad " + what + " '" + std::string(s) + "'");
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

struct FingerprintKey {
  std::uint64_t hash;
  GroupFingerprint fp;
};

}  // namespace

std::string_view builtin_catalog_text() { return kCatalogText; }

std::vector<CatalogEntry> parse_catalog(std::string_view text) {
  std::vector<CatalogEntry> entries;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 6)
      throw std::invalid_argument("catalog line " + std::to_string(line_no) +
                                  ": expected 6 tab-separated fields, got " +
                                  std::to_string(fields.size()));
    CatalogEntry entry;
    entry.gap_id = std::string(fields[0]);
    entry.name = std::string(fields[1]);
    entry.fingerprint.order = parse_u64(fields[2], line_no, "order");
    entry.simple = parse_u64(fields[3], line_no, "simple flag") != 0;
    entry.fingerprint.abelian = parse_u64(fields[4], line_no, "abelian flag") != 0;
    std::uint64_t total = 0;
    for (std::string_view item : split(fields[5], ',')) {
      const auto parts = split(item, ':');
      if (parts.size() != 2)
        throw std::invalid_argument("catalog line " + std::to_string(line_no) +
                                    ": bad profile item '" + std::string(item) + "'");
      const auto order = static_cast<std::uint32_t>(parse_u64(parts[0], line_no, "profile order"));
      const auto count = static_cast<std::uint32_t>(parse_u64(parts[1], line_no, "profile count"));
      if (!entry.fingerprint.profile.items.empty() &&
          entry.fingerprint.profile.items.back().first >= order)
        throw std::invalid_argument("catalog line " + std::to_string(line_no) +
                                    ": profile orders must increase");
      entry.fingerprint.profile.items.emplace_back(order, count);
      total += count;
    }
    if (total != entry.fingerprint.order)
      throw std::invalid_argument("catalog line " + std::to_string(line_no) +
                                  ": profile counts sum to " + std::to_string(total) +
                                  ", order is " + std::to_string(entry.fingerprint.order));
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open catalog file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> entries = parse_catalog(kCatalogText);
  return entries;
}

namespace {

const std::unordered_map<std::uint64_t, int>& fingerprint_index() {
  static const std::unordered_map<std::uint64_t, int> index = [] {
    std::unordered_map<std::uint64_t, int> map;
    const auto& entries = builtin_catalog();
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
      const auto [it, inserted] =
          map.emplace(fingerprint_hash(entries[i].fingerprint), i);
      if (!inserted)
        throw std::logic_error("catalog fingerprint hash collision");
    }
    return map;
  }();
  return index;
}

}  // namespace

int classify_index(const GroupFingerprint& fp) {
  const auto& index = fingerprint_index();
  const auto it = index.find(fingerprint_hash(fp));
  if (it == index.end()) return -1;
  // Hash hit still requires a full fingerprint match.
  if (!(builtin_catalog()[it->second].fingerprint == fp)) return -1;
  return it->second;
}

std::string classify(const GroupFingerprint& fp) {
  const int idx = classify_index(fp);
  return idx < 0 ? std::string(kUnknownGroupName) : builtin_catalog()[idx].name;
}

std::string classify(const GeneratedGroup& g) { return classify(order_profile(g)); }

}  // namespace simplegrp
