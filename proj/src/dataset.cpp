#include "simplegrp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "simplegrp/catalog.hpp"
#include "simplegrp/io.hpp"
#include "simplegrp/rng.hpp"
#include "simplegrp/sweep.hpp"

namespace simplegrp {

namespace {

void check_dataset_degree(int n, int max_n) {
  if (n < 4 || n > max_n)
    throw std::domain_error("degree must be in 4.." + std::to_string(max_n) +
                            ", got " + std::to_string(n));
}

bool admits(PairFilter filter, std::uint64_t r1, std::uint64_t r2) {
  if (r1 == r2) return false;
  if (filter == PairFilter::distinct_nonid && (r1 == 0 || r2 == 0))
    return false;
  return true;
}

DatasetEntry make_entry(int n, std::uint64_t r1, std::uint64_t r2,
                        const PairProps& props) {
  return DatasetEntry{n, r1, r2, props.simple, props.order, props_name(props)};
}

}  // namespace

const char* pair_filter_name(PairFilter f) {
  return f == PairFilter::distinct ? "distinct" : "distinct-nonid";
}

PairFilter pair_filter_from_name(std::string_view name) {
  if (name == "distinct") return PairFilter::distinct;
  if (name == "distinct-nonid") return PairFilter::distinct_nonid;
  throw std::invalid_argument("unknown pair filter '" + std::string(name) +
                              "' (expected distinct or distinct-nonid)");
}

std::uint64_t pair_count(int n, PairFilter filter) {
  const std::uint64_t nf = factorial(n);
  if (filter == PairFilter::distinct) return nf * nf - nf;
  return (nf - 1) * (nf - 2);
}

void enumerate_labeled_stream(
    int n, PairFilter filter, int workers,
    const std::function<void(std::span<const DatasetEntry>)>& sink) {
  check_dataset_degree(n, 7);
  const std::uint64_t nf = factorial(n);
  const std::uint64_t first_r1 = filter == PairFilter::distinct_nonid ? 1 : 0;

  // Work in chunks of r1 blocks: label a chunk in parallel, then emit its
  // blocks in order from the calling thread.
  const int nworkers = resolve_workers(workers);
  const std::uint64_t chunk = std::max<std::uint64_t>(
      8, static_cast<std::uint64_t>(nworkers) * 4);
  std::vector<std::vector<DatasetEntry>> slots(chunk);

  struct Ctx {
    PairLabeler labeler;
  };

  for (std::uint64_t chunk_start = first_r1; chunk_start < nf;
       chunk_start += chunk) {
    const std::uint64_t chunk_end = std::min(nf, chunk_start + chunk);
    run_blocks(
        chunk_end - chunk_start, workers, [&] { return Ctx{PairLabeler(n)}; },
        [&](Ctx& ctx, std::uint64_t b) {
          const std::uint64_t r1 = chunk_start + b;
          auto& rows = slots[b];
          rows.clear();
          rows.reserve(nf - 1);
          for (std::uint64_t r2 = first_r1; r2 < nf; ++r2) {
            if (!admits(filter, r1, r2)) continue;
            rows.push_back(make_entry(n, r1, r2, ctx.labeler.label(r1, r2)));
          }
        });
    for (std::uint64_t b = 0; b < chunk_end - chunk_start; ++b)
      sink(slots[b]);
  }
}

std::vector<DatasetEntry> enumerate_labeled(int n, PairFilter filter,
                                            int workers) {
  check_dataset_degree(n, 6);
  std::vector<DatasetEntry> out;
  out.reserve(pair_count(n, filter));
  enumerate_labeled_stream(n, filter, workers,
                           [&](std::span<const DatasetEntry> rows) {
                             out.insert(out.end(), rows.begin(), rows.end());
                           });
  return out;
}

std::vector<DatasetEntry> sample_labeled(int n, std::uint64_t count,
                                         std::uint64_t seed, PairFilter filter,
                                         int workers) {
  check_dataset_degree(n, 8);
  const std::uint64_t nf = factorial(n);

  // Pair draws are sequential so the sample is a function of the seed
  // alone; only the labeling fans out to workers.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  pairs.reserve(count);
  Rng rng(seed, Stream::sampling);
  while (pairs.size() < count) {
    const std::uint64_t r1 = rng.next_below(nf);
    const std::uint64_t r2 = rng.next_below(nf);
    if (!admits(filter, r1, r2)) continue;  // rejected, redraw the pair
    pairs.emplace_back(r1, r2);
  }

  std::vector<DatasetEntry> out(count);
  constexpr std::uint64_t kBlock = 1024;
  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  run_blocks(
      blocks, workers, [&] { return PairLabeler(n); },
      [&](PairLabeler& labeler, std::uint64_t b) {
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi = std::min<std::uint64_t>(count, lo + kBlock);
        for (std::uint64_t i = lo; i < hi; ++i)
          out[i] = make_entry(n, pairs[i].first, pairs[i].second,
                              labeler.label(pairs[i].first, pairs[i].second));
      });
  return out;
}

std::vector<DatasetEntry> balanced_sample(int n, std::uint64_t size,
                                          std::uint64_t seed, int workers) {
  check_dataset_degree(n, 8);
  if (size == 0 || size % 2 != 0)
    throw std::domain_error("balanced sample size must be even and positive");
  const std::uint64_t per_class = size / 2;
  const std::uint64_t nf = factorial(n);

  Rng rng(seed, Stream::corpus);
  std::vector<DatasetEntry> out;
  out.reserve(size);
  std::uint64_t have_simple = 0, have_other = 0;

  constexpr std::uint64_t kBatch = 4096;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::vector<DatasetEntry> labeled(kBatch);
  // Guard against a degenerate degree where one class never shows up.
  std::uint64_t barren_batches = 0;
  while (have_simple < per_class || have_other < per_class) {
    pairs.clear();
    while (pairs.size() < kBatch) {
      const std::uint64_t r1 = rng.next_below(nf);
      const std::uint64_t r2 = rng.next_below(nf);
      if (!admits(PairFilter::distinct, r1, r2)) continue;
      pairs.emplace_back(r1, r2);
    }
    constexpr std::uint64_t kBlock = 512;
    run_blocks(
        kBatch / kBlock, workers, [&] { return PairLabeler(n); },
        [&](PairLabeler& labeler, std::uint64_t b) {
          for (std::uint64_t i = b * kBlock; i < (b + 1) * kBlock; ++i)
            labeled[i] = make_entry(n, pairs[i].first, pairs[i].second,
                                    labeler.label(pairs[i].first, pairs[i].second));
        });
    const std::uint64_t before = have_simple + have_other;
    for (const DatasetEntry& e : labeled) {
      auto& have = e.simple ? have_simple : have_other;
      if (have == per_class) continue;
      ++have;
      out.push_back(e);
      if (have_simple == per_class && have_other == per_class) break;
    }
    barren_batches = (have_simple + have_other == before) ? barren_batches + 1 : 0;
    if (barren_batches > 64)
      throw std::domain_error("balanced sample cannot fill both classes");
  }
  return out;
}

std::vector<DatasetEntry> balance(std::span<const DatasetEntry> entries,
                                  std::uint64_t seed) {
  std::vector<std::uint32_t> other;
  std::uint64_t simple_count = 0;
  for (std::uint32_t i = 0; i < entries.size(); ++i) {
    if (entries[i].simple)
      ++simple_count;
    else
      other.push_back(i);
  }
  if (simple_count == 0)
    throw std::domain_error("cannot balance: no rows labeled simple");
  if (simple_count > other.size())
    throw std::domain_error("cannot balance: simple rows outnumber the rest");

  // Partial Fisher-Yates: the first simple_count slots of `other` end up
  // holding a uniform without-replacement draw.
  Rng rng(seed, Stream::balancing);
  for (std::uint64_t i = 0; i < simple_count; ++i) {
    const std::uint64_t j = i + rng.next_below(other.size() - i);
    std::swap(other[i], other[j]);
  }
  std::vector<bool> keep_other(entries.size(), false);
  for (std::uint64_t i = 0; i < simple_count; ++i) keep_other[other[i]] = true;

  std::vector<DatasetEntry> out;
  out.reserve(2 * simple_count);
  for (std::uint32_t i = 0; i < entries.size(); ++i)
    if (entries[i].simple || keep_other[i]) out.push_back(entries[i]);
  return out;
}

std::vector<DatasetEntry> subset_percent(std::span<const DatasetEntry> entries,
                                         double percent, std::uint64_t seed) {
  if (!(percent > 0.0) || percent > 100.0)
    throw std::domain_error("percent must lie in (0, 100]");

  // Each class gets a seeded priority order; taking the first
  // round(count*percent/100) per class makes subsets nest as percent grows.
  std::vector<std::uint32_t> klass[2];
  for (std::uint32_t i = 0; i < entries.size(); ++i)
    klass[entries[i].simple ? 0 : 1].push_back(i);

  std::vector<bool> keep(entries.size(), false);
  std::uint64_t kept = 0;
  for (int c = 0; c < 2; ++c) {
    Rng rng(seed, Stream::subset, static_cast<std::uint64_t>(c));
    rng.shuffle(klass[c]);
    const auto take = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(klass[c].size()) * percent / 100.0));
    for (std::uint64_t i = 0; i < take && i < klass[c].size(); ++i)
      keep[klass[c][i]] = true;
    kept += std::min<std::uint64_t>(take, klass[c].size());
  }
  if (kept == 0) throw std::domain_error("subset is empty at this percent");

  std::vector<DatasetEntry> out;
  out.reserve(kept);
  for (std::uint32_t i = 0; i < entries.size(); ++i)
    if (keep[i]) out.push_back(entries[i]);
  return out;
}

std::vector<std::uint32_t> SplitPlan::fold_indices(int fold) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] == fold) out.push_back(i);
  return out;
}

std::vector<std::uint32_t> SplitPlan::train_indices(int fold) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] != fold) out.push_back(i);
  return out;
}

SplitPlan kfold_split(std::size_t size, int folds, std::uint64_t seed) {
  if (folds < 2 || static_cast<std::size_t>(folds) > size)
    throw std::domain_error("fold count must lie in 2..dataset size");
  std::vector<std::uint32_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed, Stream::folding);
  rng.shuffle(order);

  SplitPlan plan;
  plan.fold_count = folds;
  plan.seed = seed;
  plan.assignment.resize(size);
  for (std::size_t pos = 0; pos < size; ++pos)
    plan.assignment[order[pos]] =
        static_cast<std::uint16_t>(pos % static_cast<std::size_t>(folds));
  return plan;
}

std::vector<CensusRow> census(int n, int workers) {
  if (n != 4 && n != 5)
    throw std::domain_error("census supports n = 4 and n = 5");
  const std::uint64_t nf = factorial(n);
  const std::size_t buckets = builtin_catalog().size() + 1;  // + unknown

  // Block = one r1 row writing its own count slot; unordered pairs are
  // labeled once and counted for both orders.  The final merge is a plain
  // sum, so worker count and scheduling cannot show in the result.
  std::vector<std::vector<std::uint64_t>> filtered(nf), unfiltered(nf);
  run_blocks(
      nf, workers, [&] { return PairLabeler(n); },
      [&](PairLabeler& labeler, std::uint64_t r1) {
        auto& frow = filtered[r1];
        auto& urow = unfiltered[r1];
        frow.assign(buckets, 0);
        urow.assign(buckets, 0);
        const auto slot = [&](const PairProps& props) -> std::size_t {
          return props.catalog_index < 0
                     ? buckets - 1
                     : static_cast<std::size_t>(props.catalog_index);
        };
        urow[slot(labeler.label(r1, r1))] += 1;
        for (std::uint64_t r2 = r1 + 1; r2 < nf; ++r2) {
          const std::size_t s = slot(labeler.label(r1, r2));
          frow[s] += 2;
          urow[s] += 2;
        }
      });

  struct Counts {
    std::vector<std::uint64_t> filtered, unfiltered;
  };
  Counts total{std::vector<std::uint64_t>(buckets, 0),
               std::vector<std::uint64_t>(buckets, 0)};
  for (std::uint64_t r1 = 0; r1 < nf; ++r1)
    for (std::size_t i = 0; i < buckets; ++i) {
      total.filtered[i] += filtered[r1][i];
      total.unfiltered[i] += unfiltered[r1][i];
    }

  std::vector<CensusRow> rows;
  const auto& catalog = builtin_catalog();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (total.filtered[i] == 0) continue;
    rows.push_back(CensusRow{catalog[i].name, catalog[i].simple,
                             total.filtered[i], total.unfiltered[i]});
  }
  if (total.filtered[buckets - 1] != 0)
    rows.push_back(CensusRow{kUnknownGroupName, false,
                             total.filtered[buckets - 1],
                             total.unfiltered[buckets - 1]});
  return rows;
}

DatasetStats dataset_stats(std::span<const DatasetEntry> entries) {
  DatasetStats stats;
  stats.total = entries.size();
  std::unordered_map<std::string, std::uint64_t> names;
  for (const DatasetEntry& e : entries) {
    if (e.simple)
      ++stats.simple_count;
    else
      ++stats.nonsimple_count;
    ++names[e.group_name];
  }
  stats.simple_fraction =
      stats.total == 0
          ? 0.0
          : static_cast<double>(stats.simple_count) / static_cast<double>(stats.total);
  stats.by_name.assign(names.begin(), names.end());
  std::sort(stats.by_name.begin(), stats.by_name.end(),
            [](const auto& a, const auto& b) {
              return a.second != b.second ? a.second > b.second
                                          : a.first < b.first;
            });
  return stats;
}

std::string dataset_header(int n, PairFilter filter) {
  return "#simplegrp-v1 n=" + std::to_string(n) +
         " filter=" + pair_filter_name(filter) + "\n";
}

void append_dataset_rows(std::string& out,
                         std::span<const DatasetEntry> rows) {
  for (const DatasetEntry& e : rows) {
    out += std::to_string(e.degree);
    out += '\t';
    out += std::to_string(e.r1);
    out += '\t';
    out += std::to_string(e.r2);
    out += '\t';
    out += e.simple ? '1' : '0';
    out += '\t';
    out += std::to_string(e.group_order);
    out += '\t';
    out += e.group_name;
    out += '\n';
  }
}

void save_dataset(std::span<const DatasetEntry> entries,
                  const std::filesystem::path& path, int n,
                  PairFilter filter) {
  std::string out = dataset_header(n, filter);
  out.reserve(out.size() + entries.size() * 24);
  append_dataset_rows(out, entries);
  write_file_atomic(path, out);
}

namespace {

std::vector<std::string_view> split_sv(std::string_view s, char sep) {
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

std::uint64_t parse_u64_field(std::string_view s, std::size_t line_no,
                              const char* what) {
  if (s.empty())
    throw std::invalid_argument("dataset line " + std::to_string(line_no) +
                                ": empty " + what);
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("dataset line " + std::to_string(line_no) +
                                  ": bad " + what + " '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

LoadedDataset load_dataset(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  LoadedDataset loaded;

  std::size_t line_no = 0;
  bool have_header = false;
  for (std::string_view line : split_sv(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    if (!have_header) {
      // "#simplegrp-v1 n=<n> filter=<filter>"
      const auto parts = split_sv(line, ' ');
      if (parts.size() != 3 || parts[0] != "#simplegrp-v1" ||
          !parts[1].starts_with("n=") || !parts[2].starts_with("filter="))
        throw std::invalid_argument("dataset line 1: bad header '" +
                                    std::string(line) + "'");
      loaded.n = static_cast<int>(
          parse_u64_field(parts[1].substr(2), line_no, "degree"));
      if (loaded.n < 4 || loaded.n > 8)
        throw std::invalid_argument("dataset line 1: degree out of range");
      loaded.filter = pair_filter_from_name(parts[2].substr(7));
      have_header = true;
      continue;
    }
    const auto fields = split_sv(line, '\t');
    if (fields.size() != 6)
      throw std::invalid_argument("dataset line " + std::to_string(line_no) +
                                  ": expected 6 fields, got " +
                                  std::to_string(fields.size()));
    DatasetEntry e;
    e.degree = static_cast<int>(parse_u64_field(fields[0], line_no, "degree"));
    if (e.degree != loaded.n)
      throw std::invalid_argument("dataset line " + std::to_string(line_no) +
                                  ": degree differs from header");
    e.r1 = parse_u64_field(fields[1], line_no, "r1");
    e.r2 = parse_u64_field(fields[2], line_no, "r2");
    const std::uint64_t nf = factorial(loaded.n);
    if (e.r1 >= nf || e.r2 >= nf)
      throw std::invalid_argument("dataset line " + std::to_string(line_no) +
                                  ": rank out of range for degree");
    const std::uint64_t simple = parse_u64_field(fields[3], line_no, "label");
    if (simple > 1)
      throw std::invalid_argument("dataset line " + std::to_string(line_no) +
                                  ": label must be 0 or 1");
    e.simple = simple == 1;
    e.group_order = parse_u64_field(fields[4], line_no, "order");
    e.group_name = std::string(fields[5]);
    if (e.group_name.empty())
      throw std::invalid_argument("dataset line " + std::to_string(line_no) +
                                  ": empty group name");
    loaded.entries.push_back(std::move(e));
  }
  if (!have_header)
    throw std::invalid_argument("dataset file " + path.string() +
                                " is empty or lacks a header");
  return loaded;
}

}  // namespace simplegrp
