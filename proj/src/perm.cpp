#include "simplegrp/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace simplegrp {

namespace {

void check_degree(int n) {
  if (n < 1 || n > kMaxDegree)
    throw std::domain_error("degree must be in 1.." +
                            std::to_string(kMaxDegree) + ", got " +
                            std::to_string(n));
}

}  // namespace

Perm::Perm(std::span<const std::uint8_t> images)
    : degree_(static_cast<std::uint8_t>(images.size())) {
  check_degree(static_cast<int>(images.size()));
  bool seen[kMaxDegree] = {};
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::uint8_t v = images[i];
    if (v >= images.size() || seen[v])
      throw std::invalid_argument("image array is not a bijection");
    seen[v] = true;
    images_[i] = v;
  }
}

Perm::Perm(std::initializer_list<int> images)
    : degree_(static_cast<std::uint8_t>(images.size())) {
  check_degree(static_cast<int>(images.size()));
  bool seen[kMaxDegree] = {};
  int i = 0;
  for (int v : images) {
    if (v < 0 || v >= static_cast<int>(images.size()) || seen[v])
      throw std::invalid_argument("image array is not a bijection");
    seen[v] = true;
    images_[i++] = static_cast<std::uint8_t>(v);
  }
}

Perm Perm::identity(int degree) {
  check_degree(degree);
  Perm p(unchecked_t{}, degree);
  for (int i = 0; i < degree; ++i) p.images_[i] = static_cast<std::uint8_t>(i);
  return p;
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree_; ++i)
    if (images_[i] != i) return false;
  return true;
}

std::uint64_t Perm::packed() const {
  std::uint64_t key = 0;
  for (int i = degree_ - 1; i >= 0; --i)
    key = (key << 4) | images_[i];
  return key;
}

Perm unrank(std::uint64_t k, int n) {
  check_degree(n);
  if (k >= factorial(n))
    throw std::domain_error("rank " + std::to_string(k) +
                            " out of range for degree " + std::to_string(n));
  // Factorial-base digits, least significant first: at step i the value
  // list holds the n-i unused points in increasing order and digit
  // r = k mod (n-i) picks the image of point i.
  std::uint8_t values[kMaxDegree];
  for (int i = 0; i < n; ++i) values[i] = static_cast<std::uint8_t>(i);
  Perm p(Perm::unchecked_t{}, n);
  int remaining = n;
  for (int i = 0; i < n; ++i) {
    const auto r = static_cast<int>(k % static_cast<std::uint64_t>(remaining));
    k /= static_cast<std::uint64_t>(remaining);
    p.images_[i] = values[r];
    for (int j = r; j + 1 < remaining; ++j) values[j] = values[j + 1];
    --remaining;
  }
  return p;
}

std::uint64_t rank(const Perm& p) {
  const int n = p.degree();
  // Digit i is the position of p(i) among the still-unused values, i.e. the
  // count of unused values smaller than p(i).
  bool used[kMaxDegree] = {};
  std::uint64_t digits[kMaxDegree];
  for (int i = 0; i < n; ++i) {
    const std::uint8_t v = p(i);
    std::uint64_t d = 0;
    for (int u = 0; u < v; ++u) d += !used[u];
    digits[i] = d;
    used[v] = true;
  }
  std::uint64_t k = 0;
  for (int i = n - 1; i >= 0; --i)
    k = k * static_cast<std::uint64_t>(n - i) + digits[i];
  return k;
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("degree mismatch in composition");
  Perm r(Perm::unchecked_t{}, p.degree());
  for (int i = 0; i < p.degree(); ++i) r.images_[i] = q(p(i));
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(Perm::unchecked_t{}, p.degree());
  for (int i = 0; i < p.degree(); ++i) r.images_[p(i)] = static_cast<std::uint8_t>(i);
  return r;
}

int sign(const Perm& p) {
  // Parity of n minus the number of cycles.
  bool seen[kMaxDegree] = {};
  int cycles = 0;
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int j = i; !seen[j]; j = p(j)) seen[j] = true;
  }
  return ((p.degree() - cycles) & 1) ? -1 : 1;
}

int fixed_points(const Perm& p) {
  int count = 0;
  for (int i = 0; i < p.degree(); ++i) count += p(i) == i;
  return count;
}

std::uint64_t element_order(const Perm& p) {
  std::uint64_t order = 1;
  bool seen[kMaxDegree] = {};
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (int j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> lengths;
  bool seen[kMaxDegree] = {};
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::vector<std::uint8_t> flatten_pair(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("degree mismatch in flatten_pair");
  const int n = p.degree();
  std::vector<std::uint8_t> bits(2 * static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i) * n + p(i)] = 1;
  const std::size_t off = static_cast<std::size_t>(n) * n;
  for (int i = 0; i < n; ++i)
    bits[off + static_cast<std::size_t>(i) * n + q(i)] = 1;
  return bits;
}

Perm parse_cycles(std::string_view text, int degree) {
  check_degree(degree);
  std::uint8_t images[kMaxDegree];
  for (int i = 0; i < degree; ++i) images[i] = static_cast<std::uint8_t>(i);
  bool moved[kMaxDegree] = {};

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse_point = [&]() -> int {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("expected a point number in cycle notation");
    int value = 0;
    for (std::size_t i = start; i < pos; ++i) value = value * 10 + (text[i] - '0');
    if (value < 1 || value > degree)
      throw std::invalid_argument("point " + std::to_string(value) +
                                  " outside 1.." + std::to_string(degree));
    return value - 1;
  };

  bool any_cycle = false;
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(')
      throw std::invalid_argument("expected '(' in cycle notation");
    ++pos;
    any_cycle = true;
    std::vector<int> cycle;
    skip_ws();
    if (pos < text.size() && text[pos] == ')') {
      ++pos;  // "()" = empty cycle, allowed as the identity
    } else {
      while (true) {
        const int pt = parse_point();
        if (moved[pt])
          throw std::invalid_argument("point " + std::to_string(pt + 1) +
                                      " appears twice");
        moved[pt] = true;
        cycle.push_back(pt);
        skip_ws();
        if (pos >= text.size())
          throw std::invalid_argument("unterminated cycle");
        if (text[pos] == ',') {
          ++pos;
          continue;
        }
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        throw std::invalid_argument("expected ',' or ')' in cycle notation");
      }
      for (std::size_t i = 0; i < cycle.size(); ++i)
        images[cycle[i]] = static_cast<std::uint8_t>(cycle[(i + 1) % cycle.size()]);
    }
    skip_ws();
  }
  if (!any_cycle) throw std::invalid_argument("empty cycle notation");
  return Perm(std::span<const std::uint8_t>(images, static_cast<std::size_t>(degree)));
}

std::string cycle_string(const Perm& p) {
  std::string out;
  bool seen[kMaxDegree] = {};
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i] || p(i) == i) {
      seen[i] = true;
      continue;
    }
    out += '(';
    bool first = true;
    for (int j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      if (!first) out += ',';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

}  // namespace simplegrp
