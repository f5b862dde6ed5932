#pragma once

// Permutations of {0, ..., n-1} for n up to 16, stored as image byte arrays,
// plus the factorial-base ranking that indexes S_n lexicographically.
//
// Conventions used throughout the project:
//  * points are 0-based internally; cycle notation I/O is 1-based
//  * composition (p * q)(i) = q(p(i)), i.e. p is applied first
//  * the permutation matrix of p has M[i][p(i)] = 1, rows flattened in order
//
// rank/unrank implement the factorial number system: rank k has digits
// d_0, ..., d_{n-1} with k = d_0 + n*(d_1 + (n-1)*(d_2 + ...)), where d_i
// selects the image of point i among the values still unused.  Rank 0 is the
// identity and rank n!-1 is the reversal.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace simplegrp {

inline constexpr int kMaxDegree = 16;

// n! for 0 <= n <= 20 (the largest factorial below 2^63).
inline constexpr std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

class Perm {
 public:
  Perm() : degree_(1) { images_[0] = 0; }

  // Validates that images is a bijection on {0, ..., n-1}; throws
  // std::invalid_argument otherwise.
  explicit Perm(std::span<const std::uint8_t> images);
  explicit Perm(std::initializer_list<int> images);

  static Perm identity(int degree);

  int degree() const { return degree_; }
  std::uint8_t operator()(int point) const { return images_[point]; }
  std::span<const std::uint8_t> images() const {
    return {images_.data(), static_cast<std::size_t>(degree_)};
  }

  bool is_identity() const;

  // Image arrays packed 4 bits per point; distinct permutations of equal
  // degree pack to distinct keys.
  std::uint64_t packed() const;

  friend bool operator==(const Perm& a, const Perm& b) {
    return a.degree_ == b.degree_ &&
           a.packed_prefix_equal(b);
  }

 private:
  struct unchecked_t {};
  Perm(unchecked_t, int degree) : degree_(static_cast<std::uint8_t>(degree)) {}
  bool packed_prefix_equal(const Perm& b) const {
    for (int i = 0; i < degree_; ++i)
      if (images_[i] != b.images_[i]) return false;
    return true;
  }

  std::array<std::uint8_t, kMaxDegree> images_;
  std::uint8_t degree_;

  friend Perm unrank(std::uint64_t, int);
  friend Perm compose(const Perm&, const Perm&);
  friend Perm inverse(const Perm&);
};

// Lexicographic index -> permutation.  Throws std::domain_error unless
// 1 <= n <= 16 and k < n!.
Perm unrank(std::uint64_t k, int n);

// Inverse of unrank.
std::uint64_t rank(const Perm& p);

// (p * q)(i) = q(p(i)).  Degrees must match.
Perm compose(const Perm& p, const Perm& q);

Perm inverse(const Perm& p);

// +1 for even permutations, -1 for odd.
int sign(const Perm& p);

// Number of points with p(i) == i; equals the trace of the permutation
// matrix.
int fixed_points(const Perm& p);

// Multiplicative order: least m >= 1 with p^m = identity (lcm of cycle
// lengths).
std::uint64_t element_order(const Perm& p);

// Sorted cycle lengths including fixed points; sums to the degree.
std::vector<int> cycle_type(const Perm& p);

// Concatenated permutation matrices of p then q, row-major, 2*n*n entries
// of 0/1.
std::vector<std::uint8_t> flatten_pair(const Perm& p, const Perm& q);

// Parses 1-based disjoint cycle notation, e.g. "(1,4,9,8)(2,5,3,6)".
// Whitespace between tokens is ignored; "()" denotes the identity.  Throws
// std::invalid_argument on malformed input, repeated points, or points
// outside 1..degree.
Perm parse_cycles(std::string_view text, int degree);

// Inverse of parse_cycles; fixed points are omitted, identity prints "()".
std::string cycle_string(const Perm& p);

}  // namespace simplegrp
