#pragma once

// Finite permutation groups given by generators.
//
// Groups are materialized as explicit element sets via breadth-first closure
// under right multiplication by the generators.  Intended scale is full
// closure of subgroups of S_n for n <= 10 or so (the hot paths in this
// project stay at n <= 8, where the largest group has 40320 elements);
// nothing here implements stabilizer chains.
//
// Membership bookkeeping: for degree <= 10 a bitset indexed by lexicographic
// rank (at most 10!/8 bytes = 454 KB), otherwise a hash set of packed image
// keys.  The rank-bitset doubles as a canonical, generator-independent
// identity for the subgroup, which the pair labeler uses as a cache key.

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_set>
#include <vector>

#include "simplegrp/perm.hpp"

namespace simplegrp {

// Element-order histogram as sorted (order, count) pairs.
struct OrderProfile {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> items;

  // The set projection: just the distinct orders.
  std::vector<std::uint32_t> orders() const {
    std::vector<std::uint32_t> out;
    out.reserve(items.size());
    for (const auto& [order, count] : items) out.push_back(order);
    return out;
  }

  friend bool operator==(const OrderProfile&, const OrderProfile&) = default;
};

// Isomorphism-invariant summary used for catalog classification: group
// order, element-order histogram, and commutativity.  Not a complete
// isomorphism invariant in general, but it separates every group the
// catalog lists.
struct GroupFingerprint {
  std::uint64_t order = 0;
  OrderProfile profile;
  bool abelian = false;

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

std::uint64_t fingerprint_hash(const GroupFingerprint& fp);

// Closed element set of the group generated by a span of permutations.
// rebuild() reuses allocated capacity, so one Closure instance can sweep
// millions of generator pairs without churning the allocator.
class Closure {
 public:
  Closure() = default;

  // Throws std::invalid_argument on an empty generator list or mixed
  // degrees.
  void rebuild(std::span<const Perm> gens);

  int degree() const { return degree_; }
  std::uint64_t order() const { return elems_.size(); }
  std::span<const Perm> elements() const { return elems_; }
  bool contains(const Perm& p) const;

  // Canonical membership words (degree <= 10 only): bit k set iff the
  // permutation of rank k belongs to the group.  May be longer than
  // ceil(n!/64) words when the instance previously closed a larger degree;
  // only the first ceil(n!/64) words are meaningful.
  const std::vector<std::uint64_t>& member_words() const { return bits_; }
  bool has_member_words() const { return degree_ <= kBitsetMaxDegree; }

  // Ranks of elements(), in discovery order (degree <= 10 only).
  const std::vector<std::uint64_t>& element_ranks() const { return ranks_; }

  static constexpr int kBitsetMaxDegree = 10;

 private:
  bool insert(const Perm& p);

  int degree_ = 0;
  std::vector<Perm> elems_;
  std::vector<std::uint64_t> ranks_;         // degree <= 10
  std::vector<std::uint64_t> bits_;          // degree <= 10
  std::unordered_set<std::uint64_t> keys_;   // degree > 10, packed images
};

// Public group value: generators plus the closed element set.
class GeneratedGroup {
 public:
  GeneratedGroup(std::vector<Perm> gens, Closure closure)
      : gens_(std::move(gens)), closure_(std::move(closure)) {}

  int degree() const { return closure_.degree(); }
  std::uint64_t order() const { return closure_.order(); }
  std::span<const Perm> elements() const { return closure_.elements(); }
  std::span<const Perm> generators() const { return gens_; }
  bool contains(const Perm& p) const { return closure_.contains(p); }
  const Closure& closure() const { return closure_; }

 private:
  std::vector<Perm> gens_;
  Closure closure_;
};

// Closes the generators.  Throws std::invalid_argument on empty input or
// mixed degrees.
GeneratedGroup generate(std::vector<Perm> gens);

// True iff the generators pairwise commute (equivalently, the group is
// abelian).
bool is_abelian(const GeneratedGroup& g);

// Full fingerprint: order, element-order histogram, abelian flag.
GroupFingerprint order_profile(const GeneratedGroup& g);

// Smallest normal subgroup of g containing x.  x must lie in g.
GeneratedGroup normal_closure(const GeneratedGroup& g, const Perm& x);

// Simplicity, with the convention that the trivial group is not simple.
// Decided by checking the normal closure of one representative per
// conjugacy class; prime order and "some generator is odd with |g| > 2"
// short-circuit the common cases.
bool is_simple(const GeneratedGroup& g);

// Closure-level variants used by the sweep cache; gens must generate cl.
bool is_abelian_gens(std::span<const Perm> gens);
OrderProfile profile_of_closure(const Closure& cl);
bool is_simple_closure(const Closure& cl, std::span<const Perm> gens);

}  // namespace simplegrp
