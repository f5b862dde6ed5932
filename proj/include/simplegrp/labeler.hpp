#pragma once

// Cached labeling of generator pairs.
//
// Sweeps over (r1, r2) pairs hit the same subgroups over and over: S_n has
// far fewer distinct subgroups than generator pairs (S_6: ~1,500 subgroups
// vs 517,680 pairs).  PairLabeler closes each pair and memoizes the derived
// properties keyed by the subgroup's element set, which is exact: two pairs
// share a cache entry only if they generate literally the same subgroup.
//
// Keys never collide silently.  Small groups (order <= 512) are keyed by
// their element rank set compared via the current closure's bitset; larger
// groups are keyed by the full membership bitset words.  The cache hash is
// 64-bit, with chaining plus full equality on hash ties.
//
// One PairLabeler per worker thread; instances are not thread-safe.

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "simplegrp/group.hpp"

namespace simplegrp {

struct PairProps {
  std::uint32_t order = 0;
  bool simple = false;
  bool abelian = false;
  std::int16_t catalog_index = -1;  // into builtin_catalog(), -1 = unknown
  GroupFingerprint fingerprint;
};

// Name of the catalog entry, or "unknown".
const std::string& props_name(const PairProps& props);

class PairLabeler {
 public:
  // Degree 2..10 (rank-bitset closures only).
  explicit PairLabeler(int degree);

  int degree() const { return degree_; }

  // Properties of <unrank(r1), unrank(r2)>.  The reference stays valid for
  // the labeler's lifetime.
  const PairProps& label(std::uint64_t r1, std::uint64_t r2);
  const PairProps& label(const Perm& a, const Perm& b);

  // Number of distinct subgroups seen so far.
  std::size_t cache_size() const { return nodes_; }

  // Fingerprints of the distinct subgroups seen, in insertion order.
  std::vector<const PairProps*> distinct_groups() const;

 private:
  struct Node {
    std::vector<std::uint32_t> rank_set;   // order <= kSparseLimit
    std::vector<std::uint64_t> bit_words;  // order >  kSparseLimit
    PairProps props;
    std::unique_ptr<Node> next;
  };

  static constexpr std::uint32_t kSparseLimit = 512;

  const Node* find_or_insert();

  int degree_;
  std::uint64_t word_count_;
  Closure closure_;
  std::unordered_map<std::uint64_t, std::unique_ptr<Node>> cache_;
  std::size_t nodes_ = 0;
  std::vector<const Node*> insertion_order_;
  Perm gens_[2];
};

}  // namespace simplegrp
