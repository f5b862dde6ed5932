#include "simplegrp/labeler.hpp"

#include <cstring>
#include <stdexcept>
#include <string>

#include "simplegrp/catalog.hpp"
#include "simplegrp/rng.hpp"

namespace simplegrp {

namespace {

const std::string kUnknown = kUnknownGroupName;

}  // namespace

const std::string& props_name(const PairProps& props) {
  if (props.catalog_index < 0) return kUnknown;
  return builtin_catalog()[props.catalog_index].name;
}

PairLabeler::PairLabeler(int degree)
    : degree_(degree),
      word_count_((factorial(degree) + 63) / 64),
      gens_{Perm::identity(1), Perm::identity(1)} {
  if (degree < 2 || degree > Closure::kBitsetMaxDegree)
    throw std::invalid_argument("pair labeler supports degree 2.." +
                                std::to_string(Closure::kBitsetMaxDegree));
}

const PairProps& PairLabeler::label(std::uint64_t r1, std::uint64_t r2) {
  gens_[0] = unrank(r1, degree_);
  gens_[1] = unrank(r2, degree_);
  closure_.rebuild({gens_, 2});
  return find_or_insert()->props;
}

const PairProps& PairLabeler::label(const Perm& a, const Perm& b) {
  if (a.degree() != degree_ || b.degree() != degree_)
    throw std::invalid_argument("generator degree does not match labeler");
  gens_[0] = a;
  gens_[1] = b;
  closure_.rebuild({gens_, 2});
  return find_or_insert()->props;
}

const PairLabeler::Node* PairLabeler::find_or_insert() {
  const std::uint64_t order = closure_.order();
  const auto& words = closure_.member_words();
  const auto& ranks = closure_.element_ranks();

  // Order-independent hash: small groups over the element rank set, large
  // ones over the canonical bitset words.
  std::uint64_t h = splitmix64_mix(
      (static_cast<std::uint64_t>(degree_) << 32) ^ order);
  const bool sparse = order <= kSparseLimit;
  if (sparse) {
    std::uint64_t sum = 0;
    for (const std::uint64_t r : ranks) sum += splitmix64_mix(r);
    h = splitmix64_mix(h ^ sum);
  } else {
    for (std::uint64_t w = 0; w < word_count_; ++w)
      h = splitmix64_mix(h ^ words[w]);
  }

  auto [slot, inserted] = cache_.try_emplace(h, nullptr);
  if (!inserted) {
    for (const Node* node = slot->second.get(); node; node = node->next.get()) {
      if (node->props.order != order) continue;
      if (sparse) {
        // Equal order plus containment of every stored rank means equality.
        bool all = true;
        for (const std::uint32_t r : node->rank_set) {
          if (!((words[r >> 6] >> (r & 63)) & 1)) {
            all = false;
            break;
          }
        }
        if (all) return node;
      } else {
        if (std::memcmp(node->bit_words.data(), words.data(),
                        word_count_ * sizeof(std::uint64_t)) == 0)
          return node;
      }
    }
  }

  auto node = std::make_unique<Node>();
  if (sparse) {
    node->rank_set.reserve(ranks.size());
    for (const std::uint64_t r : ranks)
      node->rank_set.push_back(static_cast<std::uint32_t>(r));
  } else {
    node->bit_words.assign(words.begin(), words.begin() + word_count_);
  }
  node->props.order = static_cast<std::uint32_t>(order);
  node->props.abelian = is_abelian_gens({gens_, 2});
  node->props.simple = is_simple_closure(closure_, {gens_, 2});
  node->props.fingerprint =
      GroupFingerprint{order, profile_of_closure(closure_), node->props.abelian};
  node->props.catalog_index =
      static_cast<std::int16_t>(classify_index(node->props.fingerprint));

  node->next = std::move(slot->second);
  slot->second = std::move(node);
  ++nodes_;
  insertion_order_.push_back(slot->second.get());
  return slot->second.get();
}

std::vector<const PairProps*> PairLabeler::distinct_groups() const {
  std::vector<const PairProps*> out;
  out.reserve(insertion_order_.size());
  for (const Node* node : insertion_order_) out.push_back(&node->props);
  return out;
}

}  // namespace simplegrp
