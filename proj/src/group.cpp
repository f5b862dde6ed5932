#include "simplegrp/group.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

namespace simplegrp {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::uint64_t fingerprint_hash(const GroupFingerprint& fp) {
  std::uint64_t h = fp.order * 0x9e3779b97f4a7c15ull + (fp.abelian ? 1 : 0);
  for (const auto& [order, count] : fp.profile.items) {
    h ^= (static_cast<std::uint64_t>(order) << 32 | count) + 0x9e3779b97f4a7c15ull +
         (h << 6) + (h >> 2);
  }
  return h;
}

void Closure::rebuild(std::span<const Perm> gens) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  const int n = gens[0].degree();
  for (const Perm& g : gens)
    if (g.degree() != n) throw std::invalid_argument("generator degrees differ");

  degree_ = n;
  elems_.clear();
  ranks_.clear();
  if (n <= kBitsetMaxDegree) {
    const std::uint64_t words = (factorial(n) + 63) / 64;
    if (bits_.size() < words) bits_.assign(words, 0);
    else std::memset(bits_.data(), 0, words * sizeof(std::uint64_t));
  } else {
    keys_.clear();
  }

  insert(Perm::identity(n));
  // Breadth-first: elems_ doubles as the queue since appends only happen at
  // the back.
  for (std::size_t head = 0; head < elems_.size(); ++head) {
    const Perm current = elems_[head];
    for (const Perm& g : gens) insert(compose(current, g));
  }
}

bool Closure::insert(const Perm& p) {
  if (degree_ <= kBitsetMaxDegree) {
    const std::uint64_t r = rank(p);
    std::uint64_t& word = bits_[r >> 6];
    const std::uint64_t bit = 1ull << (r & 63);
    if (word & bit) return false;
    word |= bit;
    ranks_.push_back(r);
  } else {
    if (!keys_.insert(p.packed()).second) return false;
  }
  elems_.push_back(p);
  return true;
}

bool Closure::contains(const Perm& p) const {
  if (degree_ == 0 || p.degree() != degree_) return false;
  if (degree_ <= kBitsetMaxDegree) {
    const std::uint64_t r = rank(p);
    return (bits_[r >> 6] >> (r & 63)) & 1;
  }
  return keys_.contains(p.packed());
}

GeneratedGroup generate(std::vector<Perm> gens) {
  Closure cl;
  cl.rebuild(gens);
  return GeneratedGroup(std::move(gens), std::move(cl));
}

bool is_abelian_gens(std::span<const Perm> gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!(compose(gens[i], gens[j]) == compose(gens[j], gens[i])))
        return false;
  return true;
}

bool is_abelian(const GeneratedGroup& g) { return is_abelian_gens(g.generators()); }

OrderProfile profile_of_closure(const Closure& cl) {
  // Element orders in S_16 never exceed 140, so a flat histogram suffices.
  std::uint32_t counts[141] = {};
  for (const Perm& p : cl.elements()) ++counts[element_order(p)];
  OrderProfile profile;
  for (std::uint32_t order = 1; order <= 140; ++order)
    if (counts[order]) profile.items.emplace_back(order, counts[order]);
  return profile;
}

GroupFingerprint order_profile(const GeneratedGroup& g) {
  return GroupFingerprint{g.order(), profile_of_closure(g.closure()),
                          is_abelian(g)};
}

namespace {

// Conjugates of x by words in gens cover the whole conjugacy class of x in
// the generated group (every group element is such a word).
GeneratedGroup normal_closure_impl(std::span<const Perm> gens, const Perm& x) {
  std::vector<Perm> inv_gens;
  inv_gens.reserve(gens.size());
  for (const Perm& g : gens) inv_gens.push_back(inverse(g));

  std::vector<Perm> kgens{x};
  Closure k;
  k.rebuild(kgens);
  // Alternate conjugation and re-closure until the element set is stable
  // under conjugation by the ambient generators.
  for (;;) {
    std::vector<Perm> added;
    for (const Perm& h : k.elements()) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const Perm conj = compose(compose(inv_gens[i], h), gens[i]);
        if (!k.contains(conj)) added.push_back(conj);
      }
      if (added.size() > 64) break;  // re-close early, the set is growing
    }
    if (added.empty()) break;
    for (Perm& p : added) kgens.push_back(std::move(p));
    k.rebuild(kgens);
  }
  return GeneratedGroup(std::move(kgens), std::move(k));
}

}  // namespace

GeneratedGroup normal_closure(const GeneratedGroup& g, const Perm& x) {
  if (!g.contains(x))
    throw std::invalid_argument("element lies outside the group");
  return normal_closure_impl(g.generators(), x);
}

bool is_simple_closure(const Closure& cl, std::span<const Perm> gens) {
  const std::uint64_t order = cl.order();
  if (order == 1) return false;  // convention: trivial group is not simple
  if (is_prime(order)) return true;

  // A generator of odd sign gives a surjection onto {+1,-1}, whose kernel
  // is a proper normal subgroup of index 2; with |G| > 2 composite that
  // kernel is nontrivial.
  for (const Perm& g : gens)
    if (sign(g) == -1) return false;

  // One normal-closure test per conjugacy class.  Classes are discovered
  // on the fly: conjugating repeatedly by the generators reaches the whole
  // class of each representative.
  std::vector<Perm> inv_gens;
  inv_gens.reserve(gens.size());
  for (const Perm& g : gens) inv_gens.push_back(inverse(g));

  const auto elems = cl.elements();
  std::vector<bool> visited(elems.size(), false);
  // Index within elems by position; membership lookups go through a local
  // map from packed key to index.
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  index.reserve(elems.size() * 2);
  for (std::uint32_t i = 0; i < elems.size(); ++i)
    index.emplace(elems[i].packed(), i);

  std::vector<std::uint32_t> stack;
  for (std::uint32_t start = 0; start < elems.size(); ++start) {
    if (visited[start] || elems[start].is_identity()) continue;
    // Mark the whole conjugacy class of elems[start].
    visited[start] = true;
    stack.assign(1, start);
    while (!stack.empty()) {
      const Perm current = elems[stack.back()];
      stack.pop_back();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const Perm conj = compose(compose(inv_gens[i], current), gens[i]);
        const std::uint32_t idx = index.at(conj.packed());
        if (!visited[idx]) {
          visited[idx] = true;
          stack.push_back(idx);
        }
      }
    }
    const GeneratedGroup ncl = normal_closure_impl(gens, elems[start]);
    if (ncl.order() < order) return false;
  }
  return true;
}

bool is_simple(const GeneratedGroup& g) {
  return is_simple_closure(g.closure(), g.generators());
}

}  // namespace simplegrp
