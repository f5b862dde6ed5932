#include "simplegrp/features.hpp"

#include <algorithm>
#include <stdexcept>

#include "simplegrp/sweep.hpp"

namespace simplegrp {

const char* feature_mode_name(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::matrices: return "matrices";
    case FeatureMode::invariants: return "invariants";
    case FeatureMode::invariants_alt: return "invariants-alt";
    case FeatureMode::order_profile: return "order-profile";
  }
  return "?";
}

FeatureMode feature_mode_from_name(std::string_view name) {
  if (name == "matrices") return FeatureMode::matrices;
  if (name == "invariants") return FeatureMode::invariants;
  if (name == "invariants-alt") return FeatureMode::invariants_alt;
  if (name == "order-profile") return FeatureMode::order_profile;
  throw std::invalid_argument(
      "unknown feature mode '" + std::string(name) +
      "' (expected matrices, invariants, invariants-alt or order-profile)");
}

int feature_dim(FeatureMode mode, int degree) {
  switch (mode) {
    case FeatureMode::matrices: return 2 * degree * degree;
    case FeatureMode::invariants:
    case FeatureMode::invariants_alt: return 5;
    case FeatureMode::order_profile: return 16;
  }
  return 0;
}

namespace {

constexpr int kProfileBins = 15;

// Writes the encoding into out[0..dim).
template <typename T>
void encode(const DatasetEntry& entry, FeatureMode mode, PairLabeler& labeler,
            T* out) {
  const int n = entry.degree;
  const Perm a = unrank(entry.r1, n);
  const Perm b = unrank(entry.r2, n);
  switch (mode) {
    case FeatureMode::matrices: {
      const auto bits = flatten_pair(a, b);
      for (std::size_t i = 0; i < bits.size(); ++i)
        out[i] = static_cast<T>(bits[i]);
      break;
    }
    case FeatureMode::invariants: {
      const PairProps& props = labeler.label(a, b);
      out[0] = static_cast<T>(fixed_points(a)) / static_cast<T>(n);
      out[1] = static_cast<T>(fixed_points(b)) / static_cast<T>(n);
      out[2] = static_cast<T>(sign(a));
      out[3] = static_cast<T>(sign(b));
      out[4] = static_cast<T>(props.abelian ? 1 : 0);
      break;
    }
    case FeatureMode::invariants_alt: {
      const PairProps& props = labeler.label(a, b);
      out[0] = static_cast<T>(fixed_points(a)) / static_cast<T>(n);
      out[1] = static_cast<T>(fixed_points(b)) / static_cast<T>(n);
      out[2] = static_cast<T>(element_order(a)) / static_cast<T>(n);
      out[3] = static_cast<T>(element_order(b)) / static_cast<T>(n);
      out[4] = static_cast<T>(props.abelian ? 1 : 0);
      break;
    }
    case FeatureMode::order_profile: {
      if (n > 8)
        throw std::domain_error("order-profile features support degree <= 8");
      const PairProps& props = labeler.label(a, b);
      for (int i = 0; i < kProfileBins + 1; ++i) out[i] = T(0);
      const T order = static_cast<T>(props.order);
      for (const auto& [elem_order, count] : props.fingerprint.profile.items)
        out[elem_order - 1] = static_cast<T>(count) / order;
      out[kProfileBins] = order / static_cast<T>(factorial(n));
      break;
    }
  }
}

}  // namespace

FeatureVector featurize(const DatasetEntry& entry, FeatureMode mode,
                        PairLabeler* labeler) {
  FeatureVector fv{mode, std::vector<double>(
                             static_cast<std::size_t>(
                                 feature_dim(mode, entry.degree)),
                             0.0)};
  if (labeler) {
    encode(entry, mode, *labeler, fv.values.data());
  } else {
    PairLabeler local(entry.degree);
    encode(entry, mode, local, fv.values.data());
  }
  return fv;
}

FeaturizedSet featurize_all(std::span<const DatasetEntry> entries,
                            FeatureMode mode, int workers) {
  FeaturizedSet set;
  if (entries.empty()) throw std::domain_error("cannot featurize an empty dataset");
  set.degree = entries[0].degree;
  for (const DatasetEntry& e : entries)
    if (e.degree != set.degree)
      throw std::invalid_argument("mixed degrees in one feature set");
  set.mode = mode;
  set.dim = feature_dim(mode, set.degree);
  set.count = entries.size();
  set.x.resize(set.count * static_cast<std::size_t>(set.dim));
  set.label.resize(set.count);
  set.parity.resize(set.count);

  constexpr std::uint64_t kBlock = 2048;
  const std::uint64_t blocks =
      (entries.size() + kBlock - 1) / kBlock;
  run_blocks(
      blocks, workers, [&] { return PairLabeler(set.degree); },
      [&](PairLabeler& labeler, std::uint64_t b) {
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi =
            std::min<std::uint64_t>(entries.size(), lo + kBlock);
        for (std::uint64_t i = lo; i < hi; ++i) {
          encode(entries[i], mode, labeler,
                 set.x.data() + i * static_cast<std::uint64_t>(set.dim));
          set.label[i] = entries[i].simple ? 0 : 1;
          set.parity[i] = parity_predicts_simple(entries[i]) ? 0 : 1;
        }
      });
  return set;
}

bool parity_predicts_simple(const DatasetEntry& entry) {
  return sign(unrank(entry.r1, entry.degree)) == 1 &&
         sign(unrank(entry.r2, entry.degree)) == 1;
}

}  // namespace simplegrp
