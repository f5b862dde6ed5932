#pragma once

// Feature encodings of dataset rows for the classifiers.
//
//   matrices       2n^2 entries: the two generators' permutation matrices
//                  (M[i][p(i)] = 1), row-major, first generator then second.
//   invariants     5 entries: tr(m1)/n, tr(m2)/n, det(m1), det(m2),
//                  abelian flag of the generated group.
//   invariants_alt 5 entries: tr(m1)/n, tr(m2)/n, ord(s1)/n, ord(s2)/n,
//                  abelian flag (generator element orders instead of
//                  determinants).
//   order_profile  16 entries: counts of group elements of order 1..15,
//                  each normalized by |G|, then |G|/n!.  Element orders in
//                  S_n for n <= 8 never exceed 15, so the histogram is
//                  complete on the supported degrees.
//
// Class convention everywhere in the classifier stack: class 0 = simple,
// class 1 = not simple.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "simplegrp/dataset.hpp"

namespace simplegrp {

enum class FeatureMode { matrices, invariants, invariants_alt, order_profile };

const char* feature_mode_name(FeatureMode mode);
FeatureMode feature_mode_from_name(std::string_view name);

int feature_dim(FeatureMode mode, int degree);

struct FeatureVector {
  FeatureMode mode;
  std::vector<double> values;
};

// Single-row encoding.  Group-dependent modes rebuild the subgroup through
// the given labeler (or a private one when null); pass a labeler when
// featurizing more than a handful of rows.
FeatureVector featurize(const DatasetEntry& entry, FeatureMode mode,
                        PairLabeler* labeler = nullptr);

// Flat float matrix for training, plus per-row class labels and the parity
// baseline's predictions (class 0 iff both generators are even).
struct FeaturizedSet {
  int degree = 0;
  FeatureMode mode = FeatureMode::matrices;
  int dim = 0;
  std::size_t count = 0;
  std::vector<float> x;             // count * dim
  std::vector<std::uint8_t> label;  // 0 = simple, 1 = not simple
  std::vector<std::uint8_t> parity; // parity baseline's predicted class

  std::span<const float> row(std::size_t i) const {
    return {x.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
};

FeaturizedSet featurize_all(std::span<const DatasetEntry> entries,
                            FeatureMode mode, int workers);

// The hand-written baseline: predicts simple exactly when both generators
// are even permutations.
bool parity_predicts_simple(const DatasetEntry& entry);

}  // namespace simplegrp
