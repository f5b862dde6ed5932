#pragma once

// Labeled datasets of 2-generated subgroups of S_n.
//
// A dataset row is a generator pair (by lexicographic rank) together with
// the properties of the subgroup it generates: simplicity (the training
// label), group order and catalog name.  Pairs are ordered (r1, r2) and the
// canonical enumeration order is r1 ascending, then r2 ascending.
//
// Pair filters:
//   distinct        r1 != r2 (the default everywhere)
//   distinct_nonid  r1 != r2 and neither generator is the identity
//
// Scale: full enumeration is (n!)^2 - n! pairs.  n <= 6 fits in memory
// (517,680 rows); n = 7 enumerates through the streaming interface only;
// n = 8 must be sampled.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "simplegrp/labeler.hpp"
#include "simplegrp/perm.hpp"

namespace simplegrp {

enum class PairFilter { distinct, distinct_nonid };

const char* pair_filter_name(PairFilter f);
PairFilter pair_filter_from_name(std::string_view name);

struct DatasetEntry {
  int degree = 0;
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;
  bool simple = false;
  std::uint64_t group_order = 0;
  std::string group_name;  // catalog name or "unknown"
};

// Number of pairs the filter admits for degree n.
std::uint64_t pair_count(int n, PairFilter filter);

// Full enumeration in canonical order, materialized.  4 <= n <= 6.
std::vector<DatasetEntry> enumerate_labeled(int n, PairFilter filter,
                                            int workers);

// Full enumeration in canonical order, delivered in contiguous slices.
// 4 <= n <= 7.  The sink runs on the calling thread.
void enumerate_labeled_stream(
    int n, PairFilter filter, int workers,
    const std::function<void(std::span<const DatasetEntry>)>& sink);

// `count` pairs drawn uniformly (with replacement) from the filtered pair
// set, rejection-resampling draws the filter refuses.  4 <= n <= 8.
// Deterministic in (n, count, seed, filter); independent of workers.
std::vector<DatasetEntry> sample_labeled(int n, std::uint64_t count,
                                         std::uint64_t seed, PairFilter filter,
                                         int workers);

// Balanced corpus with size/2 rows of each class, in draw order, built by
// sampling distinct pairs until both class quotas fill.  size must be even.
std::vector<DatasetEntry> balanced_sample(int n, std::uint64_t size,
                                          std::uint64_t seed, int workers);

// All rows labeled simple plus an equally sized subset of the others,
// drawn without replacement; survivors keep their input order.  Throws
// std::domain_error when the simple class is empty or outnumbers the rest.
std::vector<DatasetEntry> balance(std::span<const DatasetEntry> entries,
                                  std::uint64_t seed);

// Per-class random subset of ~percent% of each label class (round to
// nearest, class balance preserved within 1); survivors keep their input
// order.  Subsets nest: the rows kept at p% are a superset of those kept at
// q% for q < p.  percent in (0, 100]; throws std::domain_error when the
// selection comes out empty.
std::vector<DatasetEntry> subset_percent(std::span<const DatasetEntry> entries,
                                         double percent, std::uint64_t seed);

// Fold assignment for k-fold cross-validation: a seeded shuffle dealt
// round-robin, so fold sizes differ by at most one.
struct SplitPlan {
  int fold_count = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint16_t> assignment;  // index -> fold

  std::vector<std::uint32_t> fold_indices(int fold) const;   // ascending
  std::vector<std::uint32_t> train_indices(int fold) const;  // ascending
};

SplitPlan kfold_split(std::size_t size, int folds, std::uint64_t seed);

// Census of catalog types over all generator pairs of S_n (n in {4, 5}):
// for each type, how many ordered pairs generate it, filtered (r1 != r2)
// and unfiltered (all ordered pairs, diagonal included).  Rows follow
// catalog display order; types with zero filtered count are dropped.
struct CensusRow {
  std::string name;
  bool simple = false;
  std::uint64_t filtered = 0;
  std::uint64_t unfiltered = 0;
};

std::vector<CensusRow> census(int n, int workers);

struct DatasetStats {
  std::uint64_t total = 0;
  std::uint64_t simple_count = 0;
  std::uint64_t nonsimple_count = 0;
  double simple_fraction = 0.0;
  std::vector<std::pair<std::string, std::uint64_t>> by_name;  // count desc
};

DatasetStats dataset_stats(std::span<const DatasetEntry> entries);

// Tab-separated persistence with a header line carrying degree and filter.
// Writing is atomic and timestamp-free: identical inputs give identical
// bytes.  load_dataset validates structure and reports the first bad line
// by number.
void save_dataset(std::span<const DatasetEntry> entries,
                  const std::filesystem::path& path, int n, PairFilter filter);

struct LoadedDataset {
  int n = 0;
  PairFilter filter = PairFilter::distinct;
  std::vector<DatasetEntry> entries;
};

LoadedDataset load_dataset(const std::filesystem::path& path);

// Serialization used by save_dataset (exposed for streaming writers).
std::string dataset_header(int n, PairFilter filter);
void append_dataset_rows(std::string& out, std::span<const DatasetEntry> rows);

}  // namespace simplegrp
