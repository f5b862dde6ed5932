#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "simplegrp/dataset.hpp"
#include "simplegrp/io.hpp"
#include "simplegrp/perm.hpp"

using namespace simplegrp;

namespace {

struct CensusExpectation {
  const char* name;
  std::uint64_t filtered;
  std::uint64_t unfiltered;
};

void check_census(const std::vector<CensusRow>& rows,
                  std::span<const CensusExpectation> expected) {
  REQUIRE(rows.size() == expected.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(expected[i].name);
    CHECK(rows[i].name == expected[i].name);
    CHECK(rows[i].filtered == expected[i].filtered);
    CHECK(rows[i].unfiltered == expected[i].unfiltered);
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> pair_set(
    std::span<const DatasetEntry> entries) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.emplace_back(e.r1, e.r2);
  return out;
}

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("pair_count matches the filter definitions") {
  CHECK(pair_count(4, PairFilter::distinct) == 552);          // 24^2 - 24
  CHECK(pair_count(5, PairFilter::distinct) == 14280);        // 120^2 - 120
  CHECK(pair_count(6, PairFilter::distinct) == 517680);
  CHECK(pair_count(5, PairFilter::distinct_nonid) == 119 * 118);
}

TEST_CASE("filter names round-trip") {
  CHECK(pair_filter_from_name("distinct") == PairFilter::distinct);
  CHECK(pair_filter_from_name("distinct-nonid") == PairFilter::distinct_nonid);
  CHECK(pair_filter_name(PairFilter::distinct) == std::string("distinct"));
  CHECK_THROWS_AS(pair_filter_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("census of S4 pair subgroups") {
  const CensusExpectation expected[] = {
      {"C2", 18, 27},   {"C3", 24, 32},    {"C4", 30, 36},
      {"C2 x C2", 24, 24}, {"S3", 72, 72}, {"D8", 72, 72},
      {"A4", 96, 96},   {"S4", 216, 216},
  };
  const auto rows = census(4, 1);
  check_census(rows, expected);

  std::uint64_t filtered = 0, unfiltered = 0;
  for (const auto& row : rows) {
    filtered += row.filtered;
    unfiltered += row.unfiltered;
  }
  CHECK(filtered == 552);
  CHECK(unfiltered == 575);  // diagonal rows minus the (id, id) trivial pair
}

TEST_CASE("census of S5 pair subgroups") {
  const CensusExpectation expected[] = {
      {"C2", 50, 75},       {"C3", 60, 80},   {"C4", 150, 180},
      {"C2 x C2", 120, 120}, {"C5", 120, 144}, {"S3", 360, 360},
      {"C6", 220, 240},     {"D8", 360, 360}, {"D10", 360, 360},
      {"A4", 480, 480},     {"D12", 360, 360}, {"C5 : C4", 1440, 1440},
      {"S4", 1080, 1080},   {"A5", 2280, 2280}, {"S5", 6840, 6840},
  };
  const auto rows = census(5, 2);
  check_census(rows, expected);

  std::uint64_t filtered = 0;
  bool a5_simple = false;
  for (const auto& row : rows) {
    filtered += row.filtered;
    if (row.name == "A5") a5_simple = row.simple;
  }
  CHECK(filtered == 14280);
  CHECK(a5_simple);
}

TEST_CASE("census is worker-count invariant and rejects other degrees") {
  const auto one = census(4, 1);
  const auto many = census(4, 3);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].name == many[i].name);
    CHECK(one[i].filtered == many[i].filtered);
    CHECK(one[i].unfiltered == many[i].unfiltered);
  }
  CHECK_THROWS_AS(census(6, 1), std::domain_error);
}

TEST_CASE("enumeration labels the reference pair correctly") {
  const auto entries = enumerate_labeled(4, PairFilter::distinct, 2);
  REQUIRE(entries.size() == 552);

  const auto it = std::find_if(entries.begin(), entries.end(),
                               [](const DatasetEntry& e) {
                                 return e.r1 == 6 && e.r2 == 19;
                               });
  REQUIRE(it != entries.end());
  CHECK(it->degree == 4);
  CHECK_FALSE(it->simple);
  CHECK(it->group_order == 6);
  CHECK(it->group_name == "S3");

  // Canonical order: r1 ascending, then r2.
  CHECK(std::is_sorted(entries.begin(), entries.end(),
                       [](const DatasetEntry& a, const DatasetEntry& b) {
                         return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 < b.r2;
                       }));
  for (const auto& e : entries) CHECK(e.r1 != e.r2);
}

TEST_CASE("streaming enumeration delivers the materialized rows") {
  const auto whole = enumerate_labeled(4, PairFilter::distinct_nonid, 1);
  std::vector<DatasetEntry> streamed;
  enumerate_labeled_stream(4, PairFilter::distinct_nonid, 2,
                           [&](std::span<const DatasetEntry> slice) {
                             streamed.insert(streamed.end(), slice.begin(),
                                             slice.end());
                           });
  REQUIRE(streamed.size() == whole.size());
  for (std::size_t i = 0; i < whole.size(); ++i) {
    CHECK(streamed[i].r1 == whole[i].r1);
    CHECK(streamed[i].r2 == whole[i].r2);
    CHECK(streamed[i].simple == whole[i].simple);
    CHECK(streamed[i].group_order == whole[i].group_order);
  }
}

TEST_CASE("enumeration is worker-count invariant") {
  const auto one = enumerate_labeled(5, PairFilter::distinct, 1);
  const auto many = enumerate_labeled(5, PairFilter::distinct, 4);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    REQUIRE(one[i].r1 == many[i].r1);
    REQUIRE(one[i].r2 == many[i].r2);
    REQUIRE(one[i].simple == many[i].simple);
  }
}

TEST_CASE("sampling is deterministic in the seed and honors the filter") {
  const auto a = sample_labeled(5, 2000, 42, PairFilter::distinct, 1);
  const auto b = sample_labeled(5, 2000, 42, PairFilter::distinct, 3);
  REQUIRE(a.size() == 2000);
  CHECK(pair_set(a) == pair_set(b));

  const auto c = sample_labeled(5, 2000, 43, PairFilter::distinct, 1);
  CHECK(pair_set(a) != pair_set(c));

  const std::uint64_t nf = factorial(5);
  for (const auto& e : a) {
    CHECK(e.r1 != e.r2);
    CHECK(e.r1 < nf);
    CHECK(e.r2 < nf);
  }

  const auto nonid = sample_labeled(5, 500, 7, PairFilter::distinct_nonid, 1);
  for (const auto& e : nonid) {
    CHECK(e.r1 != 0);
    CHECK(e.r2 != 0);
    CHECK(e.r1 != e.r2);
  }
}

TEST_CASE("sampled labels agree with enumeration") {
  const auto full = enumerate_labeled(5, PairFilter::distinct, 2);
  std::vector<const DatasetEntry*> by_pair(14400, nullptr);
  for (const auto& e : full) by_pair[e.r1 * 120 + e.r2] = &e;

  const auto sampled = sample_labeled(5, 300, 11, PairFilter::distinct, 1);
  for (const auto& e : sampled) {
    const DatasetEntry* ref = by_pair[e.r1 * 120 + e.r2];
    REQUIRE(ref != nullptr);
    CHECK(e.simple == ref->simple);
    CHECK(e.group_order == ref->group_order);
    CHECK(e.group_name == ref->group_name);
  }
}

TEST_CASE("balance keeps every simple row and equalizes the classes") {
  const auto full = enumerate_labeled(5, PairFilter::distinct, 2);
  const auto balanced = balance(full, 99);

  std::uint64_t simple = 0;
  for (const auto& e : balanced) simple += e.simple;
  CHECK(simple * 2 == balanced.size());

  std::uint64_t simple_in_full = 0;
  for (const auto& e : full) simple_in_full += e.simple;
  CHECK(simple == simple_in_full);

  // Survivors keep their input order, and the non-simple half is a subset
  // of the input rows.
  const auto full_pairs = pair_set(full);
  std::size_t cursor = 0;
  for (const auto& e : balanced) {
    const auto key = std::make_pair(e.r1, e.r2);
    while (cursor < full_pairs.size() && full_pairs[cursor] != key) ++cursor;
    REQUIRE(cursor < full_pairs.size());
    ++cursor;
  }

  CHECK(pair_set(balance(full, 99)) == pair_set(balanced));
  CHECK(pair_set(balance(full, 100)) != pair_set(balanced));
}

TEST_CASE("balance rejects degenerate class distributions") {
  std::vector<DatasetEntry> no_simple(4);
  for (auto& e : no_simple) e.simple = false;
  CHECK_THROWS_AS(balance(no_simple, 1), std::domain_error);

  std::vector<DatasetEntry> mostly_simple(4);
  for (auto& e : mostly_simple) e.simple = true;
  mostly_simple[3].simple = false;
  CHECK_THROWS_AS(balance(mostly_simple, 1), std::domain_error);
}

TEST_CASE("subset_percent nests across the documented fraction ladder") {
  const auto full = enumerate_labeled(5, PairFilter::distinct, 2);
  const auto balanced = balance(full, 5);

  const double ladder[] = {2, 5, 10, 20, 35, 50, 80, 100};
  std::vector<std::set<std::pair<std::uint64_t, std::uint64_t>>> kept;
  for (double pct : ladder) {
    const auto rows = subset_percent(balanced, pct, 17);
    std::uint64_t simple = 0;
    for (const auto& e : rows) simple += e.simple;
    const std::uint64_t other = rows.size() - simple;
    CHECK(simple <= other + 1);
    CHECK(other <= simple + 1);

    const double target = static_cast<double>(balanced.size()) * pct / 100.0;
    CHECK(std::abs(static_cast<double>(rows.size()) - target) <= 2.0);

    const auto pairs = pair_set(rows);
    kept.emplace_back(pairs.begin(), pairs.end());
  }
  for (std::size_t i = 1; i < kept.size(); ++i)
    for (const auto& key : kept[i - 1]) REQUIRE(kept[i].count(key) == 1);

  CHECK(pair_set(subset_percent(balanced, 100, 17)) == pair_set(balanced));
  CHECK_THROWS_AS(subset_percent(balanced, 0, 17), std::domain_error);
  CHECK_THROWS_AS(subset_percent(balanced, 101, 17), std::domain_error);
}

TEST_CASE("kfold_split deals balanced, disjoint, seed-stable folds") {
  const SplitPlan plan = kfold_split(103, 5, 12);
  REQUIRE(plan.assignment.size() == 103);
  std::array<int, 5> sizes{};
  for (auto fold : plan.assignment) {
    REQUIRE(fold < 5);
    ++sizes[fold];
  }
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  CHECK(*hi - *lo <= 1);

  std::set<std::uint32_t> all;
  for (int f = 0; f < 5; ++f) {
    const auto val = plan.fold_indices(f);
    const auto train = plan.train_indices(f);
    CHECK(std::is_sorted(val.begin(), val.end()));
    CHECK(std::is_sorted(train.begin(), train.end()));
    CHECK(val.size() + train.size() == 103);
    for (auto i : val) {
      all.insert(i);
      CHECK(!std::binary_search(train.begin(), train.end(), i));
    }
  }
  CHECK(all.size() == 103);

  CHECK(kfold_split(103, 5, 12).assignment == plan.assignment);
  CHECK(kfold_split(103, 5, 13).assignment != plan.assignment);
  CHECK_THROWS_AS(kfold_split(10, 1, 0), std::domain_error);
  CHECK_THROWS_AS(kfold_split(4, 5, 0), std::domain_error);
}

TEST_CASE("dataset_stats aggregates by class and name") {
  const auto entries = enumerate_labeled(4, PairFilter::distinct, 1);
  const auto stats = dataset_stats(entries);
  CHECK(stats.total == 552);
  CHECK(stats.simple_count == 42);  // census: C2 18 + C3 24
  CHECK(stats.nonsimple_count == 510);
  CHECK(stats.simple_fraction == doctest::Approx(42.0 / 552.0));

  REQUIRE_FALSE(stats.by_name.empty());
  CHECK(stats.by_name.front().first == "S4");
  CHECK(stats.by_name.front().second == 216);
  for (std::size_t i = 1; i < stats.by_name.size(); ++i)
    CHECK(stats.by_name[i - 1].second >= stats.by_name[i].second);
}

TEST_CASE("save/load round-trips and writes stable bytes") {
  const auto entries = enumerate_labeled(4, PairFilter::distinct, 1);
  const auto path = temp_path("simplegrp_test_dataset.tsv");
  save_dataset(entries, path, 4, PairFilter::distinct);

  const LoadedDataset loaded = load_dataset(path);
  CHECK(loaded.n == 4);
  CHECK(loaded.filter == PairFilter::distinct);
  REQUIRE(loaded.entries.size() == entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(loaded.entries[i].r1 == entries[i].r1);
    CHECK(loaded.entries[i].r2 == entries[i].r2);
    CHECK(loaded.entries[i].simple == entries[i].simple);
    CHECK(loaded.entries[i].group_order == entries[i].group_order);
    CHECK(loaded.entries[i].group_name == entries[i].group_name);
  }

  const std::string first = read_file(path);
  save_dataset(entries, path, 4, PairFilter::distinct);
  CHECK(read_file(path) == first);

  CHECK(first.starts_with(dataset_header(4, PairFilter::distinct)));
  std::string rebuilt = dataset_header(4, PairFilter::distinct);
  append_dataset_rows(rebuilt, entries);
  CHECK(rebuilt == first);

  std::filesystem::remove(path);
}

TEST_CASE("load_dataset reports the first bad line by number") {
  const auto path = temp_path("simplegrp_test_corrupt.tsv");

  write_file_atomic(path, "not a header\n");
  CHECK_THROWS_WITH_AS(load_dataset(path), doctest::Contains("header"),
                       std::invalid_argument);

  std::string good = dataset_header(4, PairFilter::distinct);
  const auto entries = enumerate_labeled(4, PairFilter::distinct, 1);
  append_dataset_rows(good, std::span(entries).subspan(0, 3));
  write_file_atomic(path, good + "6\tnot_a_rank\t0\t6\tS3\n");
  CHECK_THROWS_WITH_AS(load_dataset(path), doctest::Contains("line 5"),
                       std::invalid_argument);

  std::filesystem::remove(path);
}
