#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "simplegrp/group.hpp"
#include "simplegrp/io.hpp"
#include "simplegrp/labeler.hpp"
#include "simplegrp/perm.hpp"
#include "simplegrp/theorem.hpp"

using namespace simplegrp;

TEST_CASE("proposition sweep is clean and counts pairs exactly at n=4") {
  SweepOptions opt;
  opt.exhaustive = true;
  opt.workers = 1;
  const PropositionReport report = verify_proposition(4, opt);
  CHECK(report.passed());
  CHECK(report.degree == 4);
  CHECK(report.pairs_checked == 23 * 22);

  // Under distinct non-identity generators the only simple subgroups of
  // S_4 are the four C3s, each reachable as (c, c^2) and (c^2, c).
  CHECK(report.simple_pairs == 8);
}

TEST_CASE("proposition sweep is clean at n=5") {
  SweepOptions opt;
  opt.exhaustive = true;
  const PropositionReport report = verify_proposition(5, opt);
  CHECK(report.passed());
  CHECK(report.pairs_checked == 119 * 118);
  CHECK(report.simple_pairs == 2372);
}

TEST_CASE("corollary sweep is clean at n=5") {
  SweepOptions opt;
  opt.exhaustive = true;
  const PropositionReport report = verify_corollary(5, opt);
  CHECK(report.passed());
  CHECK(report.corollary_form);
  CHECK(report.pairs_checked == 119 * 118);
}

TEST_CASE("sampled sweeps are seed-deterministic and worker-invariant") {
  SweepOptions opt;
  opt.exhaustive = false;
  opt.sample_count = 3000;
  opt.seed = 9;
  opt.workers = 1;
  const PropositionReport a = verify_proposition(5, opt);
  opt.workers = 3;
  const PropositionReport b = verify_proposition(5, opt);
  CHECK(a.passed());
  CHECK(a.pairs_checked == 3000);
  CHECK(a.simple_pairs == b.simple_pairs);

  opt.seed = 10;
  const PropositionReport c = verify_proposition(5, opt);
  CHECK(c.passed());
  CHECK(c.simple_pairs != a.simple_pairs);  // different draw
}

TEST_CASE("a single trace n-4 generator occurs in genuinely simple pairs") {
  // <(1,5)(3,4), (1,2,4,3,5)> is all of A5 even though the first
  // generator, a double transposition, has trace 1 = n-4.  This is why
  // the n-4 exclusion must be joint: a per-generator check would flag
  // real simple groups.
  const Perm dt = parse_cycles("(1,5)(3,4)", 5);
  const Perm c5 = parse_cycles("(1,2,4,3,5)", 5);
  const GeneratedGroup g = generate({dt, c5});
  CHECK(g.order() == 60);
  CHECK(is_simple(g));
  CHECK(fixed_points(dt) == 1);
  CHECK(sign(dt) == 1);

  // Frozen census of the phenomenon at n = 5: of the 1,186 unordered
  // simple pairs of distinct non-identity generators, exactly 360 contain
  // a double-transposition generator (and none contain two).
  PairLabeler labeler(5);
  const std::uint64_t nf = factorial(5);
  std::uint64_t simple_pairs = 0, with_dt = 0, with_two_dt = 0;
  std::vector<int> trace_of(nf);
  std::vector<int> sign_of(nf);
  for (std::uint64_t r = 0; r < nf; ++r) {
    const Perm p = unrank(r, 5);
    trace_of[r] = fixed_points(p);
    sign_of[r] = sign(p);
  }
  for (std::uint64_t r1 = 1; r1 < nf; ++r1)
    for (std::uint64_t r2 = r1 + 1; r2 < nf; ++r2) {
      if (!labeler.label(r1, r2).simple) continue;
      ++simple_pairs;
      const bool dt1 = trace_of[r1] == 1 && sign_of[r1] == 1;
      const bool dt2 = trace_of[r2] == 1 && sign_of[r2] == 1;
      with_dt += dt1 || dt2;
      with_two_dt += dt1 && dt2;
    }
  CHECK(simple_pairs == 1186);
  CHECK(with_dt == 360);
  CHECK(with_two_dt == 0);
}

TEST_CASE("recheck rejects fabricated counterexamples") {
  const std::uint64_t dt = rank(parse_cycles("(1,5)(3,4)", 5));
  const std::uint64_t c5 = rank(parse_cycles("(1,2,4,3,5)", 5));
  const std::uint64_t dt2 = rank(parse_cycles("(2,5)(3,4)", 5));

  SweepCounterexample fake;
  fake.degree = 5;
  fake.r1 = dt;
  fake.r2 = c5;

  // The pair is simple, but no clause actually fires on it.
  fake.clause = PropClause::trace;
  fake.which_generator = 1;
  CHECK_FALSE(recheck(fake));  // trace 1 is not in {3, 4, 5}
  fake.clause = PropClause::determinant;
  CHECK_FALSE(recheck(fake));  // the double transposition is even
  fake.clause = PropClause::dihedral;
  CHECK_FALSE(recheck(fake));  // second trace is 0, not 1

  // Two double transpositions do have joint trace n-4, but the group
  // they generate is dihedral, hence not simple.
  fake.r2 = dt2;
  CHECK_FALSE(recheck(fake));

  // Degenerate records never pass.
  fake.r1 = 0;
  CHECK_FALSE(recheck(fake));
  fake.r1 = fake.r2 = dt;
  CHECK_FALSE(recheck(fake));
}

TEST_CASE("even permutations with n-4 fixed points are involutions") {
  const std::uint64_t expected_candidates[] = {3, 15, 45};  // n = 4, 5, 6
  for (int n = 4; n <= 6; ++n) {
    const InvolutionReport report = verify_involution(n);
    CHECK(report.passed());
    CHECK(report.degree == n);
    // n(n-1)(n-2)(n-3)/8 double transpositions.
    CHECK(report.candidates == expected_candidates[n - 4]);
  }
  CHECK_THROWS_AS(verify_involution(3), std::domain_error);
  CHECK_THROWS_AS(verify_involution(10), std::domain_error);
}

TEST_CASE("double transposition pairs generate non-simple dihedral groups") {
  const DihedralReport four = verify_dihedral(4);
  CHECK(four.passed());
  CHECK(four.double_transpositions == 3);
  CHECK(four.pairs_checked == 6);

  const DihedralReport five = verify_dihedral(5);
  CHECK(five.passed());
  CHECK(five.double_transpositions == 15);
  CHECK(five.pairs_checked == 15 * 14);

  const DihedralReport six = verify_dihedral(6);
  CHECK(six.passed());
  CHECK(six.double_transpositions == 45);
}

TEST_CASE("builtin fixtures match the data file byte for byte") {
  const std::string disk = read_file(SIMPLEGRP_DATA_DIR
                                     "/mathieu_generators.txt");
  CHECK(builtin_mathieu_text() == disk);
  CHECK(parse_mathieu_fixtures(disk).size() == 19);
}

TEST_CASE("fixture parsing validates cycles and reports line numbers") {
  CHECK_THROWS_WITH_AS(
      parse_mathieu_fixtures("M9\t9\t1\t(1,2)(2,3)\n"),
      doctest::Contains("line 1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_mathieu_fixtures("M9\t9\t1\t(1,10)\n"),
      doctest::Contains("line 1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_mathieu_fixtures("M9\t9\t1\n"),
      doctest::Contains("line 1"), std::invalid_argument);
  CHECK_NOTHROW(parse_mathieu_fixtures("# comment\nM9\t9\t1\t(1,2)(3,4)\n"));
}

TEST_CASE("Mathieu generators are even with admissible traces") {
  const MathieuReport report = verify_mathieu();
  REQUIRE(report.checks.size() == 19);
  CHECK(report.all_pass);

  // Traces recomputed from the cycle fixtures, keyed by group.
  const std::map<std::string, std::vector<int>> expected_traces = {
      {"M9", {1, 1}},   {"M10", {0, 2}},    {"M11", {0, 3}},
      {"M12", {1, 4, 0}}, {"M21", {1, 1}},  {"M22", {0, 2, 2}},
      {"M23", {0, 3}},  {"M24", {1, 4, 0}},
  };
  std::map<std::string, std::vector<int>> actual;
  for (const MathieuCheck& check : report.checks) {
    CHECK(check.sign == 1);
    CHECK(check.sign_ok);
    CHECK(check.trace_ok);
    const int n = check.fixture.degree;
    CHECK(check.trace != n - 1);
    CHECK(check.trace != n - 2);
    CHECK(check.trace != n - 4);
    actual[check.fixture.group].push_back(check.trace);
  }
  CHECK(actual == expected_traces);

  // Seven stated traces disagree with their own cycle data; the cycles
  // are authoritative, the mismatch is reported, not failed.
  CHECK(report.stated_mismatches == 7);
  int mismatches = 0;
  for (const MathieuCheck& check : report.checks)
    mismatches += !check.matches_stated;
  CHECK(mismatches == 7);
}

TEST_CASE("order and element orders separate the simple types") {
  const SeparationReport four = verify_separation(4, 1);
  CHECK(four.passed());
  CHECK(four.simple_types == 2);  // C2 and C3

  const SeparationReport five = verify_separation(5, 2);
  CHECK(five.passed());
  CHECK(five.degree == 5);
  CHECK(five.simple_types == 4);  // C2, C3, C5, A5
  CHECK(five.distinct_fingerprints == 15);
}
