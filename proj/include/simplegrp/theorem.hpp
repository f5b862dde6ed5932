#pragma once

// Computational checks of the structural claims about generators of simple
// groups.
//
// Core claim, checked over 2-generated subgroups of S_n: whenever the
// subgroup generated by two distinct non-identity permutations is simple,
// each generator has determinant +1 (is even), each generator's matrix
// trace (fixed point count) avoids {n-2, n-1, n}, and the two traces are
// not both n-4.  The fixed-point-ratio corollary restates the trace part
// in tr/n units against (n - 2^k)/n for k in {0, 1, 2}; both forms run as
// the same sweep with separate reports.
//
// The n-4 exclusion is joint, not per generator.  An even permutation with
// n-4 fixed points is a double transposition (the involution check below),
// so two such generators give a dihedral group, which is never simple; a
// single one is harmless and does occur: <(1,5)(3,4), (1,2,4,3,5)> is all
// of A_5, yet trace((1,5)(3,4)) = 1 = n-4.  At n = 5 exactly 360 of the
// 1,186 unordered simple pairs carry one double-transposition generator.
// A per-generator n-4 check would therefore flag real simple groups.
//
// Supporting checks:
//  * involution: every even permutation with exactly n-4 fixed points
//    squares to the identity (it is a double transposition);
//  * dihedral: two distinct double transpositions generate a dihedral group
//    of order 2*ord(s1*s2), never simple;
//  * fixtures: generators of the Mathieu groups are even with trace
//    outside {n-1, n-2, n-4} (per generator; these groups happen to
//    satisfy the stronger form);
//  * separation: among the simple subgroup types that occur, group order
//    plus the set of element orders already pins down the full fingerprint.
//
// Sweeps are exhaustive over the filtered pair space or uniformly sampled
// with a seed; either way the verdict and any counterexample list are
// deterministic and independent of worker count.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "simplegrp/perm.hpp"

namespace simplegrp {

enum class PropClause {
  determinant,  // a generator is odd
  trace,        // a generator's trace lies in the per-generator excluded set
  dihedral,     // both traces equal n-4
};

struct SweepCounterexample {
  int degree = 0;
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;
  PropClause clause = PropClause::determinant;
  int which_generator = 0;  // 1 or 2; 0 for the joint dihedral clause
  int sign1 = 0, sign2 = 0;
  int trace1 = 0, trace2 = 0;
  std::uint64_t group_order = 0;
};

struct SweepOptions {
  bool exhaustive = true;
  std::uint64_t sample_count = 0;  // used when !exhaustive
  std::uint64_t seed = 0;
  int workers = 0;
};

struct PropositionReport {
  int degree = 0;
  bool exhaustive = true;
  bool corollary_form = false;  // trace clauses only, no determinant clause
  std::uint64_t pairs_checked = 0;
  std::uint64_t simple_pairs = 0;
  std::vector<SweepCounterexample> counterexamples;  // sorted by (r1, r2)

  bool passed() const { return counterexamples.empty(); }
};

// Sweeps pairs of distinct non-identity permutations.  Exhaustive needs
// 4 <= n <= 7; sampled needs 4 <= n <= 8.
PropositionReport verify_proposition(int n, const SweepOptions& options);

// Same sweep without the determinant clause: per-generator traces must
// avoid {n-1, n-2} and the traces must not both be n-4 (in fpr units,
// tr/n avoids (n-2^k)/n per generator for k in {0, 1} and jointly for
// k = 2).
PropositionReport verify_corollary(int n, const SweepOptions& options);

// Re-derives a reported counterexample from scratch (fresh closure, no
// cache): true iff the recorded pair is simple and violates the recorded
// clause.
bool recheck(const SweepCounterexample& c);

struct InvolutionReport {
  int degree = 0;
  std::uint64_t candidates = 0;  // even with n-4 fixed points
  std::vector<std::uint64_t> violations;  // ranks whose square != identity

  bool passed() const { return violations.empty(); }
};

// Exhaustive over all n! permutations; 4 <= n <= 9.
InvolutionReport verify_involution(int n);

struct DihedralViolation {
  std::uint64_t r1 = 0, r2 = 0;
  std::uint64_t group_order = 0, product_order = 0;
  bool simple = false;
};

struct DihedralReport {
  int degree = 0;
  std::uint64_t double_transpositions = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<DihedralViolation> violations;

  bool passed() const { return violations.empty(); }
};

// All ordered pairs of distinct double transpositions; 4 <= n <= 7.
DihedralReport verify_dihedral(int n);

struct MathieuFixture {
  std::string group;
  int degree = 0;
  int stated_trace = 0;
  std::string cycles;
};

struct MathieuCheck {
  MathieuFixture fixture;
  int sign = 0;
  int trace = 0;          // computed from the cycles
  bool sign_ok = false;   // sign == +1
  bool trace_ok = false;  // trace outside {n-1, n-2, n-4}
  bool matches_stated = false;
};

struct MathieuReport {
  std::vector<MathieuCheck> checks;
  bool all_pass = false;        // every sign_ok && trace_ok
  int stated_mismatches = 0;    // informational
};

// The compiled-in fixture set; byte-identical to
// data/mathieu_generators.txt.
std::string_view builtin_mathieu_text();
std::vector<MathieuFixture> parse_mathieu_fixtures(std::string_view text);
std::vector<MathieuFixture> builtin_mathieu_fixtures();

MathieuReport verify_mathieu(const std::vector<MathieuFixture>& fixtures);
MathieuReport verify_mathieu();  // builtin fixtures

struct SeparationCollision {
  std::uint64_t order = 0;
  std::vector<std::uint32_t> element_orders;
};

struct SeparationReport {
  int degree = 0;
  std::uint64_t distinct_fingerprints = 0;
  std::uint64_t simple_types = 0;
  std::vector<SeparationCollision> collisions;

  bool passed() const { return collisions.empty(); }
};

// Exhaustive sweep collecting the simple subgroup types of S_n, then
// checking that (order, element-order set) determines the fingerprint.
// 4 <= n <= 7 (n = 7 is slow).
SeparationReport verify_separation(int n, int workers);

}  // namespace simplegrp
