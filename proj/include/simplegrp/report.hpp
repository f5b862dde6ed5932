#pragma once

// Plain-text and CSV rendering of results.
//
// Every text report opens with an echo of the resolved invocation (the
// parameter values actually in effect, after defaults and presets), so a
// saved report file is self-describing.  Fractions print with six decimal
// places throughout.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "simplegrp/dataset.hpp"
#include "simplegrp/experiments.hpp"
#include "simplegrp/nn.hpp"
#include "simplegrp/theorem.hpp"

namespace simplegrp {

// (key, value) lines for the invocation echo, in display order.
using EchoItems = std::vector<std::pair<std::string, std::string>>;

// Fixed six-decimal rendering ("0.202665").
std::string format_fixed(double value);

std::string echo_block(const EchoItems& items);

std::string render_stats(const DatasetStats& stats, const EchoItems& echo);
std::string render_census(std::span<const CensusRow> rows, int n,
                          const EchoItems& echo);

// Cross-validated or single-split training summary: architecture, per-fold
// confusion matrices and accuracies, and the fold mean.
std::string render_train_result(const TrainResult& result,
                                const EchoItems& echo);
std::string render_crossval(const CrossvalOutcome& outcome,
                            const EchoItems& echo);
std::string render_small_run(const SmallRunOutcome& outcome,
                             const EchoItems& echo);

// Per-epoch curves: "epoch,fold,train_loss,train_acc,val_acc,parity_err,
// simplicity_err", one row per (fold, epoch).
std::string curves_csv(std::span<const EpochRow> rows);
std::string curves_csv(const TrainResult& result);

// Verification reports.  Each ends in a single "RESULT: PASS" or
// "RESULT: FAIL" line; FAIL reports list every counterexample.
std::string render_proposition(const PropositionReport& report,
                               const EchoItems& echo);
std::string render_involution(const InvolutionReport& report,
                              const EchoItems& echo);
std::string render_dihedral(const DihedralReport& report,
                            const EchoItems& echo);
std::string render_mathieu(const MathieuReport& report, const EchoItems& echo);
std::string render_separation(const SeparationReport& report,
                              const EchoItems& echo);

}  // namespace simplegrp
