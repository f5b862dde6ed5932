#include "simplegrp/report.hpp"

#include <cstdio>

#include "simplegrp/catalog.hpp"

namespace simplegrp {

namespace {

std::string fmt(const char* spec, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, value);
  return buf;
}

void line(std::string& out, const std::string& text) {
  out += text;
  out += '\n';
}

std::string arch_string(const MlpConfig& arch) {
  std::string s = std::to_string(arch.input_dim);
  for (int width : arch.hidden) s += " -> " + std::to_string(width);
  s += " -> 2 (";
  s += activation_name(arch.activation);
  s += ")";
  return s;
}

std::string train_string(const TrainConfig& train) {
  std::string s = optimizer_name(train.optimizer);
  s += " lr=" + format_fixed(train.learning_rate);
  if (train.optimizer == OptimizerKind::sgd)
    s += " momentum=" + format_fixed(train.momentum);
  s += " decay=" + format_fixed(train.lr_decay);
  s += " epochs=" + std::to_string(train.epochs);
  s += " batch=" + std::to_string(train.batch_size);
  return s;
}

void append_confusion(std::string& out, const Confusion& confusion) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "  %-16s %12s %12s", "", "pred simple",
                "pred other");
  line(out, buf);
  const char* row_names[2] = {"true simple", "true other"};
  for (int t = 0; t < 2; ++t) {
    std::snprintf(buf, sizeof buf, "  %-16s %12llu %12llu", row_names[t],
                  static_cast<unsigned long long>(confusion.counts[t][0]),
                  static_cast<unsigned long long>(confusion.counts[t][1]));
    line(out, buf);
  }
}

void append_eval(std::string& out, const EvalResult& eval) {
  line(out, "  accuracy          = " + format_fixed(eval.accuracy));
  line(out, "  simple accuracy   = " + format_fixed(eval.class_accuracy[0]));
  line(out, "  other accuracy    = " + format_fixed(eval.class_accuracy[1]));
  line(out, "  parity disagree % = " + format_fixed(eval.parity_disagree));
  append_confusion(out, eval.confusion);
}

void append_train_result(std::string& out, const TrainResult& result) {
  line(out, "== training ==");
  line(out, "architecture = " + arch_string(result.arch));
  line(out, "optimizer    = " + train_string(result.train));
  line(out, "folds        = " + std::to_string(result.folds.size()));
  for (const FoldResult& fold : result.folds) {
    line(out, "fold " + std::to_string(fold.fold) + ": train " +
                  std::to_string(fold.train_size) + ", val " +
                  std::to_string(fold.val_size));
    append_eval(out, fold.final_eval);
  }
  line(out, "mean val accuracy = " + format_fixed(result.mean_val_accuracy));
}

std::string verdict(bool passed) {
  return passed ? "RESULT: PASS" : "RESULT: FAIL";
}

const char* clause_name(PropClause clause) {
  switch (clause) {
    case PropClause::determinant: return "determinant";
    case PropClause::trace: return "trace";
    case PropClause::dihedral: return "dihedral (both traces n-4)";
  }
  return "?";
}

void append_counterexamples(
    std::string& out, std::span<const SweepCounterexample> counterexamples) {
  for (const SweepCounterexample& c : counterexamples) {
    const Perm a = unrank(c.r1, c.degree);
    const Perm b = unrank(c.r2, c.degree);
    std::string s = "  pair (" + std::to_string(c.r1) + ", " +
                    std::to_string(c.r2) + ")  " +
                    (c.clause == PropClause::dihedral
                         ? "pair"
                         : "gen" + std::to_string(c.which_generator)) +
                    " violates " + clause_name(c.clause);
    s += "  g1=" + cycle_string(a) + " sign=" + std::to_string(c.sign1) +
         " trace=" + std::to_string(c.trace1);
    s += "  g2=" + cycle_string(b) + " sign=" + std::to_string(c.sign2) +
         " trace=" + std::to_string(c.trace2);
    s += "  |G|=" + std::to_string(c.group_order);
    line(out, s);
  }
}

}  // namespace

std::string format_fixed(double value) { return fmt("%.6f", value); }

std::string echo_block(const EchoItems& items) {
  std::string out;
  line(out, "== invocation ==");
  for (const auto& [key, value] : items) line(out, key + " = " + value);
  out += '\n';
  return out;
}

std::string render_stats(const DatasetStats& stats, const EchoItems& echo) {
  std::string out = echo_block(echo);
  line(out, "== dataset stats ==");
  line(out, "rows        = " + std::to_string(stats.total));
  line(out, "simple      = " + std::to_string(stats.simple_count) + " (" +
                format_fixed(stats.simple_fraction) + ")");
  line(out, "non-simple  = " + std::to_string(stats.nonsimple_count));
  line(out, "groups:");
  for (const auto& [name, count] : stats.by_name) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "  %-12s %12llu", name.c_str(),
                  static_cast<unsigned long long>(count));
    line(out, buf);
  }
  return out;
}

std::string render_census(std::span<const CensusRow> rows, int n,
                          const EchoItems& echo) {
  std::string out = echo_block(echo);
  line(out, "== census of 2-generated subgroups of S_" + std::to_string(n) +
                " ==");
  char buf[160];
  std::snprintf(buf, sizeof buf, "  %-12s %-7s %14s %14s", "group", "simple",
                "pairs r1!=r2", "pairs all");
  line(out, buf);
  std::uint64_t filtered_total = 0, unfiltered_total = 0;
  for (const CensusRow& row : rows) {
    std::snprintf(buf, sizeof buf, "  %-12s %-7s %14llu %14llu",
                  row.name.c_str(), row.simple ? "yes" : "no",
                  static_cast<unsigned long long>(row.filtered),
                  static_cast<unsigned long long>(row.unfiltered));
    line(out, buf);
    filtered_total += row.filtered;
    unfiltered_total += row.unfiltered;
  }
  std::snprintf(buf, sizeof buf, "  %-12s %-7s %14llu %14llu", "total", "",
                static_cast<unsigned long long>(filtered_total),
                static_cast<unsigned long long>(unfiltered_total));
  line(out, buf);
  return out;
}

std::string render_train_result(const TrainResult& result,
                                const EchoItems& echo) {
  std::string out = echo_block(echo);
  append_train_result(out, result);
  return out;
}

std::string render_crossval(const CrossvalOutcome& outcome,
                            const EchoItems& echo) {
  std::string out = echo_block(echo);
  line(out, "== pool ==");
  line(out, "pool rows     = " + std::to_string(outcome.pool_stats.total));
  line(out, "pool simple   = " +
                std::to_string(outcome.pool_stats.simple_count) + " (" +
                format_fixed(outcome.pool_stats.simple_fraction) + ")");
  line(out, "balanced rows = " + std::to_string(outcome.balanced_size));
  line(out, "subset rows   = " + std::to_string(outcome.subset_size));
  out += '\n';
  append_train_result(out, outcome.result);
  return out;
}

std::string render_small_run(const SmallRunOutcome& outcome,
                             const EchoItems& echo) {
  std::string out = echo_block(echo);
  line(out, "== training ==");
  line(out, "architecture = " + arch_string(outcome.spec.arch));
  line(out, "optimizer    = " + train_string(outcome.spec.train));
  line(out, "corpus rows  = " + std::to_string(outcome.spec.corpus_size));
  line(out, "train rows   = " + std::to_string(outcome.spec.train_size));
  line(out, "eval rows    = " + std::to_string(outcome.eval_size));
  append_eval(out, outcome.result.final_eval);
  return out;
}

std::string curves_csv(std::span<const EpochRow> rows) {
  std::string out =
      "epoch,fold,train_loss,train_acc,val_acc,parity_err,simplicity_err\n";
  for (const EpochRow& row : rows) {
    out += std::to_string(row.epoch) + "," + std::to_string(row.fold) + "," +
           format_fixed(row.train_loss) + "," + format_fixed(row.train_acc) +
           "," + format_fixed(row.val_acc) + "," +
           format_fixed(row.parity_disagree) + "," +
           format_fixed(row.simplicity_disagree) + "\n";
  }
  return out;
}

std::string curves_csv(const TrainResult& result) {
  std::vector<EpochRow> rows;
  for (const FoldResult& fold : result.folds)
    rows.insert(rows.end(), fold.epochs.begin(), fold.epochs.end());
  return curves_csv(rows);
}

std::string render_proposition(const PropositionReport& report,
                               const EchoItems& echo) {
  std::string out = echo_block(echo);
  line(out, std::string("== generator sweep: ") +
                (report.corollary_form ? "fixed-point ratio corollary"
                                       : "simple-generator proposition") +
                " ==");
  line(out, "degree        = " + std::to_string(report.degree));
  line(out, std::string("mode          = ") +
                (report.exhaustive ? "exhaustive" : "sampled"));
  line(out, "pairs checked = " + std::to_string(report.pairs_checked));
  line(out, "simple pairs  = " + std::to_string(report.simple_pairs));
  const int n = report.degree;
  if (report.corollary_form) {
    line(out, "claim: fixed-point ratio never (n-1)/n or (n-2)/n, and "
              "(n-4)/n for at most one generator; excluded traces here {" +
                  std::to_string(n - 1) + ", " + std::to_string(n - 2) +
                  "}, jointly " + std::to_string(n - 4));
  } else {
    line(out, "claim: both generators even, traces outside {" +
                  std::to_string(n - 2) + ", " + std::to_string(n - 1) + ", " +
                  std::to_string(n) + "}, traces not both " +
                  std::to_string(n - 4));
  }
  line(out, "note: trace " + std::to_string(n - 4) +
                " is excluded jointly, not per generator: two double-"
                "transposition generators force a dihedral group, while a "
                "single one occurs in genuinely simple groups");
  line(out,
       "counterexamples = " + std::to_string(report.counterexamples.size()));
  append_counterexamples(out, report.counterexamples);
  line(out, verdict(report.passed()));
  return out;
}

std::string render_involution(const InvolutionReport& report,
                              const EchoItems& echo) {
  std::string out = echo_block(echo);
  line(out, "== even permutations with n-4 fixed points square to id ==");
  line(out, "degree     = " + std::to_string(report.degree));
  line(out, "candidates = " + std::to_string(report.candidates));
  line(out, "violations = " + std::to_string(report.violations.size()));
  for (std::uint64_t r : report.violations)
    line(out, "  rank " + std::to_string(r) + " = " +
                  cycle_string(unrank(r, report.degree)));
  line(out, verdict(report.passed()));
  return out;
}

std::string render_dihedral(const DihedralReport& report,
                            const EchoItems& echo) {
  std::string out = echo_block(echo);
  line(out, "== pairs of double transpositions generate dihedral groups ==");
  line(out, "degree                = " + std::to_string(report.degree));
  line(out,
       "double transpositions = " + std::to_string(report.double_transpositions));
  line(out, "pairs checked         = " + std::to_string(report.pairs_checked));
  line(out,
       "violations            = " + std::to_string(report.violations.size()));
  for (const DihedralViolation& v : report.violations) {
    line(out, "  pair (" + std::to_string(v.r1) + ", " + std::to_string(v.r2) +
                  "): |G|=" + std::to_string(v.group_order) + " ord(ab)=" +
                  std::to_string(v.product_order) +
                  (v.simple ? " simple" : ""));
  }
  line(out, verdict(report.passed()));
  return out;
}

std::string render_mathieu(const MathieuReport& report,
                           const EchoItems& echo) {
  std::string out = echo_block(echo);
  line(out, "== Mathieu group generators: sign and trace ==");
  char buf[200];
  std::snprintf(buf, sizeof buf, "  %-5s %6s %5s %6s %7s  %s", "group",
                "degree", "sign", "trace", "stated", "status");
  line(out, buf);
  for (const MathieuCheck& check : report.checks) {
    std::string status = check.sign_ok && check.trace_ok ? "ok" : "VIOLATION";
    if (!check.matches_stated) status += " (stated trace differs)";
    std::snprintf(buf, sizeof buf, "  %-5s %6d %+5d %6d %7d  %s",
                  check.fixture.group.c_str(), check.fixture.degree,
                  check.sign, check.trace, check.fixture.stated_trace,
                  status.c_str());
    line(out, buf);
  }
  line(out, "sign must be +1; trace must avoid {n-1, n-2, n-4}");
  if (report.stated_mismatches > 0)
    line(out, "stated-trace mismatches = " +
                  std::to_string(report.stated_mismatches) +
                  " (cycles are ground truth; recomputed traces used)");
  line(out, verdict(report.all_pass));
  return out;
}

std::string render_separation(const SeparationReport& report,
                              const EchoItems& echo) {
  std::string out = echo_block(echo);
  line(out, "== order + element orders determine the simple group type ==");
  line(out, "degree                = " + std::to_string(report.degree));
  line(out, "distinct fingerprints = " +
                std::to_string(report.distinct_fingerprints));
  line(out, "simple types          = " + std::to_string(report.simple_types));
  line(out,
       "collisions            = " + std::to_string(report.collisions.size()));
  for (const SeparationCollision& c : report.collisions) {
    std::string orders;
    for (std::uint32_t o : c.element_orders) {
      if (!orders.empty()) orders += ",";
      orders += std::to_string(o);
    }
    line(out, "  order " + std::to_string(c.order) + " element orders {" +
                  orders + "}");
  }
  line(out, verdict(report.passed()));
  return out;
}

}  // namespace simplegrp
