// simplegrp: labeled datasets of 2-generated subgroups of S_n, from-scratch
// MLP classifiers of group simplicity, and computational checks of the
// structural claims about simple-group generators.
//
// Exit codes: 0 success, 1 a verification found counterexamples, 2 usage or
// operational errors.  Reports and data files are written atomically and
// contain no timestamps, so identical invocations give identical bytes.
// Progress goes to standard error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simplegrp/dataset.hpp"
#include "simplegrp/experiments.hpp"
#include "simplegrp/io.hpp"
#include "simplegrp/report.hpp"
#include "simplegrp/theorem.hpp"
#include "simplegrp/version.hpp"

namespace {

using namespace simplegrp;

struct Flags {
  int n = 0;
  std::string out;
  std::string in;
  std::string report;
  std::string curves;
  std::string filter = "distinct";
  std::string features;
  std::string preset;
  std::string mode;
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;
  std::uint64_t train_size = 0;
  int folds = 0;
  int epochs = 0;
  int batch = 0;
  int workers = 0;
  double lr = 0.0;
  double momentum = 0.0;
  double gamma = 0.0;
  double percent = 100.0;
};

void emit_report(const std::string& text, const std::string& report_path) {
  if (report_path.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(report_path, text);
    std::cerr << "report written to " << report_path << "\n";
  }
}

void emit_curves(const std::string& csv, const std::string& path) {
  if (path.empty()) return;
  write_file_atomic(path, csv);
  std::cerr << "curves written to " << path << "\n";
}

EchoItems base_echo(const std::string& command) {
  return {{"version", std::string(kVersion)}, {"command", command}};
}

int cmd_generate(const Flags& f) {
  if (f.out.empty()) throw std::invalid_argument("generate needs --out");
  const PairFilter filter = pair_filter_from_name(f.filter);
  const std::uint64_t total = pair_count(f.n, filter);
  std::cerr << "enumerating " << total << " pairs of S_" << f.n << "\n";

  const std::filesystem::path out(f.out);
  const std::filesystem::path tmp = out.string() + ".tmp";
  std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write " + tmp.string());
  file << dataset_header(f.n, filter);
  std::uint64_t rows = 0, last_tick = 0;
  std::string buffer;
  enumerate_labeled_stream(
      f.n, filter, f.workers, [&](std::span<const DatasetEntry> slice) {
        buffer.clear();
        append_dataset_rows(buffer, slice);
        file.write(buffer.data(),
                   static_cast<std::streamsize>(buffer.size()));
        rows += slice.size();
        if (rows - last_tick >= 1'000'000) {
          last_tick = rows;
          std::cerr << "  " << rows << " / " << total << " rows\n";
        }
      });
  file.flush();
  if (!file) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("write failed for " + tmp.string());
  }
  file.close();
  std::filesystem::rename(tmp, out);
  std::cerr << rows << " rows written to " << f.out << "\n";
  return 0;
}

int cmd_sample(const Flags& f) {
  if (f.out.empty()) throw std::invalid_argument("sample needs --out");
  if (f.sample == 0) throw std::invalid_argument("sample needs --sample > 0");
  const PairFilter filter = pair_filter_from_name(f.filter);
  std::cerr << "sampling " << f.sample << " pairs of S_" << f.n << "\n";
  const std::vector<DatasetEntry> entries =
      sample_labeled(f.n, f.sample, f.seed, filter, f.workers);
  save_dataset(entries, f.out, f.n, filter);
  std::cerr << entries.size() << " rows written to " << f.out << "\n";
  return 0;
}

int cmd_balance(const Flags& f) {
  if (f.in.empty() || f.out.empty())
    throw std::invalid_argument("balance needs --in and --out");
  const LoadedDataset loaded = load_dataset(f.in);
  const std::vector<DatasetEntry> balanced = balance(loaded.entries, f.seed);
  save_dataset(balanced, f.out, loaded.n, loaded.filter);
  std::cerr << balanced.size() << " rows written to " << f.out << "\n";
  return 0;
}

int cmd_stats(const Flags& f) {
  if (f.in.empty()) throw std::invalid_argument("stats needs --in");
  const LoadedDataset loaded = load_dataset(f.in);
  EchoItems echo = base_echo("dataset stats");
  echo.emplace_back("in", f.in);
  echo.emplace_back("n", std::to_string(loaded.n));
  echo.emplace_back("filter", pair_filter_name(loaded.filter));
  emit_report(render_stats(dataset_stats(loaded.entries), echo), f.report);
  return 0;
}

int cmd_census(const Flags& f) {
  EchoItems echo = base_echo("dataset census");
  echo.emplace_back("n", std::to_string(f.n));
  echo.emplace_back("workers", std::to_string(f.workers));
  const std::vector<CensusRow> rows = census(f.n, f.workers);
  emit_report(render_census(rows, f.n, echo), f.report);
  return 0;
}

// train/crossval share one resolver: presets n5..n8 run the k-fold
// pipeline, exp2/exp3 the fixed-split small-corpus pipeline.
int cmd_train(const CLI::App* cmd, const Flags& f, bool folds_required) {
  const bool small = f.preset == "exp2" || f.preset == "exp3";
  if (small && folds_required)
    throw std::invalid_argument("preset " + f.preset +
                                " trains a single split; use `train`");

  if (small) {
    if (cmd->count("--folds"))
      throw std::invalid_argument("--folds does not apply to preset " +
                                  f.preset);
    if (cmd->count("--in"))
      throw std::invalid_argument("preset " + f.preset +
                                  " builds its own balanced corpus");
    SmallRunSpec spec = f.preset == "exp2" ? small_preset_invariants()
                                           : small_preset_order_profile();
    if (cmd->count("--n")) spec.n = f.n;
    if (cmd->count("--features"))
      spec.features = feature_mode_from_name(f.features);
    if (cmd->count("--epochs")) spec.train.epochs = f.epochs;
    if (cmd->count("--batch")) spec.train.batch_size = f.batch;
    if (cmd->count("--lr")) spec.train.learning_rate = f.lr;
    if (cmd->count("--gamma")) spec.train.lr_decay = f.gamma;
    if (cmd->count("--train-size")) spec.train_size = f.train_size;
    if (cmd->count("--sample")) spec.corpus_size = f.sample;
    spec.seed = f.seed;
    spec.workers = f.workers;

    std::cerr << "building balanced corpus of " << spec.corpus_size
              << " rows from S_" << spec.n << "\n";
    const SmallRunOutcome outcome = run_small_experiment(spec);

    EchoItems echo = base_echo("train");
    echo.emplace_back("preset", f.preset);
    echo.emplace_back("n", std::to_string(spec.n));
    echo.emplace_back("features", feature_mode_name(spec.features));
    echo.emplace_back("corpus", std::to_string(spec.corpus_size));
    echo.emplace_back("train-size", std::to_string(spec.train_size));
    echo.emplace_back("epochs", std::to_string(spec.train.epochs));
    echo.emplace_back("batch", std::to_string(spec.train.batch_size));
    echo.emplace_back("lr", format_fixed(spec.train.learning_rate));
    echo.emplace_back("gamma", format_fixed(spec.train.lr_decay));
    echo.emplace_back("seed", std::to_string(spec.seed));
    echo.emplace_back("workers", std::to_string(spec.workers));
    emit_report(render_small_run(outcome, echo), f.report);
    emit_curves(curves_csv(outcome.result.epochs), f.curves);
    return 0;
  }

  int degree = 0;
  if (!f.preset.empty()) {
    if (f.preset.size() == 2 && f.preset[0] == 'n' && f.preset[1] >= '5' &&
        f.preset[1] <= '8')
      degree = f.preset[1] - '0';
    else
      throw std::invalid_argument("unknown preset " + f.preset +
                                  " (n5..n8, exp2, exp3)");
  }
  if (cmd->count("--n")) {
    if (degree != 0 && degree != f.n)
      throw std::invalid_argument("preset " + f.preset +
                                  " conflicts with --n " + std::to_string(f.n));
    degree = f.n;
  }
  if (degree == 0)
    throw std::invalid_argument("need --preset or --n to pick a degree");

  CrossvalSpec spec = crossval_preset(degree);
  if (cmd->count("--features"))
    spec.features = feature_mode_from_name(f.features);
  if (cmd->count("--filter")) spec.filter = pair_filter_from_name(f.filter);
  if (cmd->count("--folds")) spec.folds = f.folds;
  if (cmd->count("--percent")) spec.percent = f.percent;
  if (cmd->count("--epochs")) spec.train.epochs = f.epochs;
  if (cmd->count("--batch")) spec.train.batch_size = f.batch;
  if (cmd->count("--lr")) spec.train.learning_rate = f.lr;
  if (cmd->count("--momentum")) spec.train.momentum = f.momentum;
  if (cmd->count("--gamma")) spec.train.lr_decay = f.gamma;
  if (cmd->count("--sample")) spec.sample_pool = f.sample;
  spec.seed = f.seed;
  spec.workers = f.workers;

  LoadedDataset loaded;
  const std::vector<DatasetEntry>* pool = nullptr;
  if (cmd->count("--in")) {
    loaded = load_dataset(f.in);
    if (loaded.n != degree)
      throw std::invalid_argument("dataset " + f.in + " has degree " +
                                  std::to_string(loaded.n) + ", expected " +
                                  std::to_string(degree));
    pool = &loaded.entries;
    std::cerr << "pool: " << loaded.entries.size() << " rows from " << f.in
              << "\n";
  } else if (spec.sample_pool == 0) {
    std::cerr << "pool: full enumeration of S_" << degree << " ("
              << pair_count(degree, spec.filter) << " pairs)\n";
  } else {
    std::cerr << "pool: " << spec.sample_pool << " sampled pairs of S_"
              << degree << "\n";
  }

  const CrossvalOutcome outcome = run_crossval_experiment(spec, pool);

  EchoItems echo = base_echo(folds_required ? "crossval" : "train");
  echo.emplace_back("preset", f.preset.empty() ? "none" : f.preset);
  echo.emplace_back("n", std::to_string(degree));
  echo.emplace_back("features", feature_mode_name(spec.features));
  echo.emplace_back("filter", pair_filter_name(spec.filter));
  echo.emplace_back("pool", cmd->count("--in")
                                ? f.in
                                : (spec.sample_pool == 0
                                       ? std::string("full")
                                       : std::to_string(spec.sample_pool)));
  echo.emplace_back("percent", format_fixed(spec.percent));
  echo.emplace_back("folds", std::to_string(spec.folds));
  echo.emplace_back("epochs", std::to_string(spec.train.epochs));
  echo.emplace_back("batch", std::to_string(spec.train.batch_size));
  echo.emplace_back("lr", format_fixed(spec.train.learning_rate));
  echo.emplace_back("momentum", format_fixed(spec.train.momentum));
  echo.emplace_back("gamma", format_fixed(spec.train.lr_decay));
  echo.emplace_back("seed", std::to_string(spec.seed));
  echo.emplace_back("workers", std::to_string(spec.workers));
  emit_report(render_crossval(outcome, echo), f.report);
  emit_curves(curves_csv(outcome.result), f.curves);
  return 0;
}

int cmd_verify_sweep(const CLI::App* cmd, const Flags& f, bool corollary) {
  SweepOptions options;
  std::string mode = f.mode;
  if (mode.empty()) mode = f.n <= 6 ? "exhaustive" : "sample";
  if (mode == "exhaustive")
    options.exhaustive = true;
  else if (mode == "sample")
    options.exhaustive = false;
  else
    throw std::invalid_argument("--mode must be exhaustive or sample");
  options.sample_count = cmd->count("--sample") ? f.sample : 1'000'000;
  options.seed = f.seed;
  options.workers = f.workers;

  std::cerr << (options.exhaustive ? "exhaustive" : "sampled")
            << " sweep of S_" << f.n << "\n";
  const PropositionReport report = corollary
                                       ? verify_corollary(f.n, options)
                                       : verify_proposition(f.n, options);

  EchoItems echo =
      base_echo(corollary ? "verify corollary" : "verify proposition");
  echo.emplace_back("n", std::to_string(f.n));
  echo.emplace_back("mode", mode);
  if (!options.exhaustive) {
    echo.emplace_back("sample", std::to_string(options.sample_count));
    echo.emplace_back("seed", std::to_string(options.seed));
  }
  echo.emplace_back("workers", std::to_string(options.workers));
  emit_report(render_proposition(report, echo), f.report);
  return report.passed() ? 0 : 1;
}

int cmd_verify_involution(const Flags& f) {
  const InvolutionReport report = verify_involution(f.n);
  EchoItems echo = base_echo("verify involution");
  echo.emplace_back("n", std::to_string(f.n));
  emit_report(render_involution(report, echo), f.report);
  return report.passed() ? 0 : 1;
}

int cmd_verify_dihedral(const Flags& f) {
  const DihedralReport report = verify_dihedral(f.n);
  EchoItems echo = base_echo("verify dihedral");
  echo.emplace_back("n", std::to_string(f.n));
  emit_report(render_dihedral(report, echo), f.report);
  return report.passed() ? 0 : 1;
}

int cmd_verify_mathieu(const Flags& f) {
  MathieuReport report;
  EchoItems echo = base_echo("verify mathieu");
  if (f.in.empty()) {
    echo.emplace_back("fixtures", "builtin");
    report = verify_mathieu();
  } else {
    echo.emplace_back("fixtures", f.in);
    report = verify_mathieu(parse_mathieu_fixtures(read_file(f.in)));
  }
  emit_report(render_mathieu(report, echo), f.report);
  return report.all_pass ? 0 : 1;
}

int cmd_verify_separation(const Flags& f) {
  std::cerr << "exhaustive pair sweep of S_" << f.n << "\n";
  const SeparationReport report = verify_separation(f.n, f.workers);
  EchoItems echo = base_echo("verify theorem1");
  echo.emplace_back("n", std::to_string(f.n));
  echo.emplace_back("workers", std::to_string(f.workers));
  emit_report(render_separation(report, echo), f.report);
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"datasets, classifiers and generator checks for 2-generated "
               "subgroups of symmetric groups"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Flags f;

  const auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", f.seed, "random seed")
        ->envname("SIMPLEGRP_SEED");
  };
  const auto add_workers = [&](CLI::App* cmd) {
    cmd->add_option("--workers", f.workers,
                    "worker threads (0 = hardware; results never depend on "
                    "this)");
  };
  const auto add_report = [&](CLI::App* cmd) {
    cmd->add_option("--report", f.report,
                    "write the report here instead of stdout");
  };

  CLI::App* dataset =
      app.add_subcommand("dataset", "build and inspect labeled pair datasets");
  dataset->require_subcommand(1);

  CLI::App* gen = dataset->add_subcommand(
      "generate", "enumerate and label every pair of S_n");
  gen->add_option("--n", f.n, "degree (4..7)")->required();
  gen->add_option("--out", f.out, "output dataset file")->required();
  gen->add_option("--filter", f.filter, "distinct | distinct-nonid");
  add_workers(gen);

  CLI::App* smp = dataset->add_subcommand(
      "sample", "label uniformly sampled pairs of S_n");
  smp->add_option("--n", f.n, "degree (4..8)")->required();
  smp->add_option("--sample", f.sample, "number of pairs")->required();
  smp->add_option("--out", f.out, "output dataset file")->required();
  smp->add_option("--filter", f.filter, "distinct | distinct-nonid");
  add_seed(smp);
  add_workers(smp);

  CLI::App* bal = dataset->add_subcommand(
      "balance", "keep all simple rows plus an equal random non-simple set");
  bal->add_option("--in", f.in, "input dataset file")->required();
  bal->add_option("--out", f.out, "output dataset file")->required();
  add_seed(bal);

  CLI::App* sts =
      dataset->add_subcommand("stats", "class and group-type counts");
  sts->add_option("--in", f.in, "input dataset file")->required();
  add_report(sts);

  CLI::App* cen = dataset->add_subcommand(
      "census", "pair counts per subgroup type (degree 4 or 5)");
  cen->add_option("--n", f.n, "degree (4 or 5)")->required();
  add_workers(cen);
  add_report(cen);

  const auto add_train_flags = [&](CLI::App* cmd) {
    cmd->add_option("--preset", f.preset, "n5..n8, exp2, exp3");
    cmd->add_option("--n", f.n, "degree (overrides the preset's)");
    cmd->add_option("--features", f.features,
                    "matrices | invariants | invariants-alt | order-profile");
    cmd->add_option("--filter", f.filter, "distinct | distinct-nonid");
    cmd->add_option("--in", f.in, "use this dataset file as the pool");
    cmd->add_option("--sample", f.sample,
                    "sampled pool size (crossval) or corpus size (exp2/exp3)");
    cmd->add_option("--folds", f.folds, "cross-validation folds");
    cmd->add_option("--percent", f.percent,
                    "per-class percentage of the balanced pool");
    cmd->add_option("--epochs", f.epochs, "training epochs");
    cmd->add_option("--batch", f.batch, "minibatch size");
    cmd->add_option("--lr", f.lr, "base learning rate");
    cmd->add_option("--momentum", f.momentum, "Nesterov momentum");
    cmd->add_option("--gamma", f.gamma, "per-epoch learning-rate decay");
    cmd->add_option("--train-size", f.train_size,
                    "training rows (exp2/exp3 presets)");
    cmd->add_option("--curves", f.curves, "write per-epoch CSV curves here");
    add_seed(cmd);
    add_workers(cmd);
    add_report(cmd);
  };

  CLI::App* trn = app.add_subcommand(
      "train", "train a simplicity classifier (single run or k-fold)");
  add_train_flags(trn);
  CLI::App* cvl = app.add_subcommand(
      "crossval", "k-fold cross-validated training (presets n5..n8)");
  add_train_flags(cvl);

  CLI::App* verify =
      app.add_subcommand("verify", "computational checks of the generator "
                                   "claims");
  verify->require_subcommand(1);

  const auto add_sweep_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", f.n, "degree (4..8)")->required();
    cmd->add_option("--mode", f.mode,
                    "exhaustive | sample (default: exhaustive up to degree "
                    "6)");
    cmd->add_option("--sample", f.sample, "sample size (default 1000000)");
    add_seed(cmd);
    add_workers(cmd);
    add_report(cmd);
  };

  CLI::App* vprop = verify->add_subcommand(
      "proposition",
      "simple pairs: generators even, traces outside {n-2, n-1, n}, traces "
      "not both n-4");
  add_sweep_flags(vprop);
  CLI::App* vcor = verify->add_subcommand(
      "corollary", "simple pairs: fixed-point ratio never (n - 2^k)/n");
  add_sweep_flags(vcor);

  CLI::App* vinv = verify->add_subcommand(
      "involution", "even permutations with n-4 fixed points are involutions");
  vinv->add_option("--n", f.n, "degree (4..9)")->required();
  add_report(vinv);

  CLI::App* vdih = verify->add_subcommand(
      "dihedral", "double-transposition pairs generate dihedral groups");
  vdih->add_option("--n", f.n, "degree (4..7)")->required();
  add_report(vdih);

  CLI::App* vmat = verify->add_subcommand(
      "mathieu", "Mathieu generator fixtures: sign +1, trace allowed");
  vmat->add_option("--in", f.in, "fixture file (default: builtin set)");
  add_report(vmat);

  CLI::App* vth1 = verify->add_subcommand(
      "theorem1", "order + element orders separate the simple types");
  vth1->add_option("--n", f.n, "degree (4..7)")->required();
  add_workers(vth1);
  add_report(vth1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(f);
    if (smp->parsed()) return cmd_sample(f);
    if (bal->parsed()) return cmd_balance(f);
    if (sts->parsed()) return cmd_stats(f);
    if (cen->parsed()) return cmd_census(f);
    if (trn->parsed()) return cmd_train(trn, f, false);
    if (cvl->parsed()) return cmd_train(cvl, f, true);
    if (vprop->parsed()) return cmd_verify_sweep(vprop, f, false);
    if (vcor->parsed()) return cmd_verify_sweep(vcor, f, true);
    if (vinv->parsed()) return cmd_verify_involution(f);
    if (vdih->parsed()) return cmd_verify_dihedral(f);
    if (vmat->parsed()) return cmd_verify_mathieu(f);
    if (vth1->parsed()) return cmd_verify_separation(f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable with require_subcommand(1)
}
