// rocscale: analytic and Monte-Carlo scaling curves for verifier-filtered
// sampling (rejection sampling and Best-of-N) over ROC-curve inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rocscale/bon.hpp"
#include "rocscale/io.hpp"
#include "rocscale/rejection.hpp"
#include "rocscale/simulate.hpp"
#include "rocscale/version.hpp"

namespace fs = std::filesystem;
using namespace rocscale;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string pool_path;
  std::string roc_path;
  double pi = -1.0;
  std::uint64_t seed = 42;
  std::uint64_t trials = 10000;
  std::uint32_t resamples = 1000;
  std::uint64_t max_draws = 1000000;
  unsigned threads = 0;
  std::string out;
};

void add_input_flags(CLI::App* cmd, CommonFlags& flags, bool pool_only = false) {
  auto* pool = cmd->add_option("--pool", flags.pool_path,
                               "labeled pool CSV (`score,label`)");
  if (pool_only) {
    pool->required();
    return;
  }
  auto* roc = cmd->add_option("--roc", flags.roc_path, "ROC spec JSON");
  cmd->add_option("--pi", flags.pi,
                  "base accuracy; required with --roc, forbidden with --pool");
  roc->excludes(pool);
  pool->excludes(roc);
}

void add_sim_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "random seed")
      ->envname("ROCSCALE_SEED");
  cmd->add_option("--trials", flags.trials, "Monte-Carlo trials");
  cmd->add_option("--resamples", flags.resamples, "bootstrap resamples");
  cmd->add_option("--max-draws", flags.max_draws,
                  "per-trial rejection draw cap");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = auto)");
}

struct ResolvedInput {
  RocCurve curve;
  double pi;
  std::optional<ScorePool> pool;
  std::vector<std::pair<std::string, std::string>> digests;
};

ResolvedInput resolve_input(const CommonFlags& flags) {
  if (!flags.pool_path.empty()) {
    if (flags.pi >= 0.0)
      throw UsageError("--pi is derived from the pool; do not pass it");
    auto pool = io::load_pool(flags.pool_path);
    auto curve = empirical_roc(pool);
    double pi = pool.pi();
    return ResolvedInput{std::move(curve), pi, std::move(pool),
                         {{flags.pool_path, io::file_digest(flags.pool_path)}}};
  }
  if (flags.roc_path.empty())
    throw UsageError("one of --pool or --roc is required");
  if (flags.pi < 0.0) throw UsageError("--roc requires --pi");
  if (flags.pi > 1.0) throw UsageError("--pi must lie in [0,1]");
  auto curve = io::load_roc_spec(flags.roc_path);
  return ResolvedInput{std::move(curve), flags.pi, std::nullopt,
                       {{flags.roc_path, io::file_digest(flags.roc_path)}}};
}

std::string header_line(const std::string& command, const CommonFlags& flags,
                        const ResolvedInput& input) {
  std::ostringstream out;
  out << "# rocscale " << kVersion << " cmd=" << command
      << " seed=" << flags.seed << " inputs=";
  for (std::size_t i = 0; i < input.digests.size(); ++i) {
    if (i) out << ',';
    out << fs::path(input.digests[i].first).filename().string() << ':'
        << input.digests[i].second;
  }
  return out.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

std::string cell(const std::optional<double>& v) {
  return v ? io::format_double(*v) : std::string{};
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> ns;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      ns.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--N expects a comma-separated list of integers >= 1");
    }
  }
  if (ns.empty()) throw UsageError("--N list is empty");
  return ns;
}

std::vector<double> geometric_fpr_grid(double fmin, int count) {
  if (!(fmin > 0.0 && fmin < 1.0)) throw UsageError("--fmin must be in (0,1)");
  if (count < 2) throw UsageError("--grid must be >= 2");
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double t = static_cast<double>(i) / (count - 1);
    grid[static_cast<std::size_t>(i)] = std::exp((1.0 - t) * std::log(fmin));
  }
  grid.back() = 1.0;
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

int run_roc(const CommonFlags& flags) {
  auto input = resolve_input(flags);
  const auto& curve = input.curve;
  std::cout << "points: " << curve.points().size() << '\n';
  if (input.pool) {
    std::cout << "samples: " << input.pool->size()
              << " (positives: " << input.pool->positives() << ")\n";
  }
  std::cout << "pi: " << io::format_double(input.pi) << '\n';
  std::cout << "auroc: " << io::format_double(curve.auroc()) << '\n';
  std::cout << "concave: " << (curve.is_concave() ? "yes" : "no") << '\n';
  std::cout << "tpr_at_zero: " << io::format_double(curve.tpr_at_zero())
            << '\n';
  auto o = curve.origin_slope();
  if (o.separating)
    std::cout << "origin_slope: separating\n";
  else
    std::cout << "origin_slope: " << io::format_double(o.slope) << '\n';
  if (!flags.out.empty()) {
    auto out = open_out(flags.out);
    out << header_line("roc", flags, input) << '\n' << "F,T\n";
    for (const auto& p : curve.points())
      out << io::format_double(p.fpr) << ',' << io::format_double(p.tpr)
          << '\n';
  }
  return 0;
}

int run_rs_curve(const CommonFlags& flags, double fmin, int grid_count) {
  auto input = resolve_input(flags);
  auto grid = geometric_fpr_grid(fmin, grid_count);
  auto prof = rejection::profile(input.curve, input.pi, grid);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!flags.out.empty()) {
    file = open_out(flags.out);
    os = &file;
  }
  *os << header_line("rs-curve", flags, input) << '\n';
  for (const auto& p : prof.points) {
    if (!p.cost.is_finite())
      *os << "# omitted: F=" << io::format_double(p.fpr)
          << " T=" << io::format_double(p.tpr) << " unbounded expected cost\n";
  }
  *os << "F,T,C,A,dA_dC_left,dA_dC_right\n";
  for (const auto& p : prof.points) {
    if (!p.cost.is_finite()) continue;
    *os << io::format_double(p.fpr) << ',' << io::format_double(p.tpr) << ','
        << io::format_double(p.cost.value()) << ',' << cell(p.accuracy) << ','
        << cell(p.dadc_low) << ',' << cell(p.dadc_high) << '\n';
  }
  return 0;
}

int run_rs_limits(const CommonFlags& flags) {
  auto input = resolve_input(flags);
  double early = rejection::early_slope(input.curve, input.pi);
  double limit = rejection::limit_accuracy(input.curve, input.pi);
  bool separating = input.curve.origin_slope().separating;
  std::cout << "early_slope: " << io::format_double(early) << '\n';
  std::cout << "limit_accuracy: " << io::format_double(limit) << '\n';
  std::cout << "separating: " << (separating ? "yes" : "no") << '\n';
  if (!flags.out.empty()) {
    auto out = open_out(flags.out);
    out << header_line("rs-limits", flags, input) << '\n'
        << "early_slope,limit_accuracy,separating\n"
        << io::format_double(early) << ',' << io::format_double(limit) << ','
        << (separating ? 1 : 0) << '\n';
  }
  return 0;
}

int run_bon_curve(const CommonFlags& flags, const std::string& n_list,
                  bool simulate) {
  auto input = resolve_input(flags);
  auto ns = parse_n_list(n_list);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  auto prof = bon::profile(input.curve, input.pi, ns);

  std::vector<sim::SimResult> sims;
  if (simulate) {
    if (!input.pool)
      throw UsageError("--simulate draws from samples; use --pool");
    sim::SimulationConfig cfg;
    cfg.trials = flags.trials;
    cfg.seed = flags.seed;
    cfg.bootstrap_resamples = flags.resamples;
    cfg.threads = flags.threads;
    for (int n : ns) sims.push_back(sim::simulate_bon(*input.pool, n, cfg));
  }

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!flags.out.empty()) {
    file = open_out(flags.out);
    os = &file;
  }
  *os << header_line("bon-curve", flags, input) << '\n';
  *os << "# limit=" << io::format_double(prof.limit) << '\n';
  *os << "N,acc_exact,acc_sim,ci_low,ci_high\n";
  for (std::size_t i = 0; i < prof.points.size(); ++i) {
    *os << prof.points[i].n << ','
        << io::format_double(prof.points[i].acc_exact) << ',';
    if (simulate) {
      const auto& acc = sims[i].accuracy;
      *os << io::format_double(acc.mean) << ','
          << io::format_double(acc.ci_low) << ','
          << io::format_double(acc.ci_high) << '\n';
    } else {
      *os << ",,\n";
    }
  }
  return 0;
}

int run_bo2(const CommonFlags& flags) {
  auto input = resolve_input(flags);
  double auroc = input.curve.auroc();
  double gain = bon::bo2_gain(input.curve, input.pi);
  std::cout << "auroc: " << io::format_double(auroc) << '\n';
  std::cout << "bo2_gain: " << io::format_double(gain) << '\n';
  if (!flags.out.empty()) {
    auto out = open_out(flags.out);
    out << header_line("bo2", flags, input) << '\n'
        << "auroc,bo2_gain\n"
        << io::format_double(auroc) << ',' << io::format_double(gain) << '\n';
  }
  return 0;
}

int run_de_emergence(const CommonFlags& flags, double budget) {
  auto input = resolve_input(flags);
  auto res = rejection::de_emergence(input.curve, input.pi, budget);
  std::cout << "f_at_budget: " << io::format_double(res.fpr_at_budget) << '\n';
  std::cout << "t_at_budget: " << io::format_double(res.tpr_at_budget) << '\n';
  std::cout << "sup_accuracy_stagnant: "
            << io::format_double(res.sup_accuracy_stagnant) << '\n';
  std::cout << "sup_accuracy_perfect: "
            << io::format_double(res.sup_accuracy_perfect) << '\n';
  if (!flags.out.empty()) {
    fs::path base(flags.out);
    io::write_roc_spec(res.extension_stagnant,
                       base.string() + ".stagnant.json");
    io::write_roc_spec(res.extension_perfect, base.string() + ".perfect.json");
    auto out = open_out(base.string() + ".summary.csv");
    out << header_line("de-emergence", flags, input) << '\n'
        << "extension,sup_accuracy,f_at_budget,t_at_budget,budget\n"
        << "stagnant," << io::format_double(res.sup_accuracy_stagnant) << ','
        << io::format_double(res.fpr_at_budget) << ','
        << io::format_double(res.tpr_at_budget) << ','
        << io::format_double(res.budget) << '\n'
        << "perfect," << io::format_double(res.sup_accuracy_perfect) << ','
        << io::format_double(res.fpr_at_budget) << ','
        << io::format_double(res.tpr_at_budget) << ','
        << io::format_double(res.budget) << '\n';
  }
  return 0;
}

int run_simulate(const CommonFlags& flags, const std::string& method,
                 double threshold, int n_best) {
  auto input = resolve_input(flags);
  if (!input.pool)
    throw UsageError("simulate draws from samples; use --pool");
  sim::SimulationConfig cfg;
  cfg.trials = flags.trials;
  cfg.seed = flags.seed;
  cfg.max_draws = flags.max_draws;
  cfg.bootstrap_resamples = flags.resamples;
  cfg.threads = flags.threads;

  sim::SimResult res;
  std::string param;
  if (method == "rejection") {
    res = sim::simulate_rejection(*input.pool, threshold, cfg);
    param = io::format_double(threshold);
  } else if (method == "bon") {
    res = sim::simulate_bon(*input.pool, n_best, cfg);
    param = std::to_string(n_best);
  } else {
    throw UsageError("--method must be `rejection` or `bon`");
  }

  std::cout << "accuracy: " << io::format_double(res.accuracy.mean) << " [ "
            << io::format_double(res.accuracy.ci_low) << ", "
            << io::format_double(res.accuracy.ci_high) << " ]\n";
  if (res.mean_draws) {
    std::cout << "mean_draws: " << io::format_double(res.mean_draws->mean)
              << " [ " << io::format_double(res.mean_draws->ci_low) << ", "
              << io::format_double(res.mean_draws->ci_high) << " ]\n";
  }
  if (res.truncated_trials > 0) {
    std::cerr << "warning: " << res.truncated_trials << " of "
              << res.trials_used << " trials hit the draw cap of "
              << cfg.max_draws << '\n';
  }
  if (!flags.out.empty()) {
    auto out = open_out(flags.out);
    out << header_line("simulate", flags, input) << '\n'
        << "method,param,acc_mean,acc_ci_low,acc_ci_high,draws_mean,"
           "draws_ci_low,draws_ci_high,trials,truncated\n";
    out << method << ',' << param << ','
        << io::format_double(res.accuracy.mean) << ','
        << io::format_double(res.accuracy.ci_low) << ','
        << io::format_double(res.accuracy.ci_high) << ',';
    if (res.mean_draws) {
      out << io::format_double(res.mean_draws->mean) << ','
          << io::format_double(res.mean_draws->ci_low) << ','
          << io::format_double(res.mean_draws->ci_high);
    } else {
      out << ",,";
    }
    out << ',' << res.trials_used << ',' << res.truncated_trials << '\n';
  }
  return 0;
}

int run_compare(const CommonFlags& flags, const std::string& n_list) {
  auto input = resolve_input(flags);
  auto ns = parse_n_list(n_list);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  // Rejection sampling cannot spend more than the cost of its strictest
  // threshold on separating curves; budgets beyond realize accuracy 1.
  auto max_cost = rejection::compute_cost(input.curve, input.pi, 0.0);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!flags.out.empty()) {
    file = open_out(flags.out);
    os = &file;
  }
  *os << header_line("compare", flags, input) << '\n';
  if (max_cost.is_finite())
    *os << "# rejection budgets above " << io::format_double(max_cost.value())
        << " are served at that cost\n";
  *os << "budget,acc_rejection,acc_bon\n";
  for (int n : ns) {
    double budget = static_cast<double>(n);
    if (max_cost.is_finite()) budget = std::min(budget, max_cost.value());
    double rs = rejection::accuracy_at_compute(input.curve, input.pi, budget);
    double bn = bon::accuracy(input.curve, input.pi, n).acc_exact;
    *os << n << ',' << io::format_double(rs) << ',' << io::format_double(bn)
        << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scaling analysis of verifier-filtered sampling"};
  app.set_version_flag("--version", std::string("rocscale ") + kVersion);
  app.require_subcommand(1);

  CommonFlags flags;

  auto* roc_cmd = app.add_subcommand("roc", "inspect a curve: area, "
                                            "concavity, origin slope");
  add_input_flags(roc_cmd, flags);
  roc_cmd->add_option("--out", flags.out, "write curve points CSV");

  double fmin = 1e-4;
  int grid_count = 128;
  auto* rs_curve = app.add_subcommand(
      "rs-curve", "rejection-sampling accuracy-compute table");
  add_input_flags(rs_curve, flags);
  rs_curve->add_option("--out", flags.out, "output CSV path");
  rs_curve->add_option("--fmin", fmin, "smallest grid FPR");
  rs_curve->add_option("--grid", grid_count, "geometric grid size");

  auto* rs_limits = app.add_subcommand(
      "rs-limits", "low-compute slope and infinite-compute accuracy");
  add_input_flags(rs_limits, flags);
  rs_limits->add_option("--out", flags.out, "output CSV path");

  std::string n_list = "1,2,4,8,16,32,64,128,256";
  bool simulate_bon_too = false;
  auto* bon_curve =
      app.add_subcommand("bon-curve", "exact Best-of-N accuracy profile");
  add_input_flags(bon_curve, flags);
  bon_curve->add_option("--N", n_list, "comma-separated N values");
  bon_curve->add_flag("--simulate", simulate_bon_too,
                      "add Monte-Carlo estimates (needs --pool)");
  bon_curve->add_option("--out", flags.out, "output CSV path");
  add_sim_flags(bon_curve, flags);

  auto* bo2 = app.add_subcommand("bo2", "closed-form Best-of-2 gain");
  add_input_flags(bo2, flags);
  bo2->add_option("--out", flags.out, "output CSV path");

  double budget = 0.0;
  auto* de = app.add_subcommand(
      "de-emergence",
      "stagnant and perfect completions of a budget-limited observation");
  add_input_flags(de, flags);
  de->add_option("--budget", budget, "observation compute budget")->required();
  de->add_option("--out", flags.out,
                 "output prefix for extension specs and summary");
  de->add_option("--seed", flags.seed, "recorded in output headers")
      ->envname("ROCSCALE_SEED");

  std::string method;
  double threshold = 0.0;
  int n_best = 1;
  auto* simulate =
      app.add_subcommand("simulate", "Monte-Carlo run with bootstrap CIs");
  add_input_flags(simulate, flags, /*pool_only=*/true);
  simulate->add_option("--method", method, "rejection | bon")->required();
  simulate->add_option("--threshold", threshold, "rejection threshold");
  simulate->add_option("--N", n_best, "Best-of-N draw count");
  simulate->add_option("--out", flags.out, "output CSV path");
  add_sim_flags(simulate, flags);

  std::string compare_ns = "1,2,4,8,16,32";
  auto* compare = app.add_subcommand(
      "compare", "rejection vs Best-of-N at matched expected budgets");
  add_input_flags(compare, flags);
  compare->add_option("--N", compare_ns, "budgets (generator samples)");
  compare->add_option("--out", flags.out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (roc_cmd->parsed()) return run_roc(flags);
    if (rs_curve->parsed()) return run_rs_curve(flags, fmin, grid_count);
    if (rs_limits->parsed()) return run_rs_limits(flags);
    if (bon_curve->parsed())
      return run_bon_curve(flags, n_list, simulate_bon_too);
    if (bo2->parsed()) return run_bo2(flags);
    if (de->parsed()) return run_de_emergence(flags, budget);
    if (simulate->parsed())
      return run_simulate(flags, method, threshold, n_best);
    if (compare->parsed()) return run_compare(flags, compare_ns);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
