// Command-line frontend: every engine behind one binary, CSV/JSON output
// with a reproducible metadata header, optional SVG heatmaps.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "towbandit/analytic.hpp"
#include "towbandit/core.hpp"
#include "towbandit/exact.hpp"
#include "towbandit/montecarlo.hpp"
#include "towbandit/svg.hpp"
#include "towbandit/sweep.hpp"
#include "towbandit/text.hpp"
#include "towbandit/version.hpp"

namespace {

using nlohmann::json;
using towbandit::text::format_double;

constexpr int kExitOk = 0;
constexpr int kExitParameterError = 2;
constexpr int kExitNoConvergence = 3;

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

int default_jobs() {
  if (const char* env = std::getenv("TOW_BANDIT_JOBS")) {
    const int jobs = std::atoi(env);
    if (jobs >= 1) return jobs;
  }
  return 1;
}

// Wall-clock timing goes to stderr only: output files must be byte-identical
// across re-runs with the same flags.
void report(const std::string& command, const std::string& target,
            const Timer& timer) {
  std::cerr << command << ": wrote " << target << " in " << timer.ms()
            << " ms\n";
}

std::string metadata_block(const std::string& command, const json& params,
                           const std::vector<std::pair<std::string, std::string>>&
                               extra = {}) {
  std::ostringstream os;
  os << "# tool: tow_bandit " << towbandit::kVersion << "\n";
  os << "# command: " << command << "\n";
  os << "# params: " << params.dump() << "\n";
  for (const auto& [key, value] : extra) {
    os << "# " << key << ": " << value << "\n";
  }
  return os.str();
}

json metadata_json(const std::string& command, const json& params) {
  return json{{"tool", "tow_bandit"},
              {"version", std::string(towbandit::kVersion)},
              {"command", command},
              {"params", params}};
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw towbandit::InvalidParameter("cannot open output file " + path);
  }
  out << content;
}

json load_params_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw towbandit::InvalidParameter("cannot read params file " + path);
  }
  json parsed = json::parse(in, nullptr, true, true);
  if (parsed.contains("params")) return parsed.at("params");
  return parsed;
}

// Fill a value from the params JSON unless the flag was given explicitly.
template <typename T>
void overlay(const CLI::App& app, const json& params, const char* flag,
             const char* key, T& target) {
  if (params.contains(key) && app.get_option(flag)->count() == 0) {
    target = params.at(key).get<T>();
  }
}

void warn_if_not_canonical(const towbandit::Environment& env) {
  if (!env.arm_a_optimal()) {
    std::cerr << "note: p_a <= p_b; arm A is not the optimal arm but CDR "
                 "still counts arm A selections\n";
  }
}

struct ModelFlags {
  double p_a = 0.7;
  double p_b = 0.3;
  double lambda = 0.0;
  int bound = 4;
  double x = 3.5;
  std::string params_json;

  void add_env(CLI::App* cmd) {
    cmd->add_option("--p-a", p_a, "winning probability of arm A");
    cmd->add_option("--p-b", p_b, "winning probability of arm B");
  }
  void add_signal(CLI::App* cmd) {
    cmd->add_option("--lambda", lambda,
                    "signal autocorrelation coefficient in [-1, 1)");
  }
  void add_threshold(CLI::App* cmd) {
    cmd->add_option("--threshold-bound", bound, "threshold bound N");
    cmd->add_option("--x", x, "signal amplitude, non-integer in (0, N)");
  }
  void add_params_json(CLI::App* cmd) {
    cmd->add_option("--params-json", params_json,
                    "JSON file with a params object; explicit flags override");
  }

  void overlay_env(const CLI::App& cmd, const json& p) {
    overlay(cmd, p, "--p-a", "p_a", p_a);
    overlay(cmd, p, "--p-b", "p_b", p_b);
  }
  void overlay_signal(const CLI::App& cmd, const json& p) {
    overlay(cmd, p, "--lambda", "lambda", lambda);
  }
  void overlay_threshold(const CLI::App& cmd, const json& p) {
    overlay(cmd, p, "--threshold-bound", "threshold_bound", bound);
    overlay(cmd, p, "--x", "x", x);
  }

  towbandit::Environment env() const { return {p_a, p_b}; }
  towbandit::SignalModel model() const { return {x, lambda}; }
  towbandit::ThresholdConfig config() const { return {bound, x}; }
};

// ---------------------------------------------------------------- cdr-curve

struct CdrCurveCmd {
  ModelFlags flags;
  int steps = 1000;
  std::string out = "-";
  std::string format = "csv";
  CLI::App* cmd = nullptr;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("cdr-curve",
                             "CDR_n for n = 1..steps via exact propagation");
    flags.add_env(cmd);
    flags.add_signal(cmd);
    flags.add_threshold(cmd);
    cmd->add_option("--steps", steps, "number of decision steps");
    cmd->add_option("--out", out, "output path, - for stdout");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    flags.add_params_json(cmd);
  }

  int run() {
    Timer timer;
    if (!flags.params_json.empty()) {
      const json p = load_params_json(flags.params_json);
      flags.overlay_env(*cmd, p);
      flags.overlay_signal(*cmd, p);
      flags.overlay_threshold(*cmd, p);
      overlay(*cmd, p, "--steps", "steps", steps);
      overlay(*cmd, p, "--format", "format", format);
    }
    const auto env = flags.env();
    warn_if_not_canonical(env);
    const auto curve =
        towbandit::exact::cdr_curve(env, flags.model(), flags.config(), steps);

    const json params{{"p_a", flags.p_a},       {"p_b", flags.p_b},
                      {"lambda", flags.lambda}, {"threshold_bound", flags.bound},
                      {"x", flags.x},           {"steps", steps},
                      {"format", format}};
    std::string content;
    if (format == "json") {
      json rows = json::array();
      for (const auto& point : curve) {
        rows.push_back({{"n", point.n}, {"cdr", point.cdr}});
      }
      content =
          json{{"metadata", metadata_json("cdr-curve", params)}, {"rows", rows}}
              .dump(2) +
          "\n";
    } else {
      std::ostringstream os;
      os << metadata_block("cdr-curve", params) << "n,cdr\n";
      for (const auto& point : curve) {
        os << point.n << ',' << format_double(point.cdr) << '\n';
      }
      content = os.str();
    }
    write_output(out, content);
    report("cdr-curve", out, timer);
    return kExitOk;
  }
};

// ------------------------------------------------------------- lambda-sweep

struct LambdaSweepCmd {
  ModelFlags flags;
  double lambda_min = -1.0;
  double lambda_max = 0.99;
  double lambda_step = 0.01;
  int at_step = 1000;
  std::string out = "-";
  CLI::App* cmd = nullptr;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("lambda-sweep",
                             "CDR at a fixed step over a lambda grid");
    flags.add_env(cmd);
    flags.add_threshold(cmd);
    cmd->add_option("--lambda-min", lambda_min, "grid start");
    cmd->add_option("--lambda-max", lambda_max, "grid end (inclusive)");
    cmd->add_option("--lambda-step", lambda_step, "grid step");
    cmd->add_option("--at-step", at_step, "decision step to evaluate");
    cmd->add_option("--out", out, "output path, - for stdout");
    flags.add_params_json(cmd);
  }

  int run() {
    Timer timer;
    if (!flags.params_json.empty()) {
      const json p = load_params_json(flags.params_json);
      flags.overlay_env(*cmd, p);
      flags.overlay_threshold(*cmd, p);
      overlay(*cmd, p, "--lambda-min", "lambda_min", lambda_min);
      overlay(*cmd, p, "--lambda-max", "lambda_max", lambda_max);
      overlay(*cmd, p, "--lambda-step", "lambda_step", lambda_step);
      overlay(*cmd, p, "--at-step", "at_step", at_step);
    }
    const auto env = flags.env();
    warn_if_not_canonical(env);
    const towbandit::sweep::LambdaGrid grid(lambda_min, lambda_max, lambda_step);
    const auto points =
        towbandit::sweep::lambda_sweep(env, flags.config(), grid, at_step);

    const json params{{"p_a", flags.p_a},
                      {"p_b", flags.p_b},
                      {"threshold_bound", flags.bound},
                      {"x", flags.x},
                      {"lambda_min", lambda_min},
                      {"lambda_max", lambda_max},
                      {"lambda_step", lambda_step},
                      {"at_step", at_step}};
    std::ostringstream os;
    os << metadata_block("lambda-sweep", params) << "lambda,cdr\n";
    for (const auto& point : points) {
      os << format_double(point.lambda) << ',' << format_double(point.cdr)
         << '\n';
    }
    write_output(out, os.str());
    report("lambda-sweep", out, timer);
    return kExitOk;
  }
};

// ------------------------------------------------------------------ heatmap

struct HeatmapCmd {
  ModelFlags flags;
  double grid_step = 0.01;
  int at_step = 1000;
  double tie_tol = 1e-12;
  std::string out_prefix = "heatmap";
  bool svg = false;
  int jobs = default_jobs();
  CLI::App* cmd = nullptr;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand(
        "heatmap", "max-CDR and optimal-lambda maps over the (p_a, p_b) grid");
    flags.add_threshold(cmd);
    cmd->add_option("--grid-step", grid_step, "environment grid step");
    cmd->add_option("--at-step", at_step, "decision step to evaluate");
    cmd->add_option("--tie-tol", tie_tol, "argmax tie tolerance");
    cmd->add_option("--out-prefix", out_prefix, "output path prefix");
    cmd->add_flag("--svg", svg, "also render SVG heatmaps");
    cmd->add_option("--jobs", jobs, "worker threads (default TOW_BANDIT_JOBS)");
    flags.add_params_json(cmd);
  }

  int run() {
    Timer timer;
    if (!flags.params_json.empty()) {
      const json p = load_params_json(flags.params_json);
      flags.overlay_threshold(*cmd, p);
      overlay(*cmd, p, "--grid-step", "grid_step", grid_step);
      overlay(*cmd, p, "--at-step", "at_step", at_step);
      overlay(*cmd, p, "--tie-tol", "tie_tol", tie_tol);
    }
    const towbandit::sweep::EnvGrid env_grid(grid_step);
    const auto lambda_grid = towbandit::sweep::LambdaGrid::standard();
    const auto records = towbandit::sweep::heatmap(
        env_grid, flags.config(), lambda_grid, at_step, tie_tol, jobs);

    const json params{{"threshold_bound", flags.bound}, {"x", flags.x},
                      {"grid_step", grid_step},         {"at_step", at_step},
                      {"tie_tol", tie_tol},             {"svg", svg}};
    std::ostringstream os;
    os << metadata_block("heatmap", params)
       << "p_a,p_b,max_cdr,lambda_m,argmax_count\n";
    for (const auto& rec : records) {
      os << format_double(rec.p_a) << ',' << format_double(rec.p_b) << ','
         << format_double(rec.max_cdr) << ',' << format_double(rec.lambda_m)
         << ',' << rec.argmax_count << '\n';
    }
    const std::string csv_path = out_prefix + ".csv";
    write_output(csv_path, os.str());
    std::string target = csv_path;
    if (svg) {
      write_output(out_prefix + "_max_cdr.svg",
                   towbandit::svg::max_cdr_heatmap(records, grid_step));
      write_output(out_prefix + "_lambda_m.svg",
                   towbandit::svg::lambda_m_heatmap(records, grid_step));
      target += " +svg";
    }
    report("heatmap", target, timer);
    return kExitOk;
  }
};

// -------------------------------------------------------------- closed-form

struct ClosedFormCmd {
  double p = 0.7;
  int bound = 4;
  double x = 3.5;
  bool with_f_approx = false;
  int m = 1;
  std::string out = "-";
  std::string params_json;
  CLI::App* cmd = nullptr;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("closed-form",
                             "boundary-limit CDR and its large-N approximation");
    cmd->add_option("--p", p, "boundary parameter p = p_a = 1 - p_b");
    cmd->add_option("--threshold-bound", bound, "threshold bound N");
    cmd->add_option("--x", x, "signal amplitude, non-integer in (0, N)");
    cmd->add_flag("--f-approx", with_f_approx, "also print f(p)");
    cmd->add_option("--m", m, "exponent for f(p), normally N - floor(x)");
    cmd->add_option("--out", out, "output path, - for stdout");
    cmd->add_option("--params-json", params_json,
                    "JSON file with a params object; explicit flags override");
  }

  int run() {
    Timer timer;
    if (!params_json.empty()) {
      const json j = load_params_json(params_json);
      overlay(*cmd, j, "--p", "p", p);
      overlay(*cmd, j, "--threshold-bound", "threshold_bound", bound);
      overlay(*cmd, j, "--x", "x", x);
      overlay(*cmd, j, "--m", "m", m);
    }
    const towbandit::ThresholdConfig config(bound, x);
    const double cdr_inf =
        towbandit::analytic::cdr_infinity_closed_form(p, config);

    const json params{{"p", p},
                      {"threshold_bound", bound},
                      {"x", x},
                      {"f_approx", with_f_approx},
                      {"m", m}};
    std::ostringstream os;
    os << metadata_block("closed-form", params) << "quantity,value\n";
    os << "cdr_infinity," << format_double(cdr_inf) << '\n';
    if (with_f_approx) {
      const double f = towbandit::analytic::f_approx(p, m);
      os << "f_approx," << format_double(f) << '\n';
      os << "difference," << format_double(f - cdr_inf) << '\n';
    }
    write_output(out, os.str());
    report("closed-form", out, timer);
    return kExitOk;
  }
};

// ----------------------------------------------------------------- simulate

struct SimulateCmd {
  ModelFlags flags;
  int steps = 1000;
  int replications = 100000;
  std::uint64_t seed = 1;
  std::string mode = "integer_threshold";
  towbandit::mc::TaParams ta;
  std::vector<int> sample_steps;
  std::string out = "-";
  int jobs = default_jobs();
  CLI::App* cmd = nullptr;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("simulate",
                             "Monte Carlo trajectories, cross-checked against "
                             "the exact engine in integer mode");
    flags.add_env(cmd);
    flags.add_signal(cmd);
    flags.add_threshold(cmd);
    cmd->add_option("--steps", steps, "decision steps per trajectory");
    cmd->add_option("--replications", replications, "independent trajectories");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--mode", mode, "integer_threshold or generalized_ta")
        ->check(CLI::IsMember({"integer_threshold", "generalized_ta"}));
    cmd->add_option("--k", ta.k, "threshold scale (generalized mode)");
    cmd->add_option("--alpha", ta.alpha, "memory parameter in [0, 1]");
    cmd->add_option("--delta", ta.delta, "adjuster step on a win");
    cmd->add_option("--omega", ta.omega, "adjuster step on a loss");
    cmd->add_option("--sample-steps", sample_steps,
                    "comma list of steps to report (default: final step)")
        ->delimiter(',');
    cmd->add_option("--out", out, "output path, - for stdout");
    cmd->add_option("--jobs", jobs, "worker threads (default TOW_BANDIT_JOBS)");
    flags.add_params_json(cmd);
  }

  int run() {
    Timer timer;
    if (!flags.params_json.empty()) {
      const json p = load_params_json(flags.params_json);
      flags.overlay_env(*cmd, p);
      flags.overlay_signal(*cmd, p);
      flags.overlay_threshold(*cmd, p);
      overlay(*cmd, p, "--steps", "steps", steps);
      overlay(*cmd, p, "--replications", "replications", replications);
      overlay(*cmd, p, "--seed", "seed", seed);
      overlay(*cmd, p, "--mode", "mode", mode);
      overlay(*cmd, p, "--k", "k", ta.k);
      overlay(*cmd, p, "--alpha", "alpha", ta.alpha);
      overlay(*cmd, p, "--delta", "delta", ta.delta);
      overlay(*cmd, p, "--omega", "omega", ta.omega);
      overlay(*cmd, p, "--sample-steps", "sample_steps", sample_steps);
    }
    const bool integer_mode = mode == "integer_threshold";
    towbandit::mc::SimulationConfig cfg{
        flags.env(),
        flags.model(),
        flags.config(),
        steps,
        replications,
        seed,
        integer_mode ? towbandit::mc::Mode::integer_threshold
                     : towbandit::mc::Mode::generalized_ta,
        ta};
    warn_if_not_canonical(cfg.env);
    if (sample_steps.empty()) sample_steps = {steps};

    const json params{{"p_a", flags.p_a},
                      {"p_b", flags.p_b},
                      {"lambda", flags.lambda},
                      {"threshold_bound", flags.bound},
                      {"x", flags.x},
                      {"steps", steps},
                      {"replications", replications},
                      {"seed", seed},
                      {"mode", mode},
                      {"k", ta.k},
                      {"alpha", ta.alpha},
                      {"delta", ta.delta},
                      {"omega", ta.omega},
                      {"sample_steps", sample_steps}};
    const std::vector<std::pair<std::string, std::string>> extra{
        {"generator", std::string(towbandit::mc::kGeneratorId)},
        {"seed", std::to_string(seed)}};

    std::ostringstream os;
    os << metadata_block("simulate", params, extra);
    if (integer_mode) {
      const auto rows =
          towbandit::mc::empirical_cdr_vs_exact(cfg, sample_steps, jobs);
      os << "n,empirical_cdr,exact_cdr,z\n";
      for (const auto& row : rows) {
        os << row.n << ',' << format_double(row.empirical) << ','
           << format_double(row.exact) << ',' << format_double(row.z) << '\n';
      }
    } else {
      const auto stats = towbandit::mc::simulate(cfg, jobs);
      os << "n,empirical_cdr\n";
      for (int n : sample_steps) {
        os << n << ',' << format_double(stats.cdr_at(n)) << '\n';
      }
    }
    write_output(out, os.str());
    report("simulate", out, timer);
    return kExitOk;
  }
};

// --------------------------------------------------------------- stationary

struct StationaryCmd {
  ModelFlags flags;
  double tol = 1e-12;
  long max_iter = 1000000;
  std::string out = "-";
  CLI::App* cmd = nullptr;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("stationary",
                             "fixed point of the joint transition operator");
    flags.add_env(cmd);
    flags.add_signal(cmd);
    flags.add_threshold(cmd);
    cmd->add_option("--tol", tol, "residual tolerance in L1");
    cmd->add_option("--max-iter", max_iter, "iteration cap");
    cmd->add_option("--out", out, "output path, - for stdout");
    flags.add_params_json(cmd);
  }

  int run() {
    Timer timer;
    if (!flags.params_json.empty()) {
      const json p = load_params_json(flags.params_json);
      flags.overlay_env(*cmd, p);
      flags.overlay_signal(*cmd, p);
      flags.overlay_threshold(*cmd, p);
      overlay(*cmd, p, "--tol", "tol", tol);
      overlay(*cmd, p, "--max-iter", "max_iter", max_iter);
    }
    const auto env = flags.env();
    warn_if_not_canonical(env);
    const towbandit::exact::TransitionMatrix m(env, flags.model(),
                                               flags.config());
    const auto pi = towbandit::exact::stationary_distribution(m, tol, max_iter);

    // Recomputed residual for the metadata header; deterministic.
    std::vector<double> image(pi.size());
    m.apply(pi.entries(), image);
    double residual = 0.0;
    for (std::size_t k = 0; k < image.size(); ++k) {
      residual += std::abs(image[k] - pi.entries()[k]);
    }

    const json params{{"p_a", flags.p_a},       {"p_b", flags.p_b},
                      {"lambda", flags.lambda}, {"threshold_bound", flags.bound},
                      {"x", flags.x},           {"tol", tol},
                      {"max_iter", max_iter}};
    std::ostringstream os;
    os << metadata_block("stationary", params,
                         {{"residual_l1", format_double(residual)}})
       << "signal,threshold,prob\n";
    for (int i = -flags.bound; i <= flags.bound; ++i) {
      for (int sign : {+1, -1}) {
        os << sign << ',' << i << ',' << format_double(pi.at(sign, i)) << '\n';
      }
    }
    write_output(out, os.str());
    report("stationary", out, timer);
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tug-of-war two-armed bandit engine driven by a two-valued "
               "Markov signal"};
  app.set_version_flag("--version",
                       "tow_bandit " + std::string(towbandit::kVersion));
  app.require_subcommand(1);

  CdrCurveCmd cdr_curve;
  LambdaSweepCmd lambda_sweep;
  HeatmapCmd heatmap;
  ClosedFormCmd closed_form;
  SimulateCmd simulate;
  StationaryCmd stationary;

  cdr_curve.attach(app);
  lambda_sweep.attach(app);
  heatmap.attach(app);
  closed_form.attach(app);
  simulate.attach(app);
  stationary.attach(app);

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(cdr_curve.cmd)) return cdr_curve.run();
    if (app.got_subcommand(lambda_sweep.cmd)) return lambda_sweep.run();
    if (app.got_subcommand(heatmap.cmd)) return heatmap.run();
    if (app.got_subcommand(closed_form.cmd)) return closed_form.run();
    if (app.got_subcommand(simulate.cmd)) return simulate.run();
    if (app.got_subcommand(stationary.cmd)) return stationary.run();
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameterError;
  } catch (const towbandit::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const towbandit::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameterError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameterError;
  }
  return kExitOk;
}
