// Command-line front door: batch workflows over the transport-equation
// library with deterministic CSV/JSON artifacts. Every run writes
// manifest.json (inputs, versions, tolerances, result summary); wall
// time goes to a separate sidecar so artifact bytes depend only on the
// inputs and the seed.
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "plasma/classify.hpp"
#include "plasma/conservation.hpp"
#include "plasma/errors.hpp"
#include "plasma/exact.hpp"
#include "plasma/integrable.hpp"
#include "plasma/io.hpp"
#include "plasma/reduction.hpp"
#include "plasma/residual.hpp"
#include "plasma/scenario.hpp"
#include "plasma/solver.hpp"
#include "plasma/symmetry.hpp"

namespace {

using nlohmann::json;
using namespace plasma;

constexpr const char* kVersion = "1.0.0";

struct Common {
  std::string out = ".";
  unsigned long long seed = 12345;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Output directory for artifacts")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed,
                  "Seed for randomized pieces (PLASMA_SEED overrides)")
      ->capture_default_str();
}

unsigned long long effective_seed(unsigned long long flag_seed) {
  if (const char* env = std::getenv("PLASMA_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      fail_config("PLASMA_SEED must be an unsigned integer");
    }
  }
  return flag_seed;
}

std::string prepare_out(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail_config("cannot create output directory: " + dir);
  return dir;
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

json base_manifest(const std::string& command, const Common& c,
                   unsigned long long seed) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["seed"] = seed;
  m["out"] = c.out;
  return m;
}

class Timer {
 public:
  explicit Timer(std::string dir) : dir_(std::move(dir)) {
    begin_ = std::chrono::steady_clock::now();
  }
  // Wall time lives outside the manifest so re-runs are byte-identical.
  ~Timer() {
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      begin_)
            .count();
    std::ofstream out(join(dir_, "timing.txt"));
    out << s << " s\n";
  }

 private:
  std::string dir_;
  std::chrono::steady_clock::time_point begin_;
};

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(read_json_file(path));
}

json solve_options_json(const SolveOptions& opt) {
  json j;
  j["cells"] = opt.cells;
  j["theta"] = opt.theta;
  j["dt"] = opt.dt;
  j["adapt_target"] = opt.adapt_target;
  j["newton_tol"] = opt.newton_tol;
  return j;
}

std::vector<double> frame_times(const Scenario& sc, int frames) {
  std::vector<double> ts(frames);
  for (int i = 0; i < frames; ++i)
    ts[i] = sc.t0 + (sc.t1 - sc.t0) * i / (frames - 1);
  return ts;
}

void write_samples_csv(const std::string& path, const SolutionSamples& s) {
  std::vector<std::vector<double>> rows;
  rows.reserve(s.times.size() * s.grid.cells());
  for (std::size_t k = 0; k < s.times.size(); ++k)
    for (int i = 0; i < s.grid.cells(); ++i)
      rows.push_back({s.times[k], s.grid.center(i), s.data[k][i]});
  write_csv(path, {"t", "x", "u"}, rows);
}

// ------------------------------------------------------------- classify ---
int run_classify(const Common& c, const std::string& scenario_path) {
  prepare_out(c.out);
  Timer timer(c.out);
  const unsigned long long seed = effective_seed(c.seed);
  const json input = read_json_file(scenario_path);
  const Scenario sc = scenario_from_json(input);
  const Classification cls = classify(sc);

  json result = cls.to_json();
  result["scenario"] = sc.to_json();
  write_manifest(join(c.out, "classification.json"), result);

  json m = base_manifest("classify", c, seed);
  m["inputs"] = {{"scenario_path", scenario_path}, {"scenario", input}};
  m["outputs"] = {"classification.json"};
  m["result"] = {{"classified", cls.primary.has_value()},
                 {"case", cls.primary ? case_name(cls.primary->id) : ""},
                 {"generators", cls.generators.size()}};
  write_manifest(join(c.out, "manifest.json"), m);
  return 0;
}

// ---------------------------------------------------------------- solve ---
struct SolveArgs {
  std::string scenario_path;
  int cells = 256;
  double dt = 0.0;
  double theta = 0.5;
  int frames = 33;
  double adapt_target = 1e-8;
};

int run_solve(const Common& c, const SolveArgs& a) {
  prepare_out(c.out);
  Timer timer(c.out);
  const unsigned long long seed = effective_seed(c.seed);
  const json input = read_json_file(a.scenario_path);
  const Scenario sc = scenario_from_json(input);

  SolveOptions opt;
  opt.cells = a.cells;
  opt.dt = a.dt;
  opt.theta = a.theta;
  opt.adapt_target = a.adapt_target;
  opt.output_times = frame_times(sc, std::max(2, a.frames));
  const SolveResult r = solve_pde(sc, opt);
  write_samples_csv(join(c.out, "solution.csv"), r.samples);

  const BalanceReport mb = mass_balance(sc, r, opt.theta);
  json diag;
  diag["steps"] = r.steps;
  diag["newton_total"] = r.newton_total;
  diag["rejected"] = r.rejected;
  diag["content_balance"] = {{"initial", mb.initial},
                             {"final", mb.final_value},
                             {"max_step_defect", mb.max_step_defect},
                             {"cumulative_defect", mb.cumulative_defect},
                             {"relative", mb.relative}};
  write_manifest(join(c.out, "diagnostics.json"), diag);

  json m = base_manifest("solve", c, seed);
  m["inputs"] = {{"scenario_path", a.scenario_path}, {"scenario", input}};
  m["options"] = solve_options_json(opt);
  m["options"]["frames"] = a.frames;
  m["outputs"] = {"solution.csv", "diagnostics.json"};
  m["result"] = diag;
  write_manifest(join(c.out, "manifest.json"), m);
  return 0;
}

// --------------------------------------------------------------- reduce ---
struct ReduceArgs {
  int row = 1;
  double m = 1.0, n = 0.0, k = 0.0, g = 1.0, w = 1.0, eps = 1.0;
  std::string g_json;  // row-1 diffusivity as coefficient JSON
  double phi0 = 1.0, dphi0 = 0.0;
  double from = 1.0, to = 2.0;
  int samples = 201;
  double t_lo = 1.0, t_hi = 2.0;
  double tol = 1e-8;
};

int run_reduce(const Common& c, const ReduceArgs& a) {
  prepare_out(c.out);
  Timer timer(c.out);
  const unsigned long long seed = effective_seed(c.seed);

  ReductionSpec spec;
  spec.row = a.row;
  spec.m = a.m;
  spec.n = a.n;
  spec.k = a.k;
  spec.g = a.g;
  spec.w = a.w;
  spec.eps = a.eps;
  if (!a.g_json.empty())
    spec.G = CoefficientFn::from_json(json::parse(a.g_json));
  const ReducedProblem rp = build_reduced(spec);

  const OdeSolution sol =
      integrate_reduced(rp, a.from, a.phi0, a.dphi0, a.to);
  const double w_end = sol.t_end();

  std::vector<std::vector<double>> rows;
  const int ns = std::max(2, a.samples);
  for (int i = 0; i < ns; ++i) {
    const double w = a.from + (w_end - a.from) * i / (ns - 1);
    rows.push_back({w, sol.eval(w, 0), sol.eval(w, 1)});
  }
  write_csv(join(c.out, "profile.csv"), {"omega", "phi", "dphi"}, rows);

  // Reconstruction: the lifted field u(t, x) on a (t, omega) lattice.
  const AnalyticFn lifted = rp.lift(sol);
  std::vector<std::vector<double>> rec;
  for (int it = 0; it <= 8; ++it) {
    const double t = a.t_lo + (a.t_hi - a.t_lo) * it / 8.0;
    for (int iw = 0; iw <= 16; ++iw) {
      const double w = a.from + (w_end - a.from) * iw / 16.0;
      const double x = rp.x_from_omega(t, w);
      rec.push_back({t, x, lifted.u(t, x)});
    }
  }
  write_csv(join(c.out, "reconstruction.csv"), {"t", "x", "u"}, rec);

  // Factorization audit with an arbitrary cubic profile.
  const double mismatch = verify_reduction(
      rp, {0.7, 0.45, -0.12, 0.05}, a.t_lo, a.t_hi, a.from, w_end);

  json m = base_manifest("reduce", c, seed);
  m["inputs"] = {{"row", a.row}, {"m", a.m},     {"n", a.n},
                 {"k", a.k},     {"g", a.g},     {"w", a.w},
                 {"eps", a.eps}, {"phi0", a.phi0}, {"dphi0", a.dphi0},
                 {"from", a.from}, {"to", a.to}};
  m["scenario"] = rp.scenario().to_json();
  m["tolerances"] = {{"factorization", a.tol}};
  m["outputs"] = {"profile.csv", "reconstruction.csv"};
  m["result"] = {{"w_end", w_end},
                 {"stopped_early", sol.stopped_early()},
                 {"stop_reason", sol.stop_reason()},
                 {"factorization_mismatch", mismatch}};
  write_manifest(join(c.out, "manifest.json"), m);
  if (mismatch > a.tol)
    fail_verification("reduction factorization mismatch " +
                            format_full(mismatch) + " exceeds " +
                            format_full(a.tol));
  return 0;
}

// ------------------------------------------------------------ transport ---
struct TransportArgs {
  std::string scenario_path;
  int cells = 128;
  double dt = 0.0;
  int frames = 33;
  int generator = 0;
  double epsilon = 0.1;
  double tol = 1e-5;
  double roundtrip_tol = 1e-6;
};

int run_transport(const Common& c, const TransportArgs& a) {
  prepare_out(c.out);
  Timer timer(c.out);
  const unsigned long long seed = effective_seed(c.seed);
  const json input = read_json_file(a.scenario_path);
  const Scenario sc = scenario_from_json(input);

  const Classification cls = classify(sc);
  if (!cls.primary)
    fail_config("scenario does not match any classified case: " +
                      cls.reason);
  if (a.generator < 0 ||
      a.generator >= static_cast<int>(cls.generators.size()))
    fail_config("generator index out of range (have " +
                      std::to_string(cls.generators.size()) + ")");
  const Generator& gen = cls.generators[a.generator];

  SolveOptions opt;
  opt.cells = a.cells;
  opt.dt = a.dt;
  opt.output_times = frame_times(sc, std::max(5, a.frames));
  const SolveResult r = solve_pde(sc, opt);

  const SolutionSamples flowed = act_on_solution(gen, a.epsilon, r.samples);
  write_samples_csv(join(c.out, "flowed.csv"), flowed);
  const double residual = max_stencil_residual(sc, flowed);

  const SolutionSamples back = act_on_solution(gen, -a.epsilon, flowed);
  double roundtrip = 0.0;
  for (std::size_t k = 0; k < back.times.size(); ++k)
    for (int i = 0; i < back.grid.cells(); ++i)
      roundtrip = std::max(
          roundtrip, std::abs(back.data[k][i] - r.samples.data[k][i]));

  json m = base_manifest("transport", c, seed);
  m["inputs"] = {{"scenario_path", a.scenario_path},
                 {"scenario", input},
                 {"generator", a.generator},
                 {"generator_label", gen.label},
                 {"epsilon", a.epsilon}};
  m["options"] = solve_options_json(opt);
  m["tolerances"] = {{"stencil_residual", a.tol},
                     {"flow_roundtrip", a.roundtrip_tol}};
  m["outputs"] = {"flowed.csv"};
  m["result"] = {{"case", case_name(cls.primary->id)},
                 {"stencil_residual", residual},
                 {"flow_roundtrip", roundtrip}};
  write_manifest(join(c.out, "manifest.json"), m);
  if (residual > a.tol)
    fail_verification("flowed-solution residual " +
                            format_full(residual) + " exceeds " +
                            format_full(a.tol));
  if (roundtrip > a.roundtrip_tol)
    fail_verification("flow roundtrip mismatch " +
                            format_full(roundtrip) + " exceeds " +
                            format_full(a.roundtrip_tol));
  return 0;
}

// -------------------------------------------------------------- conserve ---
struct ConserveArgs {
  std::string scenario_path;
  int cells = 128;
  double dt = 0.0;
  double theta = 0.5;
  int frames = 33;
  double tol = 1e-10;  // plain-content cumulative relative defect
};

int run_conserve(const Common& c, const ConserveArgs& a) {
  prepare_out(c.out);
  Timer timer(c.out);
  const unsigned long long seed = effective_seed(c.seed);
  const json input = read_json_file(a.scenario_path);
  const Scenario sc = scenario_from_json(input);

  SolveOptions opt;
  opt.cells = a.cells;
  opt.dt = a.dt;
  opt.theta = a.theta;
  opt.newton_tol = 1e-13;
  opt.output_times = frame_times(sc, std::max(2, a.frames));
  const SolveResult r = solve_pde(sc, opt);

  const BalanceReport plain = mass_balance(sc, r, opt.theta);
  const BalanceReport weighted = weighted_balance(sc, r, opt.theta);
  const PotentialSurface vp = mass_potential(sc, r, opt.theta);
  const PotentialSurface zp = weighted_potential(sc, r, opt.theta);

  // Cumulative defect time series at the output frames.
  const double span = sc.t1 - sc.t0;
  const int n = r.samples.grid.cells();
  const double dx = r.samples.grid.dx();
  std::vector<double> rc(n);
  for (int i = 0; i < n; ++i)
    rc[i] = sc.g.reciprocal_antiderivative(r.samples.grid.center(i),
                                           sc.x_left);
  auto weighted_integral = [&](std::size_t f) {
    const double iw = sc.w.antiderivative(r.samples.times[f], sc.t0);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (r.samples.data[f][i] - iw) * rc[i];
    return s * dx;
  };
  const double r_right =
      sc.g.reciprocal_antiderivative(sc.x_right, sc.x_left);
  const double u_ref = sc.initial(sc.x_left);
  const double l = sc.x_right - sc.x_left;
  const double w0 = weighted_integral(0);

  std::vector<std::vector<double>> rows;
  rows.push_back({r.samples.times[0], 0.0, 0.0});
  double plain_acc = 0.0, weighted_flux = 0.0;
  std::size_t rec = 0;
  for (std::size_t f = 1; f < r.samples.times.size(); ++f) {
    while (rec < r.history.size() &&
           r.history[rec].t_new <= r.samples.times[f] + 1e-9 * span) {
      const StepRecord& s = r.history[rec];
      const double dt = s.t_new - s.t_old;
      plain_acc += s.mass_new - s.mass_old -
                   dt * (a.theta * (s.flux_right_new - s.flux_left_new) +
                         (1.0 - a.theta) *
                             (s.flux_right_old - s.flux_left_old)) -
                   l * s.w_integral - s.source_integral;
      const double tn = s.flux_right_new * r_right -
                        (sc.a.antiderivative(s.u_right_new, u_ref) -
                         sc.a.antiderivative(s.u_left_new, u_ref));
      const double to = s.flux_right_old * r_right -
                        (sc.a.antiderivative(s.u_right_old, u_ref) -
                         sc.a.antiderivative(s.u_left_old, u_ref));
      weighted_flux += dt * (a.theta * tn + (1.0 - a.theta) * to);
      ++rec;
    }
    rows.push_back({r.samples.times[f], plain_acc,
                    weighted_integral(f) - w0 - weighted_flux});
  }
  write_csv(join(c.out, "defects.csv"),
            {"t", "defect_content", "defect_weighted"}, rows);

  json m = base_manifest("conserve", c, seed);
  m["inputs"] = {{"scenario_path", a.scenario_path}, {"scenario", input}};
  m["options"] = solve_options_json(opt);
  m["tolerances"] = {{"content_relative", a.tol}};
  m["outputs"] = {"defects.csv"};
  m["result"] = {
      {"content",
       {{"max_step_defect", plain.max_step_defect},
        {"cumulative_defect", plain.cumulative_defect},
        {"relative", plain.relative}}},
      {"weighted",
       {{"cumulative_defect", weighted.cumulative_defect},
        {"relative", weighted.relative}}},
      {"potential_corner_defects",
       {{"content", vp.corner_defect}, {"weighted", zp.corner_defect}}}};
  write_manifest(join(c.out, "manifest.json"), m);
  if (plain.relative > a.tol)
    fail_verification("content balance defect " +
                            format_full(plain.relative) + " exceeds " +
                            format_full(a.tol));
  return 0;
}

// ----------------------------------------------------------------- exact ---
struct ExactArgs {
  bool list = false;
  std::string name;
  int nt = 32, nx = 32;
  int dump_nt = 17, dump_nx = 33;
  double tol = 1e-10;
};

int run_exact(const Common& c, const ExactArgs& a) {
  if (a.list) {
    for (const auto& e : exact_catalog()) std::cout << e.name << "\n";
    return 0;
  }
  if (a.name.empty()) fail_config("exact: need --name or --list");
  prepare_out(c.out);
  Timer timer(c.out);
  const unsigned long long seed = effective_seed(c.seed);
  const ExactSolution e = find_exact(a.name);

  std::vector<std::vector<double>> rows;
  const Scenario& sc = e.scenario;
  for (int it = 0; it < a.dump_nt; ++it) {
    const double t = sc.t0 + (sc.t1 - sc.t0) * it / (a.dump_nt - 1);
    for (int ix = 0; ix < a.dump_nx; ++ix) {
      const double x =
          sc.x_left + (sc.x_right - sc.x_left) * ix / (a.dump_nx - 1);
      rows.push_back({t, x, e.field.u(t, x)});
    }
  }
  write_csv(join(c.out, "samples.csv"), {"t", "x", "u"}, rows);
  const double residual = max_field_residual(e, a.nt, a.nx);

  json m = base_manifest("exact", c, seed);
  m["inputs"] = {{"name", a.name}, {"params", e.params}};
  m["scenario"] = sc.to_json();
  m["tolerances"] = {{"residual", a.tol}};
  m["outputs"] = {"samples.csv"};
  m["result"] = {{"max_residual", residual},
                 {"residual_grid", {a.nt, a.nx}}};
  write_manifest(join(c.out, "manifest.json"), m);
  if (residual > a.tol)
    fail_verification("exact-solution residual " +
                            format_full(residual) + " exceeds " +
                            format_full(a.tol));
  return 0;
}

// ------------------------------------------------------------ integrable ---
struct IntegrableArgs {
  int cells = 256;
  double t_end = 0.25;
  double shift = 3.0;
  double kink_speed = 1.0;
  int kink_points = 8001;
  bool skip_kink = false;
  double tol_roundtrip = 1e-3;
  double tol_kink = 1e-6;
  double tol_shift = 1e-9;
};

int run_integrable(const Common& c, const IntegrableArgs& a) {
  prepare_out(c.out);
  Timer timer(c.out);
  const unsigned long long seed = effective_seed(c.seed);

  const RoundtripReport rep =
      integrable_roundtrip(a.cells, a.t_end, a.shift);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.centers.size(); ++i)
    rows.push_back({rep.centers[i], rep.u_direct[i], rep.u_chain[i],
                    std::abs(rep.u_direct[i] - rep.u_chain[i])});
  write_csv(join(c.out, "roundtrip.csv"),
            {"x", "u_direct", "u_transform", "abs_diff"}, rows);

  double kink = 0.0;
  if (!a.skip_kink) kink = kink_max_error(a.kink_speed, a.kink_points);

  json m = base_manifest("integrable", c, seed);
  m["inputs"] = {{"cells", a.cells},
                 {"t_end", a.t_end},
                 {"shift", a.shift},
                 {"kink_speed", a.kink_speed},
                 {"kink_points", a.kink_points},
                 {"skip_kink", a.skip_kink}};
  m["tolerances"] = {{"roundtrip", a.tol_roundtrip},
                     {"kink", a.tol_kink},
                     {"shifted_replay", a.tol_shift}};
  m["outputs"] = {"roundtrip.csv"};
  m["result"] = {{"roundtrip_max_error", rep.max_error},
                 {"shifted_max_error", rep.shifted_max_error},
                 {"kink_max_error", kink}};
  write_manifest(join(c.out, "manifest.json"), m);
  if (rep.max_error > a.tol_roundtrip)
    fail_verification("roundtrip error " + format_full(rep.max_error) +
                            " exceeds " + format_full(a.tol_roundtrip));
  if (!a.skip_kink && kink > a.tol_kink)
    fail_verification("kink transport error " + format_full(kink) +
                            " exceeds " + format_full(a.tol_kink));
  if (rep.shifted_max_error > a.tol_shift)
    fail_verification("shifted replay mismatch " +
                            format_full(rep.shifted_max_error) +
                            " exceeds " + format_full(a.tol_shift));
  return 0;
}

// ----------------------------------------------------------- convergence ---
struct ConvergenceArgs {
  std::vector<int> cells = {64, 128, 256, 512};
  double dt_over_dx = 0.5;
  double order_lo = 1.8, order_hi = 2.2;
};

int run_convergence(const Common& c, const ConvergenceArgs& a) {
  prepare_out(c.out);
  Timer timer(c.out);
  const unsigned long long seed = effective_seed(c.seed);

  const ConvergenceReport rep = convergence_study(a.cells, a.dt_over_dx);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.cells.size(); ++i)
    rows.push_back({static_cast<double>(rep.cells[i]), rep.errors[i],
                    i == 0 ? 0.0 : rep.orders[i - 1]});
  write_csv(join(c.out, "convergence.csv"),
            {"cells", "max_error", "observed_order"}, rows);

  json m = base_manifest("convergence", c, seed);
  m["inputs"] = {{"cells", a.cells}, {"dt_over_dx", a.dt_over_dx}};
  m["tolerances"] = {{"order_lo", a.order_lo}, {"order_hi", a.order_hi}};
  m["outputs"] = {"convergence.csv"};
  m["result"] = {{"errors", rep.errors}, {"orders", rep.orders}};
  write_manifest(join(c.out, "manifest.json"), m);
  for (double p : rep.orders)
    if (p < a.order_lo || p > a.order_hi)
      fail_verification("observed order " + format_full(p) +
                              " outside [" + format_full(a.order_lo) + ", " +
                              format_full(a.order_hi) + "]");
  return 0;
}

// ----------------------------------------------------------------- sweep ---
struct SweepArgs {
  std::string config_path;
  int jobs = 0;
};

struct SweepOutcome {
  bool ok = false;
  std::string error;
  ErrorKind kind = ErrorKind::Config;
  double mass_relative = 0.0;
  double final_mean = 0.0;
  long steps = 0;
  long newton_total = 0;
  long rejected = 0;
};

int run_sweep(const Common& c, const SweepArgs& a) {
  prepare_out(c.out);
  Timer timer(c.out);
  const unsigned long long seed = effective_seed(c.seed);
  const json cfg = read_json_file(a.config_path);
  if (!cfg.contains("runs") || !cfg["runs"].is_array() ||
      cfg["runs"].empty())
    fail_config("sweep config needs a non-empty 'runs' array");
  const json& runs = cfg["runs"];
  const std::filesystem::path cfg_dir =
      std::filesystem::path(a.config_path).parent_path();

  const int n = static_cast<int>(runs.size());
  std::vector<SweepOutcome> outcomes(n);
  std::atomic<int> next{0};
  const int jobs =
      a.jobs > 0 ? a.jobs
                 : std::max(1u, std::thread::hardware_concurrency());

  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      SweepOutcome& o = outcomes[i];
      try {
        const json& run = runs[i];
        Scenario sc;
        if (run.contains("scenario") && run["scenario"].is_object()) {
          sc = scenario_from_json(run["scenario"]);
        } else if (run.contains("scenario_path")) {
          sc = load_scenario(
              (cfg_dir / run["scenario_path"].get<std::string>()).string());
        } else {
          fail_config("sweep run " + std::to_string(i) +
                            ": need 'scenario' or 'scenario_path'");
        }
        const double jitter = run.value("jitter", 0.0);
        if (jitter != 0.0) {
          // a fixed per-run stream keyed by (seed, index): results do not
          // depend on the thread schedule
          std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL *
                                         static_cast<unsigned long long>(
                                             i + 1));
          std::uniform_real_distribution<double> unit(-1.0, 1.0);
          const double factor = 1.0 + jitter * unit(rng);
          auto base = sc.initial;
          sc.initial = [base, factor](double x) { return base(x) * factor; };
          sc.validate();
        }
        SolveOptions opt;
        opt.cells = run.value("cells", 128);
        opt.dt = run.value("dt", 0.0);
        opt.theta = run.value("theta", 0.5);
        opt.output_times =
            frame_times(sc, std::max(2, run.value("frames", 9)));
        const SolveResult r = solve_pde(sc, opt);
        const BalanceReport mb = mass_balance(sc, r, opt.theta);
        o.ok = true;
        o.mass_relative = mb.relative;
        o.steps = r.steps;
        o.newton_total = r.newton_total;
        o.rejected = r.rejected;
        double mean = 0.0;
        for (double v : r.samples.data.back()) mean += v;
        o.final_mean = mean / r.samples.data.back().size();
      } catch (const Error& e) {
        o.error = e.what();
        o.kind = e.kind();
      } catch (const std::exception& e) {
        o.error = e.what();
        o.kind = ErrorKind::Config;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<std::vector<double>> rows;
  json run_summaries = json::array();
  for (int i = 0; i < n; ++i) {
    const SweepOutcome& o = outcomes[i];
    rows.push_back({static_cast<double>(i), o.ok ? 1.0 : 0.0,
                    static_cast<double>(o.steps),
                    static_cast<double>(o.newton_total),
                    static_cast<double>(o.rejected), o.mass_relative,
                    o.final_mean});
    json s;
    s["index"] = i;
    s["name"] = runs[i].value("name", "run-" + std::to_string(i));
    s["ok"] = o.ok;
    if (!o.ok) s["error"] = o.error;
    run_summaries.push_back(s);
  }
  write_csv(join(c.out, "sweep.csv"),
            {"index", "ok", "steps", "newton_total", "rejected",
             "content_relative_defect", "final_mean"},
            rows);

  json m = base_manifest("sweep", c, seed);
  m["inputs"] = {{"config_path", a.config_path}, {"config", cfg}};
  m["outputs"] = {"sweep.csv"};
  m["result"] = {{"runs", run_summaries}};
  write_manifest(join(c.out, "manifest.json"), m);

  for (int i = 0; i < n; ++i) {
    if (!outcomes[i].ok) {
      std::cerr << "sweep run " << i << " failed: " << outcomes[i].error
                << "\n";
      return static_cast<int>(outcomes[i].kind);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Nonlinear energy-transport workbench: classification, solving, "
      "reductions, balance laws, and the linearizable case"};
  app.require_subcommand(1);

  Common c_classify, c_solve, c_reduce, c_transport, c_conserve, c_exact,
      c_integrable, c_convergence, c_sweep;

  std::string classify_scenario;
  CLI::App* cmd_classify =
      app.add_subcommand("classify", "Match a scenario against the "
                                     "symmetry classification");
  cmd_classify->add_option("--scenario", classify_scenario,
                           "Scenario JSON path")
      ->required();
  add_common(cmd_classify, c_classify);

  SolveArgs sa;
  CLI::App* cmd_solve = app.add_subcommand(
      "solve", "Finite-volume solve of a scenario; emits (t, x, u) CSV");
  cmd_solve->add_option("--scenario", sa.scenario_path, "Scenario JSON path")
      ->required();
  cmd_solve->add_option("--N", sa.cells, "Number of cells")
      ->capture_default_str();
  cmd_solve->add_option("--dt", sa.dt, "Fixed step (0 = adaptive)")
      ->capture_default_str();
  cmd_solve->add_option("--theta", sa.theta, "Implicitness weight")
      ->capture_default_str();
  cmd_solve->add_option("--frames", sa.frames, "Output frames")
      ->capture_default_str();
  cmd_solve
      ->add_option("--target", sa.adapt_target, "Adaptive local error target")
      ->capture_default_str();
  add_common(cmd_solve, c_solve);

  ReduceArgs ra;
  CLI::App* cmd_reduce = app.add_subcommand(
      "reduce", "Integrate a similarity-reduced profile and lift it back");
  cmd_reduce->add_option("--row", ra.row, "Reduction row (1..6)")
      ->required()
      ->check(CLI::Range(1, 6));
  cmd_reduce->add_option("--m", ra.m, "State-power exponent m")
      ->capture_default_str();
  cmd_reduce->add_option("--n", ra.n, "Source exponent n (rows 2, 4)")
      ->capture_default_str();
  cmd_reduce->add_option("--k", ra.k, "Diffusivity exponent k (rows 2, 3)")
      ->capture_default_str();
  cmd_reduce->add_option("--g", ra.g, "Diffusivity multiplier")
      ->capture_default_str();
  cmd_reduce->add_option("--w", ra.w, "Source multiplier (rows 3, 5)")
      ->capture_default_str();
  cmd_reduce->add_option("--eps", ra.eps, "Row-6 mixing parameter")
      ->capture_default_str();
  cmd_reduce->add_option("--G", ra.g_json,
                         "Row-1 diffusivity as coefficient JSON");
  cmd_reduce->add_option("--phi0", ra.phi0, "Profile value at --from")
      ->required();
  cmd_reduce->add_option("--dphi0", ra.dphi0, "Profile slope at --from")
      ->required();
  cmd_reduce->add_option("--from", ra.from, "Similarity variable start")
      ->capture_default_str();
  cmd_reduce->add_option("--to", ra.to, "Similarity variable end")
      ->capture_default_str();
  cmd_reduce->add_option("--samples", ra.samples, "Profile CSV rows")
      ->capture_default_str();
  cmd_reduce->add_option("--t-lo", ra.t_lo, "Reconstruction window start")
      ->capture_default_str();
  cmd_reduce->add_option("--t-hi", ra.t_hi, "Reconstruction window end")
      ->capture_default_str();
  cmd_reduce->add_option("--tol", ra.tol, "Factorization tolerance")
      ->capture_default_str();
  add_common(cmd_reduce, c_reduce);

  TransportArgs ta;
  CLI::App* cmd_transport = app.add_subcommand(
      "transport", "Push a numerical solution along a symmetry flow");
  cmd_transport
      ->add_option("--scenario", ta.scenario_path, "Scenario JSON path")
      ->required();
  cmd_transport->add_option("--N", ta.cells, "Number of cells")
      ->capture_default_str();
  cmd_transport->add_option("--dt", ta.dt, "Fixed step (0 = adaptive)")
      ->capture_default_str();
  cmd_transport->add_option("--frames", ta.frames, "Output frames")
      ->capture_default_str();
  cmd_transport
      ->add_option("--generator", ta.generator, "Generator index (0-based)")
      ->capture_default_str();
  cmd_transport->add_option("--epsilon", ta.epsilon, "Flow parameter")
      ->capture_default_str();
  cmd_transport->add_option("--tol", ta.tol, "Residual tolerance")
      ->capture_default_str();
  cmd_transport
      ->add_option("--roundtrip-tol", ta.roundtrip_tol,
                   "Forward/backward flow mismatch tolerance")
      ->capture_default_str();
  add_common(cmd_transport, c_transport);

  ConserveArgs ca;
  CLI::App* cmd_conserve = app.add_subcommand(
      "conserve", "Audit the discrete balance laws along a solve");
  cmd_conserve
      ->add_option("--scenario", ca.scenario_path, "Scenario JSON path")
      ->required();
  cmd_conserve->add_option("--N", ca.cells, "Number of cells")
      ->capture_default_str();
  cmd_conserve->add_option("--dt", ca.dt, "Fixed step (0 = adaptive)")
      ->capture_default_str();
  cmd_conserve->add_option("--theta", ca.theta, "Implicitness weight")
      ->capture_default_str();
  cmd_conserve->add_option("--frames", ca.frames, "Output frames")
      ->capture_default_str();
  cmd_conserve
      ->add_option("--tol", ca.tol, "Content-balance relative tolerance")
      ->capture_default_str();
  add_common(cmd_conserve, c_conserve);

  ExactArgs ea;
  CLI::App* cmd_exact = app.add_subcommand(
      "exact", "Evaluate a closed-form catalog member and audit it");
  cmd_exact->add_flag("--list", ea.list, "List catalog names and exit");
  cmd_exact->add_option("--name", ea.name, "Catalog member name");
  cmd_exact->add_option("--nt", ea.nt, "Residual grid: time samples")
      ->capture_default_str();
  cmd_exact->add_option("--nx", ea.nx, "Residual grid: space samples")
      ->capture_default_str();
  cmd_exact->add_option("--dump-nt", ea.dump_nt, "CSV time samples")
      ->capture_default_str();
  cmd_exact->add_option("--dump-nx", ea.dump_nx, "CSV space samples")
      ->capture_default_str();
  cmd_exact->add_option("--tol", ea.tol, "Residual tolerance")
      ->capture_default_str();
  add_common(cmd_exact, c_exact);

  IntegrableArgs ia;
  CLI::App* cmd_integrable = app.add_subcommand(
      "integrable",
      "Cross-verify the solver against the linearizing transform chain");
  cmd_integrable->add_option("--N", ia.cells, "Number of cells")
      ->capture_default_str();
  cmd_integrable->add_option("--t-end", ia.t_end, "Final time")
      ->capture_default_str();
  cmd_integrable->add_option("--shift", ia.shift, "State shift for the replay")
      ->capture_default_str();
  cmd_integrable
      ->add_option("--kink-speed", ia.kink_speed, "Front speed for the oracle")
      ->capture_default_str();
  cmd_integrable
      ->add_option("--kink-points", ia.kink_points, "Initial-data samples")
      ->capture_default_str();
  cmd_integrable->add_flag("--skip-kink", ia.skip_kink,
                           "Skip the travelling-front oracle");
  cmd_integrable
      ->add_option("--tol-roundtrip", ia.tol_roundtrip, "Roundtrip tolerance")
      ->capture_default_str();
  cmd_integrable->add_option("--tol-kink", ia.tol_kink, "Front tolerance")
      ->capture_default_str();
  cmd_integrable
      ->add_option("--tol-shift", ia.tol_shift, "Shifted replay tolerance")
      ->capture_default_str();
  add_common(cmd_integrable, c_integrable);

  ConvergenceArgs va;
  CLI::App* cmd_convergence = app.add_subcommand(
      "convergence", "Refinement study on the manufactured problem");
  cmd_convergence->add_option("--cells", va.cells, "Grid sizes")
      ->delimiter(',')
      ->capture_default_str();
  cmd_convergence
      ->add_option("--dt-over-dx", va.dt_over_dx, "Step-to-spacing ratio")
      ->capture_default_str();
  cmd_convergence->add_option("--order-lo", va.order_lo, "Lowest passing order")
      ->capture_default_str();
  cmd_convergence
      ->add_option("--order-hi", va.order_hi, "Highest passing order")
      ->capture_default_str();
  add_common(cmd_convergence, c_convergence);

  SweepArgs wa;
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep", "Run a batch of solves across worker threads");
  cmd_sweep->add_option("--config", wa.config_path, "Sweep config JSON")
      ->required();
  cmd_sweep->add_option("--jobs", wa.jobs, "Worker threads (0 = hardware)")
      ->capture_default_str();
  add_common(cmd_sweep, c_sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // config error unless it was --help/--version
  }

  try {
    if (cmd_classify->parsed())
      return run_classify(c_classify, classify_scenario);
    if (cmd_solve->parsed()) return run_solve(c_solve, sa);
    if (cmd_reduce->parsed()) return run_reduce(c_reduce, ra);
    if (cmd_transport->parsed()) return run_transport(c_transport, ta);
    if (cmd_conserve->parsed()) return run_conserve(c_conserve, ca);
    if (cmd_exact->parsed()) return run_exact(c_exact, ea);
    if (cmd_integrable->parsed()) return run_integrable(c_integrable, ia);
    if (cmd_convergence->parsed())
      return run_convergence(c_convergence, va);
    if (cmd_sweep->parsed()) return run_sweep(c_sweep, wa);
  } catch (const plasma::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
