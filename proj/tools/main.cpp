#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tangle/evolution.hpp"
#include "tangle/oracle.hpp"
#include "tangle/protocol.hpp"
#include "tangle/report.hpp"

namespace {

using namespace tangle;

struct HamOpts {
  double gamma_x = 0.0;
  double gamma_y = 1.0;
  double hbar = 1.0;
  double r = 0.0;
  CLI::Option* r_opt = nullptr;
};

struct StateOpts {
  double phi = 0.0;
  double p = 0.0;
  double varphi = 0.0;
  bool degrees = false;
  CLI::Option* phi_opt = nullptr;
  CLI::Option* p_opt = nullptr;
};

struct OutOpts {
  std::string format = "csv";
  std::string out;
};

void add_ham(CLI::App* sub, HamOpts& o) {
  auto* gx = sub->add_option("--gamma-x", o.gamma_x, "XXX coupling strength");
  sub->add_option("--gamma-y", o.gamma_y, "YYY coupling strength (nonzero)");
  sub->add_option("--hbar", o.hbar, "value of hbar");
  o.r_opt = sub->add_option("--r", o.r, "coupling ratio gamma_x/gamma_y (with --gamma-y)");
  o.r_opt->excludes(gx);
}

void add_state(CLI::App* sub, StateOpts& o) {
  o.phi_opt = sub->add_option("--phi", o.phi, "population angle (sin^2 phi = p)");
  o.p_opt = sub->add_option("--p", o.p, "population of |000>, in [0,1]");
  o.p_opt->excludes(o.phi_opt);
  sub->add_option("--varphi", o.varphi, "relative phase");
  sub->add_flag("--degrees", o.degrees, "interpret --phi/--varphi in degrees");
}

void add_out(CLI::App* sub, OutOpts& o) {
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "output path (stdout when omitted)");
}

HamiltonianParams make_ham(const HamOpts& o) {
  HamiltonianParams h{o.gamma_x, o.gamma_y, o.hbar};
  if (o.r_opt->count() > 0) h.gamma_x = o.r * o.gamma_y;
  validate(h);
  return h;
}

GHZState make_initial(const StateOpts& o) {
  const double scale = o.degrees ? pi / 180.0 : 1.0;
  if (o.p_opt->count() > 0) return GHZState(o.p, canonical_angle(o.varphi * scale));
  if (o.phi_opt->count() > 0) return make_state(o.phi * scale, o.varphi * scale);
  throw std::invalid_argument("provide an initial state via --phi or --p");
}

int emit_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output path: " + path);
  f << text;
  return 0;
}

std::vector<double> time_grid(double horizon, double dt) {
  if (horizon <= 0.0) throw std::invalid_argument("horizon must be positive");
  if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
  const long n = static_cast<long>(std::floor(horizon / dt + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 2);
  for (long k = 0; k <= n; ++k) grid.push_back(static_cast<double>(k) * dt);
  if (grid.back() < horizon - 1e-12 * std::max(1.0, horizon)) grid.push_back(horizon);
  return grid;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / static_cast<double>(n - 1);
  return xs;
}

std::string trajectory_csv_text(const std::vector<TrajectoryPoint>& pts) {
  std::ostringstream os;
  write_trajectory_csv(os, pts);
  return os.str();
}

std::string timeline_csv_text(const ProtocolTimeline& tl) {
  std::ostringstream os;
  write_timeline_csv(os, tl);
  return os.str();
}

std::string heatmap_csv_text(const HeatmapGrid& g) {
  std::ostringstream os;
  write_heatmap_csv(os, g);
  return os.str();
}

double heatmap_value(const std::string& quantity, double phi, double b) {
  if (quantity == "t-max") return t_max_first_of(phi, b);
  if (quantity == "gamma0") return rate_initial_of(phi, b);
  const double tm = t_max_first_of(phi, b);  // ratio; 0 on the stationary cell
  return tm > 0.0 ? t_prime_max(phi) / tm : 0.0;
}

// Flat key=value config support: keys mirror the long flags of the chosen
// subcommand. Values are appended as --key=value tokens, so the command line
// always wins (keys already given, or excluded by an alternative flag that
// was given, are dropped).
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);

  auto has_flag = [&](const std::string& name) {
    const std::string flag = "--" + name;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  auto skip = [&](const std::string& key) {
    if (has_flag(key)) return true;
    if ((key == "p" || key == "phi") && (has_flag("p") || has_flag("phi"))) return true;
    if ((key == "r" || key == "gamma-x") && (has_flag("r") || has_flag("gamma-x"))) return true;
    return false;
  };
  auto trim = [](const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };

  std::string line;
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty() || key == "config" || skip(key)) continue;
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

struct VerifySuite {
  std::string name;
  long cases = 0;
  double max_err = 0.0;
  double tol = 0.0;
  bool pass() const { return max_err < tol; }
};

void print_suite(const VerifySuite& s) {
  std::cout << s.name << ": cases=" << s.cases << " max_err=" << format_sig(s.max_err)
            << " tol=" << format_sig(s.tol) << (s.pass() ? " PASS" : " FAIL") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-qubit GHZ tangle dynamics under H = gx XXX + gy YYY"};
  app.require_subcommand(1);

  std::string cfg_sink;  // read ahead of the parse; registered for help/validity

  // --- simulate ---
  auto* sim = app.add_subcommand("simulate", "sample the free-evolution trajectory");
  sim->add_option("--config", cfg_sink, "flat key=value config file");
  HamOpts sim_h;
  StateOpts sim_s;
  OutOpts sim_o;
  double sim_horizon = 2.0, sim_dt = 1e-3;
  add_ham(sim, sim_h);
  add_state(sim, sim_s);
  add_out(sim, sim_o);
  sim->add_option("--horizon", sim_horizon, "duration in units of the tau period");
  sim->add_option("--dt", sim_dt, "sample spacing in t~");

  // --- heatmap ---
  auto* heat = app.add_subcommand("heatmap", "grid maps over (phi, b) or (phi, varphi)");
  heat->add_option("--config", cfg_sink, "flat key=value config file");
  HamOpts heat_h;
  OutOpts heat_o;
  std::string heat_quantity = "t-max", heat_axes = "phi-b";
  int heat_nx = 50, heat_ny = 50;
  add_ham(heat, heat_h);
  add_out(heat, heat_o);
  heat->add_option("--quantity", heat_quantity, "map value")
      ->check(CLI::IsMember({"t-max", "gamma0", "ratio"}));
  heat->add_option("--axes", heat_axes, "grid axes")
      ->check(CLI::IsMember({"phi-b", "phi-varphi"}));
  heat->add_option("--nx", heat_nx, "grid resolution in phi");
  heat->add_option("--ny", heat_ny, "grid resolution in the second axis");

  // --- optimize ---
  auto* opt = app.add_subcommand("optimize", "optimal phase rotation and flip report");
  opt->add_option("--config", cfg_sink, "flat key=value config file");
  HamOpts opt_h;
  StateOpts opt_s;
  OutOpts opt_o;
  add_ham(opt, opt_h);
  add_state(opt, opt_s);
  add_out(opt, opt_o);

  // --- protocol ---
  auto* pro = app.add_subcommand("protocol", "threshold-maintenance op sequences");
  pro->add_option("--config", cfg_sink, "flat key=value config file");
  HamOpts pro_h;
  StateOpts pro_s;
  OutOpts pro_o;
  std::string pro_scheme;
  double pro_tau = 0.0, pro_delay = 0.0, pro_horizon = 5.0, pro_dt = 1e-3;
  double pro_repeat = 0.0, pro_margin = 0.0;
  int pro_target = 2;
  add_ham(pro, pro_h);
  add_state(pro, pro_s);
  add_out(pro, pro_o);
  pro->add_option("--scheme", pro_scheme, "op sequence")
      ->check(CLI::IsMember({"sigma-z", "stationary"}))
      ->required();
  auto* pro_tau_opt = pro->add_option("--tau-star", pro_tau, "tangle threshold in (0,1)");
  pro->add_option("--delay", pro_delay, "stationary scheme: wait after t'_max, in t~");
  pro->add_option("--horizon", pro_horizon, "duration in units of the tau period");
  pro->add_option("--dt", pro_dt, "sample spacing in t~");
  pro->add_option("--repeat-interval", pro_repeat, "stationary scheme: re-apply period (0 = off)");
  pro->add_option("--margin", pro_margin, "sigma-z scheme: fire early by margin*delta_t, in [0,0.5)");
  pro->add_option("--target", pro_target, "qubit the single-qubit ops act on");

  // --- verify ---
  auto* ver = app.add_subcommand("verify", "closed forms vs dense-propagator oracle");
  ver->add_option("--config", cfg_sink, "flat key=value config file");
  HamOpts ver_h;
  StateOpts ver_s;
  long ver_cases = 1000;
  unsigned long long ver_seed = 42;
  add_ham(ver, ver_h);
  add_state(ver, ver_s);
  ver->add_option("--cases", ver_cases, "random cases per suite");
  ver->add_option("--seed", ver_seed, "RNG seed");

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  auto run_simulate = [&]() -> int {
    const HamiltonianParams h = make_ham(sim_h);
    const GHZState s0 = make_initial(sim_s);
    std::vector<double> grid = time_grid(sim_horizon, sim_dt);
    for (double& t : grid) t = physical_time(h, t);
    const auto pts = sample_trajectory(s0, h, grid);
    return emit_text(sim_o.format == "json" ? trajectory_json(pts) : trajectory_csv_text(pts),
                     sim_o.out);
  };

  auto run_heatmap = [&]() -> int {
    const HamiltonianParams h = make_ham(heat_h);
    if (heat_nx < 2 || heat_ny < 2) throw std::invalid_argument("grid resolution must be >= 2");
    HeatmapGrid g;
    g.x = linspace(0.0, pi / 2.0, heat_nx);
    g.y = heat_axes == "phi-b" ? linspace(0.0, 1.0, heat_ny) : linspace(0.0, two_pi, heat_ny);
    g.value.reserve(g.x.size() * g.y.size());
    for (double y : g.y) {
      const double b = heat_axes == "phi-b" ? y : 0.5 * (1.0 - phase_weight(y, h));
      for (double x : g.x) g.value.push_back(heatmap_value(heat_quantity, x, b));
    }
    return emit_text(heat_o.format == "json" ? heatmap_json(g) : heatmap_csv_text(g), heat_o.out);
  };

  auto run_optimize = [&]() -> int {
    const HamiltonianParams h = make_ham(opt_h);
    const GHZState s0 = make_initial(opt_s);
    try {
      return emit_text(optimization_json(optimization_report(s0, h)), opt_o.out);
    } catch (const std::domain_error&) {
      // phi = pi/4: the rate is phase-independent, rotate straight to the
      // stationary phase instead of an optimal-rate phase
      nlohmann::json j;
      j["advisory"] = "stationary phase applies";
      j["varphi_s"] = stationary_state(h).varphi;
      j["tau"] = tangle_of(s0);
      return emit_text(j.dump(2) + "\n", opt_o.out);
    }
  };

  auto run_protocol = [&]() -> int {
    const HamiltonianParams h = make_ham(pro_h);
    const GHZState s0 = make_initial(pro_s);
    ProtocolTimeline tl;
    if (pro_scheme == "sigma-z") {
      if (pro_tau_opt->count() == 0)
        throw std::invalid_argument("sigma-z scheme requires --tau-star");
      tl = run_sigma_z_protocol(s0, h, pro_tau, pro_horizon, pro_dt, pro_target, pro_margin);
    } else {
      tl = run_stationary_protocol(s0, h, pro_delay, pro_horizon, pro_dt, pro_repeat);
    }
    const std::string body = pro_o.format == "json" ? timeline_json(tl) : timeline_csv_text(tl);
    const std::string summary = timeline_summary_json(tl);
    if (pro_o.out.empty()) {
      std::cout << body;
      std::cerr << summary;
    } else {
      emit_text(body, pro_o.out);
      std::cout << summary;
    }
    return 0;
  };

  auto run_verify = [&]() -> int {
    const HamiltonianParams h0 = make_ham(ver_h);
    if (ver_cases < 1) throw std::invalid_argument("--cases must be >= 1");
    const bool has_state = ver_s.phi_opt->count() > 0 || ver_s.p_opt->count() > 0;
    std::mt19937_64 rng(ver_seed);

    VerifySuite evo{"analytic-vs-oracle", 0, 0.0, 1e-9};
    auto check_evolution = [&](const GHZState& s, const HamiltonianParams& h, double t_tilde) {
      const double t = physical_time(h, t_tilde);
      const GHZState an = evolve(s, h, t);
      const State8 ref = matrix_exp_evolve(to_amplitudes(s), h, t);
      const double p_ref = std::norm(ref(0));
      evo.max_err = std::max(evo.max_err, std::abs(an.p - p_ref));
      evo.max_err = std::max(evo.max_err, std::abs(tangle_closed_form(s, h, t) - tangle_general(ref)));
      evo.max_err = std::max(evo.max_err, std::abs(1.0 - std::abs(ref.dot(to_amplitudes(an)))));
      ++evo.cases;
    };
    if (has_state)
      for (double tt : {0.25, 0.5, 1.5}) check_evolution(make_initial(ver_s), h0, tt);
    for (long i = 0; i < ver_cases; ++i) {
      const GHZState s = random_ghz(rng);
      const double r = uniform(rng, -5.0, 5.0);
      const double gy = (uniform_unit(rng) < 0.5 ? -1.0 : 1.0) * uniform(rng, 0.5, 2.0);
      const HamiltonianParams h{r * gy, gy, 1.0};
      check_evolution(s, h, uniform(rng, 0.0, 2.0));
    }

    VerifySuite ckw{"hyperdet-vs-ckw", 0, 0.0, 1e-8};
    for (long i = 0; i < ver_cases; ++i) {
      const State8 psi = haar_state(rng);
      ckw.max_err = std::max(ckw.max_err, std::abs(tangle_general(psi) - ckw_tangle(psi)));
      ++ckw.cases;
    }
    State8 ghz = State8::Zero(), w = State8::Zero();
    ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
    w(1) = w(2) = w(4) = 1.0 / std::sqrt(3.0);
    ckw.max_err = std::max(ckw.max_err, std::abs(tangle_general(ghz) - 1.0));
    ckw.max_err = std::max(ckw.max_err, std::abs(ckw_tangle(ghz) - 1.0));
    ckw.max_err = std::max(ckw.max_err, std::abs(tangle_general(w)));
    ckw.max_err = std::max(ckw.max_err, std::abs(ckw_tangle(w)));
    ckw.cases += 2;

    VerifySuite ham{"hamiltonian-square", 0, 0.0, 1e-12};
    for (long i = 0; i < ver_cases; ++i) {
      const double gx = uniform(rng, -3.0, 3.0);
      const double gy = (uniform_unit(rng) < 0.5 ? -1.0 : 1.0) * uniform(rng, 0.5, 3.0);
      const HamiltonianParams h{gx, gy, 1.0};
      const Matrix8 sq = hamiltonian_matrix(h) * hamiltonian_matrix(h);
      const Matrix8 want = (gx * gx + gy * gy) * Matrix8::Identity();
      ham.max_err = std::max(ham.max_err, (sq - want).cwiseAbs().maxCoeff());
      ++ham.cases;
    }

    print_suite(evo);
    print_suite(ckw);
    print_suite(ham);
    const bool pass = evo.pass() && ckw.pass() && ham.pass();
    std::cout << "verification: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 2;
  };

  try {
    if (sim->parsed()) return run_simulate();
    if (heat->parsed()) return run_heatmap();
    if (opt->parsed()) return run_optimize();
    if (pro->parsed()) return run_protocol();
    if (ver->parsed()) return run_verify();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
