// Copyright 2026 The QSD Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qsd/bounds.hpp"
#include "qsd/entangle.hpp"
#include "qsd/error.hpp"
#include "qsd/mcsim.hpp"
#include "qsd/minerror.hpp"
#include "qsd/serialize.hpp"
#include "qsd/unambiguous.hpp"

namespace qsd::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Common {
  std::string out_path;
  bool degrees = false;

  double angle(double value) const { return degrees ? value * kPi / 180.0 : value; }
};

// Writes to --out when given, otherwise to the caller's stream.
void emit(const Common& common, std::ostream& fallback, const std::string& text) {
  if (common.out_path.empty() || common.out_path == "-") {
    fallback << text;
    return;
  }
  std::ofstream file(common.out_path);
  if (!file) throw ValidationError("cannot open " + common.out_path + " for writing");
  file << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw ValidationError("cannot open " + path + " for writing");
  file << text;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string line;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) line += ',';
    line += c;
    first = false;
  }
  return line + '\n';
}

std::string fmt(double x) { return format_double(x); }
std::string fmt(std::uint64_t x) { return std::to_string(x); }
std::string fmt(int x) { return std::to_string(x); }

// Magnitudes |c_k| from "a,b,c" or "uniform" (with n entries), normalised.
std::vector<Complex> parse_coefficients(const std::string& text, int uniform_count) {
  std::vector<double> mags;
  if (text == "uniform") {
    if (uniform_count < 1) throw ValidationError("--n must be >= 1");
    mags.assign(static_cast<std::size_t>(uniform_count), 1.0);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        mags.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ValidationError("cannot parse coefficient '" + item + "'");
      }
    }
  }
  if (mags.empty()) throw ValidationError("no coefficients given");
  double norm2 = 0.0;
  for (const double m : mags) norm2 += m * m;
  if (!(norm2 > 0.0)) throw ValidationError("coefficients are all zero");
  std::vector<Complex> out;
  for (const double m : mags) out.emplace_back(m / std::sqrt(norm2), 0.0);
  return out;
}

// Inputs rounded just past pi/4 (e.g. 0.7854) are accepted and clamped.
constexpr double kAngleSlack = 1e-4;

double checked_theta(double theta) {
  if (!(theta > 0.0 && theta <= kPi / 4.0 + kAngleSlack)) {
    throw ValidationError("theta must lie in (0, pi/4] radians");
  }
  return std::min(theta, kPi / 4.0);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QSD_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError("QSD_SEED is not an unsigned integer");
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// helstrom

struct HelstromArgs {
  Common common;
  std::optional<double> theta;
  double eta_plus = 0.5;
  int grid = 0;
  double resolution = 1e-4;
};

std::string cmd_helstrom(const HelstromArgs& a) {
  std::vector<double> thetas;
  if (a.theta) {
    thetas.push_back(a.common.angle(*a.theta));
  } else {
    if (a.grid < 1) throw ValidationError("give --theta or --grid N");
    for (int i = 1; i <= a.grid; ++i) thetas.push_back(kPi / 4.0 * i / a.grid);
  }
  std::string text = csv_row({"theta", "bound", "achieved", "brute_force"});
  for (const double raw : thetas) {
    const double theta = checked_theta(raw);
    const TwoStateFamily family(theta, a.eta_plus);
    const Ensemble ens = family.ensemble();
    const double bound = helstrom_bound(a.eta_plus, family.overlap());
    const double achieved = error_probability(ens, helstrom_measurement(family));
    const double brute = family.overlap() < 1.0 - 1e-12 ? brute_force_two_state(ens, a.resolution).error : bound;
    text += csv_row({fmt(theta), fmt(bound), fmt(achieved), fmt(brute)});
  }
  return text;
}

// ---------------------------------------------------------------------------
// udp

struct UdpArgs {
  Common common;
  std::optional<double> theta;
  std::optional<std::string> coeffs;
  int n = 3;
  std::string csv_path;
};

std::string cmd_udp(const UdpArgs& a) {
  json::Json doc;
  if (a.theta) {
    const double theta = checked_theta(a.common.angle(*a.theta));
    const TwoStateFamily family(theta, 0.5);
    const std::array<Ket, 2> states{family.psi_plus(), family.psi_minus()};
    const double overlap = std::abs(states[0].inner(states[1]));
    const double success = idp_success(overlap);
    const std::array<double, 2> p{success, success};
    const UnambiguousPovm povm = unambiguous_povm(states, p);
    const InterferometerRun run = interferometer_sim(theta);

    json::Json reciprocal = json::Json::array();
    for (const Ket& r : reciprocal_states(states).states) reciprocal.push_back(json::to_json(r));
    json::Json table = json::Json::array();
    std::string csv = csv_row({"input", "D_plus", "D_minus", "D_inconclusive"});
    const char* names[2] = {"+", "-"};
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& s = run.stats[i];
      table.push_back({{"input", names[i]}, {"D+", s.plus}, {"D-", s.minus}, {"D?", s.inconclusive}});
      csv += csv_row({names[i], fmt(s.plus), fmt(s.minus), fmt(s.inconclusive)});
    }
    doc = {{"theta", theta},
           {"overlap", overlap},
           {"p_inconclusive", idp_bound(overlap)},
           {"p_success", success},
           {"povm", json::to_json(povm)},
           {"reciprocal_states", reciprocal},
           {"transmission", run.model.transmission},
           {"interferometer", table}};
    if (!a.csv_path.empty()) write_file(a.csv_path, csv);
  } else if (a.coeffs) {
    const auto c = parse_coefficients(*a.coeffs, a.n);
    const SymmetricFamily family = make_symmetric(c);
    const SymmetricOptimum opt = symmetric_unambiguous_optimum(family);
    const std::vector<double> p(family.size(), opt.success);
    const UnambiguousPovm povm = unambiguous_povm(family.states, p);
    json::Json coeffs = json::Json::array();
    for (const Complex& z : c) coeffs.push_back(json::to_json(z));
    doc = {{"coefficients", coeffs},
           {"p_inconclusive", opt.inconclusive},
           {"p_success", opt.success},
           {"povm", json::to_json(povm)}};
  } else {
    throw ValidationError("give --theta or --coeffs");
  }
  return json::dump(doc) + "\n";
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsArgs {
  Common common;
  int m = 0;
  std::optional<int> n;
  std::optional<double> overlap;
  bool estimation = false;
};

std::string cmd_bounds(const BoundsArgs& a) {
  if (a.estimation) {
    const double f = estimation_fidelity(a.m);
    const double s = estimation_shrink(a.m);
    return csv_row({"M", "F_M", "S_M", "fidelity_identity_residual"}) +
           csv_row({fmt(a.m), fmt(f), fmt(s), fmt(std::abs(f - 0.5 * (1.0 + s)))});
  }
  if (!a.n) throw ValidationError("--n is required unless --estimation is given");
  const int n = *a.n;
  const double s_mn = ucm_shrink(a.m, n);
  const double f_mn = ucm_fidelity(a.m, n);
  const double ratio_residual = std::abs(s_mn - estimation_shrink(a.m) / estimation_shrink(n));
  const double fidelity_residual = std::abs(f_mn - 0.5 * (1.0 + s_mn));
  if (!a.overlap) {
    return csv_row({"M", "N", "S_MN", "F_MN", "shrink_ratio_residual", "fidelity_identity_residual"}) +
           csv_row({fmt(a.m), fmt(n), fmt(s_mn), fmt(f_mn), fmt(ratio_residual), fmt(fidelity_residual)});
  }
  const OverlapScalar s(*a.overlap);
  const double p_mn = clone_probability(a.m, n, s);
  const double p_m = multicopy_discrimination(a.m, s);
  const double p_n = multicopy_discrimination(n, s);
  return csv_row({"M", "N", "s", "P_MN", "S_MN", "F_MN", "P_Minf", "P_Ninf", "chain_residual",
                  "shrink_ratio_residual", "fidelity_identity_residual"}) +
         csv_row({fmt(a.m), fmt(n), fmt(s.value()), fmt(p_mn), fmt(s_mn), fmt(f_mn), fmt(p_m), fmt(p_n),
                  fmt(std::abs(p_m - p_mn * p_n)), fmt(ratio_residual), fmt(fidelity_residual)});
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  Common common;
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::uint64_t trials = 100000;
  std::optional<double> theta;
  std::optional<std::string> coeffs;
  bool as_json = false;
};

std::string metric_table(const std::string& scenario, const SimReport& report) {
  std::string text = csv_row({"scenario", "metric", "analytic", "empirical", "stderr", "count", "trials", "seed"});
  for (const auto& m : report.metrics) {
    text += csv_row({scenario, m.name, fmt(m.analytic), fmt(m.rate), fmt(m.std_error), fmt(m.count),
                     fmt(report.trials), fmt(report.seed)});
  }
  return text;
}

std::string cmd_simulate(const SimulateArgs& a) {
  SimConfig cfg;
  cfg.seed = a.seed ? *a.seed : default_seed();
  cfg.trials = a.trials;
  if (cfg.trials < 1) throw ValidationError("--trials must be >= 1");

  auto theta_or = [&](double fallback) {
    return checked_theta(a.theta ? a.common.angle(*a.theta) : fallback);
  };

  if (a.scenario == "helstrom-sweep") {
    std::vector<double> grid;
    if (a.theta) {
      grid.push_back(theta_or(0.0));
    } else {
      for (int deg = 5; deg <= 45; deg += 5) grid.push_back(deg * kPi / 180.0);
    }
    const auto rows = sweep_theta(grid, cfg);
    if (a.as_json) {
      json::Json doc = json::Json::array();
      for (const auto& r : rows) {
        doc.push_back({{"theta", r.theta}, {"analytic", r.analytic}, {"empirical", r.empirical},
                       {"stderr", r.std_error}, {"trials", r.trials}, {"seed", r.seed}, {"pass", r.pass}});
      }
      return json::dump(doc) + "\n";
    }
    std::string text = csv_row({"theta", "analytic", "empirical", "stderr", "trials", "seed"});
    for (const auto& r : rows) {
      text += csv_row({fmt(r.theta), fmt(r.analytic), fmt(r.empirical), fmt(r.std_error), fmt(r.trials), fmt(r.seed)});
    }
    return text;
  }

  SimReport report;
  if (a.scenario == "trine") {
    const auto trine = trine_states();
    report = run_discrimination(Ensemble::uniform(trine), square_root_measurement(trine), {}, cfg);
  } else if (a.scenario == "idp") {
    const TwoStateFamily family(theta_or(kPi / 6.0), 0.5);
    const std::array<Ket, 2> states{family.psi_plus(), family.psi_minus()};
    const double success = idp_success(std::abs(states[0].inner(states[1])));
    const std::array<double, 2> p{success, success};
    report = run_unambiguous(states, unambiguous_povm(states, p), cfg);
  } else if (a.scenario == "symmetric-ud") {
    const SymmetricFamily family = make_symmetric(parse_coefficients(a.coeffs.value_or("0.7071067811865476,0.5,0.5"), 3));
    const SymmetricOptimum opt = symmetric_unambiguous_optimum(family);
    const std::vector<double> p(family.size(), opt.success);
    report = run_unambiguous(family.states, unambiguous_povm(family.states, p), cfg);
  } else if (a.scenario == "concentrate") {
    const double theta = theta_or(kPi / 8.0);
    Matrix amps = Matrix::Zero(2, 2);
    amps(0, 0) = std::cos(theta);
    amps(1, 1) = std::sin(theta);
    const BipartiteState psi(amps);
    const ConcentrationPlan plan = build_plan(psi);
    const Matrix filter = plan.orthogonaliser.adjoint() * plan.orthogonaliser;
    Matrix failure = Matrix::Identity(2, 2) - filter;
    const Povm povm({0.5 * (filter + filter.adjoint()), 0.5 * (failure + failure.adjoint())}, {"success", "failure"});
    report = run_measurement(partial_trace(psi, Subsystem::A), povm, cfg);
  } else {
    throw ValidationError("unknown scenario '" + a.scenario +
                          "' (expected helstrom-sweep, trine, idp, symmetric-ud or concentrate)");
  }
  if (a.as_json) return json::dump(json::to_json(report)) + "\n";
  return metric_table(a.scenario, report);
}

}  // namespace

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum state discrimination toolkit", "qsd"};
  app.require_subcommand(1);

  HelstromArgs helstrom;
  auto* h = app.add_subcommand("helstrom", "Two-state minimum-error bound, measurement and brute-force check");
  h->add_option("--theta", helstrom.theta, "Half-angle between the states");
  h->add_option("--eta-plus", helstrom.eta_plus, "Prior of |psi_+>")->check(CLI::Range(0.0, 1.0));
  h->add_option("--grid", helstrom.grid, "Number of evenly spaced angles in (0, pi/4]");
  h->add_option("--resolution", helstrom.resolution, "Brute-force angle step in radians")->check(CLI::PositiveNumber);
  h->add_flag("--degrees", helstrom.common.degrees, "Angles are given in degrees");
  h->add_option("--out", helstrom.common.out_path, "Output file (default stdout)");

  UdpArgs udp;
  auto* u = app.add_subcommand("udp", "Unambiguous discrimination: IDP, symmetric states, interferometer");
  auto* udp_theta = u->add_option("--theta", udp.theta, "Two-state half-angle");
  auto* udp_coeffs = u->add_option("--coeffs", udp.coeffs, "Symmetric-family magnitudes |c_k|, comma separated, or 'uniform'");
  udp_theta->excludes(udp_coeffs);
  u->add_option("--n", udp.n, "Family size for --coeffs uniform");
  u->add_option("--csv", udp.csv_path, "Also write the interferometer table as CSV");
  u->add_flag("--degrees", udp.common.degrees, "Angles are given in degrees");
  u->add_option("--out", udp.common.out_path, "Output file (default stdout)");

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "Multi-copy, cloning, separation, estimation and UCM bounds");
  b->add_option("--m", bounds.m, "Initial copies M")->required();
  b->add_option("--n", bounds.n, "Final copies N");
  b->add_option("--overlap", bounds.overlap, "Overlap modulus s");
  b->add_flag("--estimation", bounds.estimation, "Universal state estimation values for M copies");
  b->add_option("--out", bounds.common.out_path, "Output file (default stdout)");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Seeded Monte Carlo measurement runs");
  s->add_option("--scenario", sim.scenario, "helstrom-sweep | trine | idp | symmetric-ud | concentrate")->required();
  s->add_option("--seed", sim.seed, "Seed (default $QSD_SEED, else 0)");
  s->add_option("--trials", sim.trials, "Trials per run");
  s->add_option("--theta", sim.theta, "Angle for helstrom-sweep, idp and concentrate");
  s->add_option("--coeffs", sim.coeffs, "Magnitudes for symmetric-ud");
  s->add_flag("--json", sim.as_json, "Emit the JSON report instead of CSV");
  s->add_flag("--degrees", sim.common.degrees, "Angles are given in degrees");
  s->add_option("--out", sim.common.out_path, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (h->parsed()) {
      emit(helstrom.common, out, cmd_helstrom(helstrom));
    } else if (u->parsed()) {
      emit(udp.common, out, cmd_udp(udp));
    } else if (b->parsed()) {
      emit(bounds.common, out, cmd_bounds(bounds));
    } else if (s->parsed()) {
      emit(sim.common, out, cmd_simulate(sim));
    }
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ImpossibleOutcomeError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace qsd::cli
