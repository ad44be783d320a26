// Copyright 2026 The switchgrade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// switchgrade command-line front end.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "switchgrade/barabanov.hpp"
#include "switchgrade/beam_search.hpp"
#include "switchgrade/catalog.hpp"
#include "switchgrade/error.hpp"
#include "switchgrade/io.hpp"
#include "switchgrade/lyapunov.hpp"
#include "switchgrade/spectral.hpp"
#include "switchgrade/system.hpp"

namespace sg = switchgrade;
namespace cat = switchgrade::catalog;

namespace {

constexpr int kUsage = 2;
constexpr double kBoundSlack = 1e-9;
constexpr double kAgreement = 2e-3;

// Families are switching systems; the single-matrix names give one-generator
// systems for the singleton method.
sg::SwitchingSystem named_system(const std::string& name, double lambda) {
  if (name == "A") return cat::system_A();
  if (name == "B") return cat::system_B(lambda);
  if (name == "B0") return cat::system_B0(lambda);
  if (name == "X") return cat::system_X(lambda);
  if (name == "unshifted") return cat::system_unshifted();
  if (name == "cgm") return sg::SwitchingSystem({cat::cgm_M0(), cat::cgm_M1(sg::cgm_alpha())}, "cgm");
  if (name == "A0") return sg::SwitchingSystem({cat::A0()}, name);
  if (name == "A1") return sg::SwitchingSystem({cat::A1()}, name);
  if (name == "X0") return sg::SwitchingSystem({cat::X0(lambda)}, name);
  if (name == "X1") return sg::SwitchingSystem({cat::X1(lambda)}, name);
  if (name == "X2") return sg::SwitchingSystem({cat::X2()}, name);
  sg::fail(sg::Errc::invalid_input, "unknown system '" + name + "'");
}

const std::vector<std::string> kSystemNames = {"A",  "B",  "B0", "X",  "unshifted", "cgm",
                                               "A0", "A1", "X0", "X1", "X2"};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) {
      double x = 0.0;
      auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
      if (ec != std::errc() || p != item.data() + item.size() || !std::isfinite(x)) {
        sg::fail(sg::Errc::invalid_input, flag + ": not a number: '" + item + "'");
      }
      out.push_back(x);
    } else if (end != text.size() || pos != 0) {
      sg::fail(sg::Errc::invalid_input, flag + ": empty list entry");
    }
    pos = end + 1;
  }
  if (out.empty()) sg::fail(sg::Errc::invalid_input, flag + ": empty list");
  return out;
}

void emit(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    sg::write_text_file(path, content);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// compute-lambda ----------------------------------------------------------

struct LambdaFlags {
  std::string system = "unshifted";
  std::string method = "both";
  double grid_step = std::numbers::pi / 64;
  int grid_count = 64;
  std::string grid;
  int beam = 64;
  double horizon = 16 * std::numbers::pi;
  double tol = 1e-10;
  int intervals = 1 << 14;
  std::string json;
};

int run_compute_lambda(const LambdaFlags& f, bool explicit_grid) {
  const sg::SwitchingSystem sys = named_system(f.system, cat::lambda_star());
  const bool want_angular = f.method == "both" || f.method == "angular";
  const bool want_product = f.method == "both" || f.method == "product";

  sg::BeamOptions beam;
  beam.grid = explicit_grid ? sg::DurationGrid::from_values(parse_list(f.grid, "--grid"))
                            : sg::DurationGrid::uniform(f.grid_step, f.grid_count);
  beam.grid.validate();
  beam.beam = f.beam;
  if (f.beam < 1) sg::fail(sg::Errc::invalid_input, "--beam must be positive");
  if (!(f.horizon > 0.0)) sg::fail(sg::Errc::invalid_input, "--horizon must be positive");

  sg::Json report;
  report["command"] = "compute-lambda";
  report["system"] = f.system;
  report["method"] = f.method;
  report["constants"] = {{"log4_over_pi", cat::log4_over_pi()},
                         {"bound_slack", kBoundSlack},
                         {"agreement_tolerance", kAgreement},
                         {"horizon", f.horizon},
                         {"grid_step", beam.grid.step},
                         {"grid_size", beam.grid.multiples.size()},
                         {"beam", f.beam},
                         {"quadrature_intervals", f.intervals},
                         {"bisection_tolerance", f.tol}};

  std::cout << "system " << f.system << " (" << sys.size() << " generators, dim " << sys.dim()
            << ")\n";
  std::optional<double> angular, product, singleton;

  if (f.method == "singleton") {
    if (sys.size() != 1) {
      sg::fail(sg::Errc::invalid_input, "--method singleton needs a one-matrix system");
    }
    singleton = sg::lambda_singleton(sys[0]).value();
    report["singleton"] = {{"lambda", *singleton}};
    std::cout << "singleton  lambda = " << sg::format_number(*singleton) << "\n";
  }
  if (want_angular) {
    const auto t0 = std::chrono::steady_clock::now();
    sg::AngularOptions ao;
    ao.intervals = f.intervals;
    ao.tolerance = f.tol;
    try {
      const sg::LyapunovEstimate e = sg::lambda_planar_angular(sys, ao);
      angular = e.value();
      sg::Json a = {{"lambda", *angular}, {"seconds", seconds_since(t0)}};
      if (f.system == "unshifted") {
        const double at_bound = sg::angular_objective(sg::PolarField(sys), cat::log4_over_pi(), ao);
        a["objective_at_bound"] = at_bound;
      }
      report["angular"] = a;
      std::cout << "angular    lambda = " << sg::format_number(*angular) << "\n";
    } catch (const sg::Error& e) {
      if (e.code() != sg::Errc::method_inapplicable || f.method != "both") throw;
      report["angular"] = {{"inapplicable", e.what()}};
      std::cout << "angular    inapplicable: " << e.what() << "\n";
    }
  }
  if (want_product) {
    const auto t0 = std::chrono::steady_clock::now();
    const sg::LyapunovEstimate e = sg::lambda_lower_product_search(sys, f.horizon, beam);
    product = e.lower;
    report["product"] = {{"lower", e.lower},
                         {"witness_pieces", e.witness.size()},
                         {"low_confidence", e.low_confidence},
                         {"seconds", seconds_since(t0)}};
    std::cout << "product    lambda >= " << sg::format_number(*product)
              << (e.low_confidence ? "  (low confidence)" : "") << "\n";
  }

  bool pass = true;
  sg::Json checks = sg::Json::object();
  if (f.system == "unshifted") {
    const double best = angular ? *angular : product.value_or(-INFINITY);
    const bool bound = best >= cat::log4_over_pi() - kBoundSlack;
    checks["bound"] = bound;
    pass = pass && bound;
    std::cout << "bound      log4/pi = " << sg::format_number(cat::log4_over_pi())
              << (bound ? "  satisfied" : "  VIOLATED") << "\n";
  }
  if (angular && product) {
    const double diff = std::abs(*angular - *product);
    const bool agree = diff <= kAgreement;
    checks["difference"] = diff;
    checks["agreement"] = agree;
    pass = pass && agree;
    std::cout << "agreement  |angular - product| = " << sg::format_number(diff)
              << (agree ? "  ok" : "  TOO LARGE") << "\n";
  }
  report["checks"] = checks;
  report["pass"] = pass;
  if (!f.json.empty()) emit(f.json, sg::dump_json(report) + "\n");
  return pass ? 0 : 1;
}

// verify-paper ------------------------------------------------------------

struct VerifyFlags {
  double lambda_offset = 0.0;
  double flatness_horizon = 20.0;
  int flatness_samples = 11;
  double marginal_horizon = 40.0;
  int beam = 64;
  std::string json;
};

struct Item {
  std::string name;
  bool pass = false;
  sg::Json detail = sg::Json::object();
};

std::vector<sg::Mat> hull_samples(const sg::SwitchingSystem& sys, int count) {
  std::mt19937_64 rng(20260101);
  std::exponential_distribution<double> ex(1.0);
  std::vector<sg::Mat> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> w(sys.size());
    double s = 0.0;
    for (double& x : w) s += (x = ex(rng));
    for (double& x : w) x /= s;
    out.push_back(sys.combination(w));
  }
  return out;
}

int run_verify_paper(const VerifyFlags& f) {
  std::vector<Item> items;
  auto record = [&](Item item) {
    std::cout << (item.pass ? "PASS  " : "FAIL  ") << item.name << "  " << item.detail.dump() << "\n";
    std::cout.flush();
    items.push_back(std::move(item));
  };

  const double computed = cat::lambda_star();
  const double lambda = computed + f.lambda_offset;
  {
    Item it{"lambda"};
    it.pass = computed >= cat::log4_over_pi() - kBoundSlack;
    it.detail = {{"computed", computed}, {"offset", f.lambda_offset}, {"used", lambda}};
    record(std::move(it));
  }
  const sg::SwitchingSystem sys_x = cat::system_X(lambda);
  {
    Item it{"algebra_rank"};
    const int rank = sg::algebra_closure_rank(sys_x);
    it.pass = rank == 16;
    it.detail = {{"rank", rank}, {"expected", 16}};
    record(std::move(it));
  }
  {
    Item it{"hurwitz"};
    std::vector<sg::Mat> mats = sys_x.generators();
    for (const sg::Mat& m : hull_samples(sys_x, 50)) mats.push_back(m);
    double worst = -INFINITY;
    bool all = true;
    for (const sg::Mat& m : mats) {
      worst = std::max(worst, sg::spectral_abscissa(m));
      all = all && sg::is_hurwitz(m);
    }
    it.pass = all;
    it.detail = {{"matrices", mats.size()}, {"max_spectral_abscissa", worst}};
    record(std::move(it));
  }
  {
    Item it{"product_identity"};
    const sg::Mat p = sg::expm(cat::B0_unshifted(), std::numbers::pi / 2) *
                      sg::expm(cat::B1_unshifted(), std::numbers::pi / 2);
    sg::Mat q = sg::Mat::identity(2);
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n) {
      q = q * p;
      worst = std::max(worst, std::abs(sg::opnorm(q) / std::pow(4.0, n) - 1.0));
    }
    it.pass = worst <= 1e-9;
    it.detail = {{"max_relative_error", worst}, {"n_max", 10}};
    record(std::move(it));
  }
  {
    Item it{"norm_A_certificate"};
    const sg::ExtremalReport r =
        sg::lambda_upper_extremal(cat::system_A(), [](const sg::Vec& v) { return sg::norm_A(v); }, 0.0, 200);
    it.pass = r.pass;
    it.detail = {{"samples", r.samples}, {"max_increase", r.max_increase}};
    record(std::move(it));
  }
  std::optional<sg::PolarBuild> build;
  {
    Item it{"norm_B_closure"};
    try {
      build = sg::norm_B_build(cat::system_B(lambda));
      it.pass = true;
      it.detail = {{"closure", build->closure}, {"period", build->revolution.period}};
    } catch (const sg::Error& e) {
      if (e.code() != sg::Errc::lambda_inconsistency) throw;
      it.detail = {{"error", e.what()}};
    }
    record(std::move(it));
  }
  {
    Item it{"norm_B_certificate"};
    if (build) {
      const sg::NormFn norm = sg::NormModel::polar(build->table).as_function();
      const sg::ExtremalReport rb = sg::lambda_upper_extremal(cat::system_B(lambda), norm, 0.0, 200);
      const sg::ExtremalReport rb0 = sg::lambda_upper_extremal(cat::system_B0(lambda), norm, 0.0, 200);
      it.pass = rb.pass && rb0.pass;
      it.detail = {{"B_max_increase", rb.max_increase}, {"B0_max_increase", rb0.max_increase}};
    } else {
      it.detail = {{"error", "no polar table"}};
    }
    record(std::move(it));
  }
  {
    Item it{"marginal_stability"};
    sg::BeamOptions o;
    o.beam = f.beam;
    const sg::LyapunovEstimate e = sg::lambda_lower_product_search(sys_x, f.marginal_horizon, o);
    it.pass = std::abs(e.lower) <= 5e-3;
    it.detail = {{"product_lower", e.lower}, {"horizon", f.marginal_horizon}, {"window", 5e-3}};
    if (e.lower > 5e-3) it.detail["diagnosis"] = "growth detected";
    if (e.lower < -5e-3) it.detail["diagnosis"] = "decay detected";
    record(std::move(it));
  }
  {
    Item it{"flatness"};
    if (build) {
      const sg::NormModel n = sg::NormModel::finite_horizon(sys_x, f.flatness_horizon,
                                                            sg::x_norm_budget(build->table, f.beam));
      const sg::FlatnessReport r = sg::flatness_check(n, 1.0, sg::Vec{1.0, 0.0}, f.flatness_samples);
      it.pass = r.max_relative_deviation <= 1e-2;
      it.detail = {{"max_relative_deviation", r.max_relative_deviation},
                   {"reference", r.reference},
                   {"samples", f.flatness_samples},
                   {"horizon", f.flatness_horizon},
                   {"low_confidence", n.low_confidence()}};
    } else {
      it.detail = {{"error", "no polar table"}};
    }
    record(std::move(it));
  }

  sg::Json report;
  report["command"] = "verify-paper";
  report["constants"] = {{"lambda", lambda},
                         {"lambda_offset", f.lambda_offset},
                         {"log4_over_pi", cat::log4_over_pi()},
                         {"beam", f.beam},
                         {"grid_step", std::numbers::pi / 64},
                         {"grid_size", 64},
                         {"marginal_horizon", f.marginal_horizon},
                         {"flatness_horizon", f.flatness_horizon},
                         {"flatness_samples", f.flatness_samples},
                         {"extremal_samples", 200},
                         {"extremal_slack", 1e-9}};
  sg::Json list = sg::Json::array();
  std::vector<std::string> failed;
  for (const Item& it : items) {
    list.push_back({{"name", it.name}, {"status", it.pass ? "PASS" : "FAIL"}, {"detail", it.detail}});
    if (!it.pass) failed.push_back(it.name);
  }
  report["items"] = list;
  report["pass"] = failed.empty();
  if (!f.json.empty()) emit(f.json, sg::dump_json(report) + "\n");
  if (failed.empty()) return 0;
  std::string names;
  for (const std::string& n : failed) names += (names.empty() ? "" : ", ") + n;
  std::cerr << "verify-paper: failed: " << names << "\n";
  return 1;
}

// ball --------------------------------------------------------------------

struct BallFlags {
  std::string system;
  int samples = 3600;
  std::string output;
  std::string format = "csv";
};

int run_ball(const BallFlags& f) {
  if (f.samples < 3) sg::fail(sg::Errc::invalid_input, "--samples must be at least 3");
  std::function<double(double)> radius;
  if (f.system == "A") {
    radius = [](double th) { return 1.0 / sg::norm_A(sg::Vec{std::cos(th), std::sin(th)}); };
  } else if (f.system == "B") {
    auto table = std::make_shared<sg::PolarTable>(sg::norm_B_build(cat::system_B()).table);
    radius = [table](double th) { return table->radius(th); };
  } else {
    const double alpha = sg::cgm_alpha();
    radius = [alpha](double th) {
      return 1.0 / sg::norm_cgm(sg::Vec{std::cos(th), std::sin(th)}, alpha);
    };
  }
  std::ostringstream out;
  if (f.format == "csv") out << "theta,x,y\n";
  else out << "[\n";
  for (int k = 0; k < f.samples; ++k) {
    const double th = 2.0 * std::numbers::pi * k / f.samples;
    const double r = radius(th);
    const double x = r * std::cos(th), y = r * std::sin(th);
    if (f.format == "csv") {
      out << sg::format_number(th) << ',' << sg::format_number(x) << ',' << sg::format_number(y) << '\n';
    } else {
      out << "  [" << sg::format_number(x) << ", " << sg::format_number(y) << ']'
          << (k + 1 < f.samples ? ",\n" : "\n");
    }
  }
  if (f.format == "json") out << "]\n";
  emit(f.output, out.str());
  return 0;
}

// trajectory --------------------------------------------------------------

struct TrajectoryFlags {
  std::string system;
  std::string schedule;
  std::string x0;
  double horizon = 0.0;
  double step = 1e-2;
  std::string output;
};

// Truncates the schedule at the horizon, cycling it when it is shorter.
sg::Schedule fit_to_horizon(const sg::Schedule& s, double horizon) {
  if (s.empty()) sg::fail(sg::Errc::invalid_input, "schedule is empty");
  sg::Schedule out(s.weight_count());
  double t = 0.0;
  for (std::size_t i = 0; t < horizon; i = (i + 1) % s.size()) {
    const double d = std::min(s.duration(i), horizon - t);
    if (d > 0.0) out.append(d, s.weights(i));
    t += s.duration(i);
  }
  return out;
}

int run_trajectory(const TrajectoryFlags& f, bool has_horizon) {
  const sg::SwitchingSystem sys = named_system(f.system, cat::lambda_star());
  const std::vector<double> x = parse_list(f.x0, "--x0");
  if (static_cast<int>(x.size()) != sys.dim()) {
    sg::fail(sg::Errc::dimension, "--x0 has " + std::to_string(x.size()) + " entries, system " +
                                      f.system + " has dimension " + std::to_string(sys.dim()));
  }
  sg::Schedule sched = sg::parse_schedule(sg::read_text_file(f.schedule), sys.size());
  if (has_horizon) {
    if (!(f.horizon > 0.0)) sg::fail(sg::Errc::invalid_input, "--horizon must be positive");
    sched = fit_to_horizon(sched, f.horizon);
  }
  sg::EvolveOptions eo;
  eo.sample_step = f.step;
  const sg::Trajectory traj = sg::evolve(sys, sched, sg::Vec::from(x), eo);
  std::ostringstream out;
  sg::write_trajectory_csv(out, traj);
  emit(f.output, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Switching-system Lyapunov exponents, extremal norms and their checks."};
  app.require_subcommand(1);
  std::function<int()> run;

  LambdaFlags lf;
  auto* lam = app.add_subcommand("compute-lambda", "Estimate the top Lyapunov exponent.");
  lam->add_option("--system", lf.system, "System name")->check(CLI::IsMember(kSystemNames));
  lam->add_option("--method", lf.method, "both, angular, product or singleton")
      ->check(CLI::IsMember({"both", "angular", "product", "singleton"}));
  auto* grid_step = lam->add_option("--grid-step", lf.grid_step, "Duration grid step");
  auto* grid_count = lam->add_option("--grid-count", lf.grid_count, "Number of grid multiples");
  auto* grid = lam->add_option("--grid", lf.grid, "Explicit comma-separated duration grid");
  grid->excludes(grid_step)->excludes(grid_count);
  lam->add_option("--beam", lf.beam, "Beam width");
  lam->add_option("--horizon", lf.horizon, "Product-search horizon");
  lam->add_option("--tol", lf.tol, "Bisection tolerance of the angular method");
  lam->add_option("--intervals", lf.intervals, "Simpson intervals of the angular method");
  lam->add_option("--json", lf.json, "Write the JSON report here ('-' for stdout)");
  lam->callback([&] { run = [&, grid] { return run_compute_lambda(lf, grid->count() > 0); }; });

  VerifyFlags vf;
  auto* ver = app.add_subcommand("verify-paper", "Run the structural checklist for the 4D example.");
  ver->add_option("--lambda-offset", vf.lambda_offset, "Added to the computed exponent");
  ver->add_option("--flatness-horizon", vf.flatness_horizon, "Horizon T of the 4D surrogate norm");
  ver->add_option("--flatness-samples", vf.flatness_samples, "Points on the flat segment");
  ver->add_option("--marginal-horizon", vf.marginal_horizon, "Horizon of the 4D product search");
  ver->add_option("--beam", vf.beam, "Beam width of the 4D searches");
  ver->add_option("--json", vf.json, "Write the JSON report here ('-' for stdout)");
  ver->callback([&] { run = [&] { return run_verify_paper(vf); }; });

  BallFlags bf;
  auto* ball = app.add_subcommand("ball", "Export the unit-ball boundary of a planar norm.");
  ball->add_option("--system", bf.system, "A, B or cgm")->required()->check(CLI::IsMember({"A", "B", "cgm"}));
  ball->add_option("--samples", bf.samples, "Number of boundary angles");
  ball->add_option("--output", bf.output, "Output path ('-' for stdout)")->required();
  ball->add_option("--format", bf.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  ball->callback([&] { run = [&] { return run_ball(bf); }; });

  TrajectoryFlags tf;
  auto* tr = app.add_subcommand("trajectory", "Integrate a schedule file from an initial state.");
  tr->add_option("--system", tf.system, "System name")->required()->check(CLI::IsMember(kSystemNames));
  tr->add_option("--schedule", tf.schedule, "Schedule JSON file")->required();
  tr->add_option("--x0", tf.x0, "Comma-separated initial state")->required();
  auto* horizon = tr->add_option("--horizon", tf.horizon, "Cut or cycle the schedule to this length");
  tr->add_option("--step", tf.step, "Sample spacing inside pieces");
  tr->add_option("--output", tf.output, "Output CSV path ('-' for stdout)")->required();
  tr->callback([&, horizon] { run = [&, horizon] { return run_trajectory(tf, horizon->count() > 0); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }
  try {
    return run();
  } catch (const sg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case sg::Errc::invalid_input:
      case sg::Errc::dimension:
      case sg::Errc::parse:
        return kUsage;
      default:
        return 1;
    }
  }
}
