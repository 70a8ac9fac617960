#include "mzbell/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>

#include "mzbell/chsh.hpp"
#include "mzbell/closed_form.hpp"
#include "mzbell/entangled.hpp"
#include "mzbell/optics.hpp"
#include "mzbell/oracle.hpp"
#include "mzbell/sampling.hpp"

namespace mzbell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTight = 1e-12;
constexpr double kBound = 1e-9;
constexpr double kGrid = 1e-6;

struct Tracker {
  double worst = 0.0;
  std::uint64_t checks = 0;

  void add(double residual) {
    ++checks;
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    worst = std::max(worst, residual);
  }
  void add(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    for (std::size_t k = 0; k < 4; ++k) add(std::abs(a[k] - b[k]));
  }
  void add(const DetectionDistribution& a, const DetectionDistribution& b) { add(a.p, b.p); }
};

std::uint64_t draws(const VerifyOptions& opt, std::uint64_t wanted) { return std::min(wanted, opt.sample_budget); }

double linspace(double lo, double hi, int i, int n) { return lo + (hi - lo) * i / (n - 1); }

using SuiteFn = std::function<Tracker(const VerifyOptions&, sampling::Rng&)>;

struct Suite {
  const char* name;
  double tolerance;
  SuiteFn body;
};

Tracker linalg_unitarity(const VerifyOptions& opt, sampling::Rng& rng) {
  Tracker t;
  for (std::uint64_t n = 0, total = draws(opt, 10'000); n < total; ++n) {
    const auto a = sampling::unitary2(rng), b = sampling::unitary2(rng);
    const auto c = sampling::unitary2(rng), d = sampling::unitary2(rng);
    const auto ab = tensor_product(a, b);
    t.add(unitarity_deviation(a));
    t.add(unitarity_deviation(ab));
    const auto v2 = sampling::vector2(rng);
    const auto v4 = sampling::vector4(rng);
    t.add(std::abs((a * v2).norm() - v2.norm()));
    t.add(std::abs((ab * v4).norm() - v4.norm()));
    t.add(max_abs_difference(ab * tensor_product(c, d), tensor_product(a * c, b * d)));
  }
  return t;
}

Tracker optics_constructors(const VerifyOptions& opt, sampling::Rng& rng) {
  Tracker t;
  const auto bs = beam_splitter();
  t.add(unitarity_deviation(bs));
  for (std::uint64_t n = 0, total = draws(opt, 1'000); n < total; ++n) {
    const double th = sampling::angle(rng), th2 = sampling::angle(rng);
    const double mu = sampling::uniform(rng, -3.0, 3.0);
    const double iu = sampling::uniform(rng, -2.0, 2.0), id = sampling::uniform(rng, -2.0, 2.0);
    t.add(unitarity_deviation(phase_retarder(th)));
    t.add(unitarity_deviation(mach_zehnder(th)));
    t.add(unitarity_deviation(path_phase_operator(iu, id, mu)));

    const auto composed = bs * phase_retarder(th) * bs;
    t.add(max_abs_difference(composed, mach_zehnder_global_factor(th) * mach_zehnder(-th)));
    const auto mz = mach_zehnder(th);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) t.add(std::abs(std::norm(composed(r, c)) - std::norm(mz(r, c))));

    t.add(max_abs_difference(phase_retarder(th) * phase_retarder(th2), phase_retarder(th + th2)));
    t.add(std::abs(spin_loop_phase(Spin::Up, mu, iu) * spin_loop_phase(Spin::Down, mu, iu) - 1.0));

    const auto pp = path_phase_operator(iu, id, mu);
    t.add(std::abs(pp(0, 0) / pp(1, 1) - std::polar(1.0, mu * (iu + id))));

    const auto [up, down] = spin_eigenstates(th);
    t.add(std::abs(inner_product(up, down)));
    t.add(std::abs(up.squared_norm() - 1.0));
    t.add(std::abs(down.squared_norm() - 1.0));
  }
  return t;
}

SpinConditionedPhase random_line(sampling::Rng& rng) {
  return {sampling::uniform(rng, -2.0, 2.0), sampling::uniform(rng, -4.0, 4.0), sampling::uniform(rng, -4.0, 4.0)};
}

PathIntegralPhase random_arms(sampling::Rng& rng) {
  auto u = [&] { return sampling::uniform(rng, -4.0, 4.0); };
  return {sampling::uniform(rng, -2.0, 2.0), {u(), u()}, {u(), u()}};
}

void add_distribution_validity(Tracker& t, const DetectionDistribution& d) {
  t.add(std::abs(d.sum() - 1.0));
  for (double p : d.p) t.add(std::max({0.0, -p, p - 1.0}));
}

Tracker entangled_normalization(const VerifyOptions& opt, sampling::Rng& rng) {
  Tracker t;
  for (std::uint64_t n = 0, total = draws(opt, 10'000); n < total; ++n) {
    const double l = sampling::angle(rng), r = sampling::angle(rng);
    add_distribution_validity(t, run_scenario_A(l, r, TopoPhaseSpec{random_arms(rng)}));
    add_distribution_validity(t, run_scenario_B(l, r));
    add_distribution_validity(t, run_scenario_C(l, r, TopoPhaseSpec{random_line(rng)}));
    add_distribution_validity(
        t, run_scenario_AB(l, r, TopoPhaseSpec{SpinIndependentPhase{sampling::uniform(rng, -10.0, 10.0)}}));
    t.add(std::abs(propagate_scenario_C(l, r, TopoPhaseSpec{random_line(rng)}).total_squared_norm() - 1.0));
  }
  return t;
}

Tracker scenario_a_closed_form(const VerifyOptions& opt, sampling::Rng& rng) {
  Tracker t;
  for (std::uint64_t n = 0, total = draws(opt, 1'000); n < total; ++n) {
    const double l = sampling::angle(rng), r = sampling::angle(rng);
    t.add(run_scenario_A(l, r).p, closed_form::scenario_A(l, r));
  }
  return t;
}

Tracker scenario_b_closed_form(const VerifyOptions&, sampling::Rng&) {
  Tracker t;
  constexpr int n = 100;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double l = linspace(0.0, 2.0 * kPi, i, n), r = linspace(0.0, 2.0 * kPi, j, n);
      t.add(run_scenario_B(l, r).p, closed_form::scenario_B(l, r));
    }
  return t;
}

Tracker scenario_c_closed_form(const VerifyOptions& opt, sampling::Rng&) {
  Tracker t;
  constexpr double mu = 0.7, lambda_right = 0.3;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      for (int k = 0; k < 25; ++k) {
        const double l = linspace(0.0, 2.0 * kPi, i, 20), r = linspace(0.0, 2.0 * kPi, j, 20);
        const double mu_lambda = linspace(0.0, kPi, k, 25);
        const SpinConditionedPhase line{mu, mu_lambda / mu + lambda_right, lambda_right};
        double c = std::cos(2.0 * mu_lambda);
        if (opt.fault == Fault::ScenarioCSign) c = -c;
        t.add(run_scenario_C(l, r, TopoPhaseSpec{line}).p, closed_form::scenario_C(l, r, c));
      }
  return t;
}

Tracker scenario_c_lambda_invariances(const VerifyOptions& opt, sampling::Rng& rng) {
  Tracker t;
  for (std::uint64_t n = 0, total = draws(opt, 1'000); n < total; ++n) {
    const double l = sampling::angle(rng), r = sampling::angle(rng);
    const auto line = random_line(rng);
    const double shift = sampling::uniform(rng, -5.0, 5.0);
    const auto base = run_scenario_C(l, r, TopoPhaseSpec{line});
    const SpinConditionedPhase shifted{line.mu, line.lambda_left + shift, line.lambda_right + shift};
    const SpinConditionedPhase reversed{line.mu, line.lambda_right, line.lambda_left};
    t.add(base, run_scenario_C(l, r, TopoPhaseSpec{shifted}));
    t.add(base, run_scenario_C(l, r, TopoPhaseSpec{reversed}));
  }
  return t;
}

Tracker scenario_a_symmetric_topo(const VerifyOptions& opt, sampling::Rng& rng) {
  Tracker t;
  for (std::uint64_t n = 0, total = draws(opt, 1'000); n < total; ++n) {
    const double l = sampling::angle(rng), r = sampling::angle(rng);
    auto arms = random_arms(rng);
    arms.right = arms.left;
    t.add(run_scenario_A(l, r, TopoPhaseSpec{arms}), run_scenario_A(l, r));
  }
  return t;
}

Tracker scenario_ab_equals_b(const VerifyOptions& opt, sampling::Rng& rng) {
  Tracker t;
  for (std::uint64_t n = 0, total = draws(opt, 1'000); n < total; ++n) {
    const double l = sampling::angle(rng), r = sampling::angle(rng);
    const double flux = sampling::uniform(rng, -10.0, 10.0);
    const auto ab = run_scenario_AB(l, r, TopoPhaseSpec{SpinIndependentPhase{flux}});
    t.add(ab, run_scenario_B(l, r));
    t.add(ab, run_scenario_AB(l, r, TopoPhaseSpec{SpinIndependentPhase{flux + 2.0 * kPi}}));
  }
  return t;
}

Tracker degiorgio_relation(const VerifyOptions& opt, sampling::Rng& rng) {
  Tracker t;
  for (std::uint64_t n = 0, total = draws(opt, 1'000); n < total; ++n) {
    const double l = sampling::angle(rng), r = sampling::angle(rng);
    t.add(std::abs(run_scenario_A(l, r).at(0, 0) - run_scenario_B(l, r).at(1, 0)));
  }
  return t;
}

Tracker chsh_channel_consistency(const VerifyOptions&, sampling::Rng&) {
  Tracker t;
  constexpr double mu = 1.3;
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j)
      for (int k = 0; k < 25; ++k) {
        const double l = linspace(-kPi, kPi, i, 40), r = linspace(-kPi, kPi, j, 40);
        const double mu_lambda = linspace(0.0, kPi, k, 25);
        const auto d = run_scenario_C(l, r, TopoPhaseSpec{SpinConditionedPhase{mu, mu_lambda / mu, 0.0}});
        t.add(std::abs(expectation_from_distribution(d) -
                       expectation_closed_form(l, r, std::cos(2.0 * mu_lambda))));
      }
  return t;
}

Tracker chsh_paper_curve(const VerifyOptions&, sampling::Rng&) {
  Tracker t;
  const auto literal = RoleAssignment::paper_literal();
  for (int k = 0; k < 1000; ++k) {
    const double mu_lambda = linspace(-2.0 * kPi, 2.0 * kPi, k, 1000);
    t.add(std::abs(chsh_S(kPaperAngles, std::cos(2.0 * mu_lambda), literal) - paper_curve_S(mu_lambda)));
    t.add(std::abs(paper_curve_S(mu_lambda + kPi) - paper_curve_S(mu_lambda)));
    t.add(std::abs(paper_curve_S(-mu_lambda) - paper_curve_S(mu_lambda)));
  }
  return t;
}

Tracker chsh_analytic_optimum(const VerifyOptions&, sampling::Rng&) {
  Tracker t;
  const auto standard = RoleAssignment::standard();
  for (int k = 0; k < 1000; ++k) {
    const double mu_lambda = linspace(0.0, kPi, k, 1000);
    const double c = std::cos(2.0 * mu_lambda);
    const double s_opt = chsh_S(analytic_optimal_angles(mu_lambda), c, standard);
    t.add(std::abs(s_opt - max_S(c)));
  }
  return t;
}

Tracker chsh_monotone_bracket(const VerifyOptions&, sampling::Rng&) {
  Tracker t;
  const auto standard = RoleAssignment::standard();
  for (int k = 0; k < 1001; ++k) {
    const double mu_lambda = linspace(0.0, kPi, k, 1001);
    const double c = std::cos(2.0 * mu_lambda);
    const double gap = chsh_S(analytic_optimal_angles(mu_lambda), c, standard) - paper_curve_S(mu_lambda);
    // never below, and touching only where |c| = 1
    t.add(std::max(0.0, -gap - kBound));
    if (std::abs(std::abs(c) - 1.0) < 1e-15) t.add(std::max(0.0, gap - kBound));
    if (std::abs(c) < 0.999) t.add(gap > kBound ? 0.0 : 1.0);
  }
  return t;
}

Tracker chsh_classical_bound(const VerifyOptions& opt, sampling::Rng& rng) {
  Tracker t;
  const auto roles = {RoleAssignment::standard(), RoleAssignment::paper_literal()};
  for (std::uint64_t n = 0, total = draws(opt, 1'000'000); n < total; ++n) {
    const auto angles = sampling::bell_angles(rng);
    for (const auto& r : roles) t.add(std::max(0.0, chsh_S(angles, 0.0, r) - 2.0));
  }
  return t;
}

Tracker chsh_tsirelson(const VerifyOptions& opt, sampling::Rng& rng) {
  Tracker t;
  const auto roles = {RoleAssignment::standard(), RoleAssignment::paper_literal()};
  for (std::uint64_t n = 0, total = draws(opt, 1'000'000); n < total; ++n) {
    const auto angles = sampling::bell_angles(rng);
    const double c = sampling::uniform(rng, -1.0, 1.0);
    for (const auto& r : roles) {
      const double s = chsh_S(angles, c, r);
      t.add(std::max(0.0, s - 2.0 * std::numbers::sqrt2));
      t.add(std::max(0.0, s - max_S(c)));
    }
  }
  return t;
}

Tracker oracle_equivalence(const VerifyOptions& opt, sampling::Rng& rng) {
  Tracker t;
  for (std::uint64_t n = 0, total = draws(opt, 10'000); n < total; ++n) {
    const double l = sampling::angle(rng), r = sampling::angle(rng);
    const TopoPhaseSpec arms{random_arms(rng)};
    const TopoPhaseSpec line{random_line(rng)};
    const TopoPhaseSpec flux{SpinIndependentPhase{sampling::uniform(rng, -10.0, 10.0)}};
    t.add(brute_force_distribution({Scenario::A, l, r, std::nullopt}), run_scenario_A(l, r));
    t.add(brute_force_distribution({Scenario::A, l, r, arms}), run_scenario_A(l, r, arms));
    t.add(brute_force_distribution({Scenario::B, l, r, std::nullopt}), run_scenario_B(l, r));
    t.add(brute_force_distribution({Scenario::C, l, r, line}), run_scenario_C(l, r, line));
    t.add(brute_force_distribution({Scenario::AB, l, r, flux}), run_scenario_AB(l, r, flux));
  }
  return t;
}

Tracker oracle_grid_search(const VerifyOptions&, sampling::Rng&) {
  Tracker t;
  const auto standard = RoleAssignment::standard();
  for (double c : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto res = grid_search_max_S(c, standard);
    t.add(std::abs(res.best_s - max_S(c)));
    t.add(std::abs(res.best_s - chsh_S(res.best_angles, c, standard)));
    for (std::size_t k = 1; k < res.round_best.size(); ++k)
      t.add(std::max(0.0, res.round_best[k - 1] - res.round_best[k]));
    const auto again = grid_search_max_S(c, standard);
    t.add(again.best_angles == res.best_angles && again.best_s == res.best_s ? 0.0 : 1.0);
  }
  t.add(stationarity_check(analytic_optimal_angles(0.0), 1.0, standard, 1e-4) == Stationarity::Stationary ? 0.0
                                                                                                          : 1.0);
  return t;
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  const std::vector<Suite> suites = {
      {"linalg.unitarity_and_norms", kTight, linalg_unitarity},
      {"optics.constructors", kTight, optics_constructors},
      {"entangled.normalization", kTight, entangled_normalization},
      {"entangled.scenario_a_closed_form", kTight, scenario_a_closed_form},
      {"entangled.scenario_b_closed_form", kTight, scenario_b_closed_form},
      {"entangled.scenario_c_closed_form", kTight, scenario_c_closed_form},
      {"entangled.scenario_c_lambda_invariance", kTight, scenario_c_lambda_invariances},
      {"entangled.scenario_a_symmetric_topo", kTight, scenario_a_symmetric_topo},
      {"entangled.scenario_ab_equals_b", kTight, scenario_ab_equals_b},
      {"entangled.degiorgio_relation", kTight, degiorgio_relation},
      {"chsh.channel_consistency", kTight, chsh_channel_consistency},
      {"chsh.paper_curve", kTight, chsh_paper_curve},
      {"chsh.analytic_optimum", kTight, chsh_analytic_optimum},
      {"chsh.monotone_bracket", 0.0, chsh_monotone_bracket},
      {"chsh.classical_bound_c0", kBound, chsh_classical_bound},
      {"chsh.tsirelson_ceiling", kBound, chsh_tsirelson},
      {"oracle.equivalence", kTight, oracle_equivalence},
      {"oracle.grid_search", kGrid, oracle_grid_search},
  };

  std::vector<SuiteResult> results;
  results.reserve(suites.size());
  for (std::size_t i = 0; i < suites.size(); ++i) {
    const auto& suite = suites[i];
    sampling::Rng rng(options.seed + i);
    const auto start = std::chrono::steady_clock::now();
    const Tracker t = suite.body(options, rng);
    const auto stop = std::chrono::steady_clock::now();
    results.push_back({suite.name, t.worst <= suite.tolerance, t.worst, suite.tolerance, t.checks,
                       std::chrono::duration<double>(stop - start).count()});
  }
  return results;
}

void print_results(const std::vector<SuiteResult>& results, std::ostream& out) {
  char line[256];
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%s  %-40s worst_residual=%.3e tol=%.0e checks=%llu (%.2fs)\n",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.worst_residual, r.tolerance,
                  static_cast<unsigned long long>(r.checks), r.seconds);
    out << line;
  }
}

bool all_passed(const std::vector<SuiteResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed; });
}

}  // namespace mzbell
