#include "mzbell/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace mzbell {

namespace {

// Dense operators for the brute-force chain, kept separate from linalg.hpp.
using cd = std::complex<double>;
using Dense2 = std::array<std::array<cd, 2>, 2>;
using Dense4 = std::array<std::array<cd, 4>, 4>;
using Column4 = std::array<cd, 4>;

cd unit_phase(double angle) { return std::exp(cd(0.0, angle)); }

Dense4 kron(const Dense2& a, const Dense2& b) {
  Dense4 out{};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) out[2 * i + j][2 * k + l] = a[i][k] * b[j][l];
  return out;
}

Dense4 matmul(const Dense4& a, const Dense4& b) {
  Dense4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 4; ++k) out[r][c] += a[r][k] * b[k][c];
  return out;
}

Column4 matvec(const Dense4& m, const Column4& v) {
  Column4 out{};
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k) out[r] += m[r][k] * v[k];
  return out;
}

Dense4 scalar4(cd s) {
  Dense4 out{};
  for (int k = 0; k < 4; ++k) out[k][k] = s;
  return out;
}

Dense2 dense_bs() {
  const double h = std::sqrt(0.5);
  return {{{cd(h, 0.0), cd(0.0, h)}, {cd(0.0, h), cd(h, 0.0)}}};
}

Dense2 dense_retarder(double theta) { return {{{unit_phase(theta), 0.0}, {0.0, 1.0}}}; }

Dense2 dense_path_phase(double mu, const ArmIntegrals& arm) {
  return {{{unit_phase(mu * arm.upper), 0.0}, {0.0, unit_phase(-mu * arm.lower)}}};
}

// Left detector pair read mirrored (source-retarder-BS geometry).
Dense4 left_detector_relabel() {
  const Dense2 swap{{{0.0, 1.0}, {1.0, 0.0}}};
  const Dense2 id{{{1.0, 0.0}, {0.0, 1.0}}};
  return kron(swap, id);
}

struct Branch {
  int s_left;
  int s_right;
  Column4 amplitudes;
};

std::array<Branch, 2> singlet_branches() {
  const double h = std::sqrt(0.5);
  return {Branch{+1, -1, {0.0, h, 0.0, 0.0}}, Branch{-1, +1, {0.0, 0.0, -h, 0.0}}};
}

template <typename Mode>
const Mode& require_mode(const std::optional<TopoPhaseSpec>& topo, const char* what) {
  if (!topo || !std::holds_alternative<Mode>(*topo)) {
    throw std::invalid_argument(std::string("brute_force_distribution: ") + what);
  }
  return std::get<Mode>(*topo);
}

// Chain for one branch, rightmost stage applied first.
Dense4 branch_chain(const ScenarioDescriptor& sc, const Branch& br) {
  const Dense4 bs = kron(dense_bs(), dense_bs());
  const Dense4 ret = kron(dense_retarder(sc.theta_left), dense_retarder(sc.theta_right));
  switch (sc.scenario) {
    case Scenario::A: {
      Dense4 topo = scalar4(1.0);
      if (sc.topo) {
        const auto& arms = require_mode<PathIntegralPhase>(sc.topo, "scenario A takes path integrals");
        topo = kron(dense_path_phase(arms.mu, arms.left), dense_path_phase(arms.mu, arms.right));
      }
      return matmul(left_detector_relabel(), matmul(bs, matmul(topo, ret)));
    }
    case Scenario::B:
      if (sc.topo) throw std::invalid_argument("brute_force_distribution: scenario B takes no topological phase");
      return matmul(bs, matmul(ret, bs));
    case Scenario::C: {
      const auto& line = require_mode<SpinConditionedPhase>(sc.topo, "scenario C takes a spin-conditioned phase");
      const cd phase = unit_phase(-br.s_left * line.mu * line.lambda_left) *
                       unit_phase(-br.s_right * line.mu * line.lambda_right);
      return matmul(bs, matmul(scalar4(phase), matmul(ret, bs)));
    }
    case Scenario::AB: {
      const auto& sol = require_mode<SpinIndependentPhase>(sc.topo, "scenario AB takes a flux");
      const cd phase = unit_phase(-2.0 * sol.flux);
      return matmul(bs, matmul(scalar4(phase), matmul(ret, bs)));
    }
  }
  throw std::invalid_argument("brute_force_distribution: unknown scenario");
}

struct RoleIndex {
  std::size_t a, a_prime, b, b_prime;
};

RoleIndex role_index(const RoleAssignment& roles) {
  const auto& s = roles.slots();
  return {static_cast<std::size_t>(s[0]), static_cast<std::size_t>(s[1]), static_cast<std::size_t>(s[2]),
          static_cast<std::size_t>(s[3])};
}

// Incumbent update with the lexicographic tie rule.
bool improves(double s, const std::array<double, 4>& angles, double best_s, const std::array<double, 4>& best_angles) {
  return s > best_s || (s == best_s && angles < best_angles);
}

struct Incumbent {
  double s = -std::numeric_limits<double>::infinity();
  std::array<double, 4> angles{};
};

// One full n^4 scan over per-slot candidate values.
void scan(const std::array<std::vector<double>, 4>& axis, double c, const RoleIndex& ri, Incumbent& best) {
  const std::size_t n = axis[0].size();
  std::array<std::vector<double>, 4> cs, sn;
  for (std::size_t k = 0; k < 4; ++k) {
    cs[k].resize(n);
    sn[k].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      cs[k][j] = std::cos(axis[k][j]);
      sn[k][j] = std::sin(axis[k][j]);
    }
  }
  std::array<std::size_t, 4> idx{};
  std::array<double, 4> cv{}, sv{};
  auto corr = [&](std::size_t x, std::size_t y) { return -cv[x] * cv[y] - sv[x] * sv[y] * c; };
  for (idx[0] = 0; idx[0] < n; ++idx[0]) {
    cv[0] = cs[0][idx[0]];
    sv[0] = sn[0][idx[0]];
    for (idx[1] = 0; idx[1] < n; ++idx[1]) {
      cv[1] = cs[1][idx[1]];
      sv[1] = sn[1][idx[1]];
      for (idx[2] = 0; idx[2] < n; ++idx[2]) {
        cv[2] = cs[2][idx[2]];
        sv[2] = sn[2][idx[2]];
        for (idx[3] = 0; idx[3] < n; ++idx[3]) {
          cv[3] = cs[3][idx[3]];
          sv[3] = sn[3][idx[3]];
          const double s = std::abs(corr(ri.a, ri.b) - corr(ri.a, ri.b_prime)) +
                           std::abs(corr(ri.a_prime, ri.b) + corr(ri.a_prime, ri.b_prime));
          if (s < best.s) continue;
          const std::array<double, 4> angles{axis[0][idx[0]], axis[1][idx[1]], axis[2][idx[2]], axis[3][idx[3]]};
          if (improves(s, angles, best.s, best.angles)) {
            best.s = s;
            best.angles = angles;
          }
        }
      }
    }
  }
}

}  // namespace

DetectionDistribution brute_force_distribution(const ScenarioDescriptor& scenario) {
  Column4 total{};
  for (const auto& br : singlet_branches()) {
    const Column4 out = matvec(branch_chain(scenario, br), br.amplitudes);
    for (int k = 0; k < 4; ++k) total[k] += out[k];
  }
  DetectionDistribution d;
  for (int k = 0; k < 4; ++k) d.p[k] = std::norm(total[k]);
  return d;
}

std::uint64_t GridSpec::evaluations() const {
  const auto n = static_cast<std::uint64_t>(points_per_angle);
  return n * n * n * n * static_cast<std::uint64_t>(refinement_rounds + 1);
}

void GridSpec::validate() const {
  if (points_per_angle < 2) throw std::invalid_argument("GridSpec: points_per_angle must be >= 2");
  if (points_per_angle > 1000) throw std::invalid_argument("GridSpec: points_per_angle must be <= 1000");
  if (refinement_rounds < 0) throw std::invalid_argument("GridSpec: refinement_rounds must be >= 0");
  if (!(shrink_factor > 0.0 && shrink_factor < 1.0))
    throw std::invalid_argument("GridSpec: shrink_factor must lie in (0, 1)");
}

SearchResult grid_search_max_S(double c, const RoleAssignment& roles, const GridSpec& grid) {
  grid.validate();
  if (!(c >= -1.0 && c <= 1.0)) throw std::invalid_argument("grid_search_max_S: c must lie in [-1, 1]");
  const std::uint64_t needed = grid.evaluations();
  if (needed > grid.budget) throw BudgetExceeded(needed, grid.budget);

  const auto n = static_cast<std::size_t>(grid.points_per_angle);
  const RoleIndex ri = role_index(roles);
  constexpr double two_pi = 2.0 * std::numbers::pi;

  SearchResult result;
  Incumbent best;
  std::array<std::vector<double>, 4> axis;
  for (auto& ax : axis) {
    ax.resize(n);
    for (std::size_t j = 0; j < n; ++j) ax[j] = two_pi * static_cast<double>(j) / static_cast<double>(n);
  }
  scan(axis, c, ri, best);
  result.round_best.push_back(best.s);

  double half_width = std::numbers::pi;
  for (int round = 1; round <= grid.refinement_rounds; ++round) {
    half_width *= grid.shrink_factor;
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        const double offset = 2.0 * (static_cast<double>(j) - static_cast<double>(n / 2)) / static_cast<double>(n);
        axis[k][j] = best.angles[k] + half_width * offset;
      }
    }
    scan(axis, c, ri, best);
    result.round_best.push_back(best.s);
  }

  result.best_angles = BellAngles::from_array(best.angles);
  result.best_s = chsh_S(result.best_angles, c, roles);
  result.evaluations = needed;
  return result;
}

SearchResult search_candidates(double c, const RoleAssignment& roles, std::span<const BellAngles> candidates) {
  SearchResult result;
  Incumbent best;
  for (const auto& cand : candidates) {
    const double s = chsh_S(cand, c, roles);
    if (improves(s, cand.as_array(), best.s, best.angles)) {
      best.s = s;
      best.angles = cand.as_array();
    }
  }
  result.best_angles = BellAngles::from_array(best.angles);
  result.best_s = best.s;
  result.evaluations = candidates.size();
  result.round_best.push_back(best.s);
  return result;
}

std::string_view to_string(Stationarity s) {
  switch (s) {
    case Stationarity::Stationary: return "stationary";
    case Stationarity::NotStationary: return "not-stationary";
    case Stationarity::Skipped: return "skipped";
  }
  return "unknown";
}

StationarityReport stationarity_report(const BellAngles& angles, double c, const RoleAssignment& roles, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("stationarity_check: h must be positive");
  StationarityReport report;

  const auto [a, a_prime, b, b_prime] = roles.roles(angles);
  const double first = expectation_closed_form(a, b, c) - expectation_closed_form(a, b_prime, c);
  const double second = expectation_closed_form(a_prime, b, c) + expectation_closed_form(a_prime, b_prime, c);
  const double s0 = std::abs(first) + std::abs(second);
  report.threshold = 10.0 * h * h * std::max(1.0, s0);
  if (std::abs(first) <= 10.0 * h || std::abs(second) <= 10.0 * h) {
    report.outcome = Stationarity::Skipped;
    return report;
  }

  bool all_small = true;
  for (std::size_t k = 0; k < 4; ++k) {
    auto plus = angles.as_array();
    auto minus = plus;
    plus[k] += h;
    minus[k] -= h;
    report.gradient[k] =
        (chsh_S(BellAngles::from_array(plus), c, roles) - chsh_S(BellAngles::from_array(minus), c, roles)) / (2.0 * h);
    all_small = all_small && std::abs(report.gradient[k]) <= report.threshold;
  }
  report.outcome = all_small ? Stationarity::Stationary : Stationarity::NotStationary;
  return report;
}

}  // namespace mzbell
