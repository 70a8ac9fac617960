#include "mzbell/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "mzbell/entangled.hpp"
#include "mzbell/verify.hpp"

namespace mzbell::cli {

namespace {

struct Field {
  std::string name;
  std::optional<double> number;  // nullopt -> empty / null
  std::optional<std::string> text;
};

Field num(std::string name, double v) { return {std::move(name), v, std::nullopt}; }
Field opt_num(std::string name, std::optional<double> v) { return {std::move(name), v, std::nullopt}; }
Field str(std::string name, std::string v) { return {std::move(name), std::nullopt, std::move(v)}; }

using Record = std::vector<Field>;

std::string csv_value(const Field& f) {
  if (f.text) return *f.text;
  return f.number ? format_number(*f.number) : std::string();
}

std::string json_value(const Field& f) {
  if (f.text) return "\"" + *f.text + "\"";
  return f.number ? format_number(*f.number) : std::string("null");
}

void write_records(const std::vector<Record>& rows, Format format, std::ostream& out) {
  if (rows.empty()) return;
  if (format == Format::Csv) {
    for (std::size_t k = 0; k < rows.front().size(); ++k) out << (k ? "," : "") << rows.front()[k].name;
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_value(row[k]);
      out << '\n';
    }
    return;
  }
  out << "[\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << "  {";
    for (std::size_t k = 0; k < rows[r].size(); ++k)
      out << (k ? ", " : "") << '"' << rows[r][k].name << "\": " << json_value(rows[r][k]);
    out << (r + 1 < rows.size() ? "},\n" : "}\n");
  }
  out << "]\n";
}

const std::map<std::string, Format> kFormats{{"csv", Format::Csv}, {"json", Format::Json}};

RoleAssignment roles_from(const std::string& name) {
  return name == "paper-literal" ? RoleAssignment::paper_literal() : RoleAssignment::standard();
}

CLI::Validator angle_validator() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          parse_angle(s);
          return {};
        } catch (const std::invalid_argument& e) {
          return e.what();
        }
      },
      "ANGLE");
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Options for simulate.
struct SimulateArgs {
  std::string scenario;
  std::string theta_l = "0", theta_r = "0";
  double mu = 0.0, lambda_l = 0.0, lambda_r = 0.0, flux = 0.0;
  double i_u_l = 0.0, i_d_l = 0.0, i_u_r = 0.0, i_d_r = 0.0;
  std::optional<std::string> theta_lp, theta_rp;
  std::string roles = "standard";
  std::string format = "csv";
};

int cmd_simulate(const SimulateArgs& a, const CLI::App& sub, std::ostream& out) {
  auto given = [&](const char* flag) { return sub.count(flag) > 0; };
  auto reject = [&](std::initializer_list<const char*> flags) {
    for (const char* f : flags)
      if (given(f)) throw UsageError(std::string(f) + " is not valid for scenario " + a.scenario);
  };
  const double theta_l = parse_angle(a.theta_l);
  const double theta_r = parse_angle(a.theta_r);
  if (a.theta_lp.has_value() != a.theta_rp.has_value())
    throw UsageError(a.theta_lp ? "--theta-rp is required with --theta-lp" : "--theta-lp is required with --theta-rp");
  if (given("--roles") && !a.theta_lp) throw UsageError("--roles needs --theta-lp and --theta-rp");

  std::function<DetectionDistribution(double, double)> run_at;
  std::optional<double> mu_lambda;
  if (a.scenario == "A") {
    reject({"--lambda-l", "--lambda-r", "--flux"});
    const bool any_arm = given("--i-u-l") || given("--i-d-l") || given("--i-u-r") || given("--i-d-r");
    if (any_arm && !given("--mu")) throw UsageError("--mu is required with path integrals for scenario A");
    if (given("--mu") && !any_arm) throw UsageError("--mu needs at least one of --i-u-l/--i-d-l/--i-u-r/--i-d-r");
    std::optional<TopoPhaseSpec> topo;
    if (any_arm) topo = PathIntegralPhase{a.mu, {a.i_u_l, a.i_d_l}, {a.i_u_r, a.i_d_r}};
    run_at = [topo](double l, double r) { return run_scenario_A(l, r, topo); };
  } else if (a.scenario == "B") {
    reject({"--mu", "--lambda-l", "--lambda-r", "--flux", "--i-u-l", "--i-d-l", "--i-u-r", "--i-d-r"});
    run_at = [](double l, double r) { return run_scenario_B(l, r); };
  } else if (a.scenario == "C") {
    reject({"--flux", "--i-u-l", "--i-d-l", "--i-u-r", "--i-d-r"});
    if (!given("--mu")) throw UsageError("--mu is required for scenario C");
    const SpinConditionedPhase topo{a.mu, a.lambda_l, a.lambda_r};
    run_at = [topo](double l, double r) { return run_scenario_C(l, r, topo); };
    mu_lambda = a.mu * (a.lambda_l - a.lambda_r);
  } else {
    reject({"--mu", "--lambda-l", "--lambda-r", "--i-u-l", "--i-d-l", "--i-u-r", "--i-d-r"});
    if (!given("--flux")) throw UsageError("--flux is required for scenario AB");
    const SpinIndependentPhase topo{a.flux};
    run_at = [topo](double l, double r) { return run_scenario_AB(l, r, topo); };
  }

  const DetectionDistribution dist = run_at(theta_l, theta_r);
  Record record{str("scenario", a.scenario), num("theta_l", theta_l), num("theta_r", theta_r),
                opt_num("mu_lambda", mu_lambda), num("p00", dist.p[0]), num("p01", dist.p[1]),
                num("p10", dist.p[2]), num("p11", dist.p[3]),
                num("expectation", expectation_from_distribution(dist)),
                num("norm_residual", std::abs(dist.sum() - 1.0))};
  if (a.theta_lp) {
    // S from four simulated distributions rather than the closed form.
    const BellAngles angles{theta_l, theta_r, parse_angle(*a.theta_lp), parse_angle(*a.theta_rp)};
    const auto roles = roles_from(a.roles);
    const auto [x, xp, y, yp] = roles.roles(angles);
    auto e = [&](double l, double r) { return expectation_from_distribution(run_at(l, r)); };
    record.push_back(num("theta_lp", angles.theta_lp));
    record.push_back(num("theta_rp", angles.theta_rp));
    record.push_back(str("roles", std::string(roles.name())));
    record.push_back(num("s", std::abs(e(x, y) - e(x, yp)) + std::abs(e(xp, y) + e(xp, yp))));
  }
  write_records({record}, kFormats.at(a.format), out);
  return kExitOk;
}

struct SweepArgs {
  std::string min = "0", max = "3.141592653589793";
  int points = 101;
  std::string roles = "standard";
  std::string format = "csv";
  std::uint64_t budget = 1'000'000'000;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.mu_lambda_min = parse_angle(a.min);
  spec.mu_lambda_max = parse_angle(a.max);
  spec.points = a.points;
  spec.roles = roles_from(a.roles);
  spec.budget = a.budget;
  const auto records = compute_sweep(spec);
  write_sweep(records, kFormats.at(a.format), out);

  bool ok = true;
  for (const auto& r : records) {
    if (r.s_max_grid > r.s_max_analytic + 1e-6 || r.s_paper > r.s_max_grid + 1e-6) {
      err << "error: sweep invariant violated at mu_lambda=" << format_number(r.mu_lambda) << '\n';
      ok = false;
    }
  }
  return ok ? kExitOk : kExitFailure;
}

struct OptimizeArgs {
  std::optional<std::string> mu_lambda;
  double mu = 1.0, lambda_l = 0.0, lambda_r = 0.0;
  std::string method = "analytic";
  std::string roles = "standard";
  std::string format = "csv";
  int points = 24;
  std::uint64_t budget = GridSpec{}.budget;
};

int cmd_optimize(const OptimizeArgs& a, const CLI::App& sub, std::ostream& out) {
  const bool from_parts = sub.count("--mu") || sub.count("--lambda-l") || sub.count("--lambda-r");
  if (a.mu_lambda && from_parts) throw UsageError("--mu-lambda cannot be combined with --mu/--lambda-l/--lambda-r");
  const double mu_lambda = a.mu_lambda ? parse_angle(*a.mu_lambda) : a.mu * (a.lambda_l - a.lambda_r);
  const double c = std::cos(2.0 * mu_lambda);
  const auto roles = roles_from(a.roles);

  BellAngles angles;
  double s = 0.0;
  std::uint64_t evaluations = 0;
  if (a.method == "analytic") {
    angles = analytic_optimal_angles(mu_lambda, roles);
    s = chsh_S(angles, c, roles);
  } else {
    GridSpec grid;
    grid.points_per_angle = a.points;
    grid.budget = a.budget;
    const auto res = grid_search_max_S(c, roles, grid);
    angles = res.best_angles;
    s = res.best_s;
    evaluations = res.evaluations;
  }
  write_records({{num("mu_lambda", mu_lambda), num("c", c), str("method", a.method),
                  str("roles", std::string(roles.name())), num("theta_l", angles.theta_l),
                  num("theta_r", angles.theta_r), num("theta_lp", angles.theta_lp), num("theta_rp", angles.theta_rp),
                  num("s", s), num("evaluations", static_cast<double>(evaluations))}},
                kFormats.at(a.format), out);
  return kExitOk;
}

struct VerifyArgs {
  std::uint64_t budget = VerifyOptions{}.sample_budget;
  std::string fault = "none";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyOptions opt;
  opt.sample_budget = a.budget;
  opt.fault = a.fault == "scenario-c-sign" ? Fault::ScenarioCSign : Fault::None;
  const auto results = run_verification(opt);
  print_results(results, out);
  const bool ok = all_passed(results);
  out << (ok ? "verify: all suites passed\n" : "verify: FAILED\n");
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

double parse_angle(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view body = trim(text);
  bool degrees = false;
  for (std::string_view suffix : {"deg", "\u00b0", "d"}) {
    if (body.size() > suffix.size() && body.substr(body.size() - suffix.size()) == suffix) {
      body.remove_suffix(suffix.size());
      degrees = true;
      break;
    }
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || ptr != body.data() + body.size() || body.empty() || !std::isfinite(value)) {
    throw std::invalid_argument("not an angle: '" + std::string(text) + "'");
  }
  return degrees ? value * std::numbers::pi / 180.0 : value;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::vector<SweepRecord> compute_sweep(const SweepSpec& spec) {
  if (!(spec.mu_lambda_min < spec.mu_lambda_max)) throw std::invalid_argument("sweep: --min must be below --max");
  if (spec.points < 2) throw std::invalid_argument("sweep: --points must be at least 2");
  spec.grid.validate();
  const auto needed = static_cast<std::uint64_t>(spec.points) * spec.grid.evaluations();
  if (needed > spec.budget) throw BudgetExceeded(needed, spec.budget);

  std::vector<SweepRecord> out;
  out.reserve(static_cast<std::size_t>(spec.points));
  for (int k = 0; k < spec.points; ++k) {
    const double t = static_cast<double>(k) / (spec.points - 1);
    const double mu_lambda = spec.mu_lambda_min + (spec.mu_lambda_max - spec.mu_lambda_min) * t;
    const double c = std::cos(2.0 * mu_lambda);
    out.push_back({mu_lambda, c, paper_curve_S(mu_lambda), max_S(c), grid_search_max_S(c, spec.roles, spec.grid).best_s,
                   std::atan(c)});
  }
  return out;
}

void write_sweep(const std::vector<SweepRecord>& records, Format format, std::ostream& out) {
  std::vector<Record> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    rows.push_back({num("mu_lambda", r.mu_lambda), num("c", r.c), num("s_paper", r.s_paper),
                    num("s_max_analytic", r.s_max_analytic), num("s_max_grid", r.s_max_grid),
                    num("theta_R_opt", r.theta_R_opt)});
  }
  if (rows.empty()) {
    if (format == Format::Csv) out << kSweepColumns << '\n';
    else out << "[\n]\n";
    return;
  }
  write_records(rows, format, out);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entangled two-quanton Mach-Zehnder simulator and CHSH analysis", "mzbell"};
  app.require_subcommand(1);

  const auto formats = CLI::IsMember({"csv", "json"});
  const auto roles = CLI::IsMember({"paper-literal", "standard"});

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run one interferometer scenario");
  simulate->add_option("--scenario", sim.scenario, "A, B, C or AB")->required()->check(CLI::IsMember({"A", "B", "C", "AB"}));
  simulate->add_option("--theta-l", sim.theta_l, "Left retarder phase")->check(angle_validator());
  simulate->add_option("--theta-r", sim.theta_r, "Right retarder phase")->check(angle_validator());
  simulate->add_option("--mu", sim.mu, "Dipole magnitude (C) or path-integral scale (A)");
  simulate->add_option("--lambda-l", sim.lambda_l, "Left loop integral (C)");
  simulate->add_option("--lambda-r", sim.lambda_r, "Right loop integral (C)");
  simulate->add_option("--flux", sim.flux, "Enclosed flux phase, charge folded in (AB)");
  simulate->add_option("--i-u-l", sim.i_u_l, "Left upper-arm integral (A)");
  simulate->add_option("--i-d-l", sim.i_d_l, "Left lower-arm integral (A)");
  simulate->add_option("--i-u-r", sim.i_u_r, "Right upper-arm integral (A)");
  simulate->add_option("--i-d-r", sim.i_d_r, "Right lower-arm integral (A)");
  simulate->add_option("--theta-lp", sim.theta_lp, "Second left setting, enables S")->check(angle_validator());
  simulate->add_option("--theta-rp", sim.theta_rp, "Second right setting, enables S")->check(angle_validator());
  simulate->add_option("--roles", sim.roles)->check(roles);
  simulate->add_option("--format", sim.format)->check(formats);

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Tabulate maximal S against mu*lambda");
  sweep->add_option("--min", sw.min, "Smallest mu*lambda")->check(angle_validator());
  sweep->add_option("--max", sw.max, "Largest mu*lambda")->check(angle_validator());
  sweep->add_option("--points", sw.points, "Number of sweep points (>= 2)");
  sweep->add_option("--roles", sw.roles)->check(roles);
  sweep->add_option("--format", sw.format)->check(formats);
  sweep->add_option("--budget", sw.budget, "Total objective evaluations allowed");

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Maximize S at one mu*lambda");
  optimize->add_option("--mu-lambda", opt.mu_lambda, "Phase product mu*lambda")->check(angle_validator());
  optimize->add_option("--mu", opt.mu);
  optimize->add_option("--lambda-l", opt.lambda_l);
  optimize->add_option("--lambda-r", opt.lambda_r);
  optimize->add_option("--method", opt.method)->check(CLI::IsMember({"analytic", "grid"}));
  optimize->add_option("--roles", opt.roles)->check(roles);
  optimize->add_option("--points", opt.points, "Grid points per angle");
  optimize->add_option("--budget", opt.budget, "Grid evaluations allowed");
  optimize->add_option("--format", opt.format)->check(formats);

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--budget", ver.budget, "Random draws per suite");
  verify->add_option("--inject-fault", ver.fault)->check(CLI::IsMember({"none", "scenario-c-sign"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim, *simulate, out);
    if (*sweep) return cmd_sweep(sw, out, err);
    if (*optimize) return cmd_optimize(opt, *optimize, out);
    if (*verify) return cmd_verify(ver, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: --budget: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mzbell::cli
