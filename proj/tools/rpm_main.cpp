// rpm: eigenvalue bounds for even polynomial potentials, reproduction of the
// reference tables, digit audits and AIM checks.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage error,
// 3 numerical failure.

#include "rpm/aim.hpp"
#include "rpm/bounds.hpp"
#include "rpm/report.hpp"
#include "rpm/reproduce.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace rpm;

constexpr int kUsage = 2;
constexpr int kNumerical = 3;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

int default_working_digits() {
  const char* env = std::getenv("RPM_WORKING_DIGITS");
  if (env == nullptr || *env == '\0') return PrecisionContext{}.working_digits;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 100000) throw UsageError("RPM_WORKING_DIGITS must be a positive integer");
  return static_cast<int>(v);
}

PrecisionContext context_for(std::optional<int> working_digits, int output_digits) {
  PrecisionContext ctx;
  ctx.working_digits = working_digits ? *working_digits : default_working_digits();
  try {
    ctx.require_output(output_digits);
  } catch (const NumericError& e) {
    throw UsageError(e.what());
  }
  return ctx;
}

mpq_class parse_rational(const std::string& text) {
  if (text.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw UsageError("malformed rational '" + text + "'");
    q.canonicalize();
    return q;
  }
  try {
    return Decimal::parse(text).exact();
  } catch (const ReportError&) {
    throw UsageError("malformed number '" + text + "'");
  }
}

EnergyWindow parse_window(const std::string& text, const PrecisionContext& ctx) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--window expects <lo>,<hi>");
  try {
    EnergyWindow w{BigReal::parse(text.substr(0, comma), ctx), BigReal::parse(text.substr(comma + 1), ctx)};
    if (!(w.lo < w.hi)) throw UsageError("--window needs lo < hi");
    return w;
  } catch (const NumericError& e) {
    throw UsageError(std::string("--window: ") + e.what());
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << text;
}

struct BoundsArgs {
  std::vector<std::string> coeffs;
  int n = 0;
  std::string dmin = "2";
  int dmax = 15;
  int digits = 40;
  std::optional<int> working_digits;
  std::string format = "plain";
  std::string out;
  std::string window;
  bool serial = false;
};

int run_bounds(const BoundsArgs& a) {
  const PrecisionContext ctx = context_for(a.working_digits, a.digits);
  const TableFormat format = parse_table_format(a.format);
  const PotentialSpec pot = PotentialSpec::parse_terms(a.coeffs);
  if (a.n < 0) throw UsageError("--n must be >= 0");
  const StateSelector state(a.n);
  BoundOptions opts;
  opts.execution = a.serial ? Execution::serial : Execution::parallel;
  if (!a.window.empty()) opts.window = parse_window(a.window, ctx);

  int d_min = 0;
  if (a.dmin == "auto") {
    d_min = first_isolating_dimension(pot, state, a.dmax, ctx, opts);
  } else {
    try {
      std::size_t used = 0;
      d_min = std::stoi(a.dmin, &used);
      if (used != a.dmin.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("--dmin expects an integer or 'auto'");
    }
  }
  if (d_min < 2 || a.dmax < d_min) throw UsageError("need 2 <= dmin <= dmax");
  // Root sequences seeded at a large D converge more slowly than the one
  // continued from the first isolating dimension, so the continuation always
  // starts there (or lower) and --dmin only selects the printed rows. A dmin
  // below the isolating dimension is passed through so the tracking failure
  // names the offending (D, d).
  const int start = std::min(d_min, first_isolating_dimension(pot, state, a.dmax, ctx, opts));
  BoundTable table = bound_table(pot, state, start, a.dmax, ctx, opts);
  std::erase_if(table.rows, [d_min](const BoundPair& r) { return r.dimension < d_min; });
  emit(format_table(table, a.digits, format), a.out);
  return 0;
}

int run_reproduce(const std::string& target, std::optional<int> working_digits, const std::string& out) {
  const ReproduceTarget t = parse_reproduce_target(target);
  const Reproduction r = reproduce(t, context_for(working_digits, 40));
  emit(r.report(), out);
  return r.all_pass() ? 0 : 1;
}

int run_digits(const std::string& claim, const std::string& lower, const std::string& upper) {
  const AuditVerdict v = digit_agreement(claim, lower, upper);
  std::cout << "claim " << v.claim.value << "\ninterval [" << v.lower << ", " << v.upper << "]\n"
            << "agreed_digits " << v.agreed_digits << "\nclaimed_digits " << v.claimed_digits
            << "\ninterval_digits " << v.interval_digits << "\ninside " << (v.inside ? "true" : "false") << '\n';
  return 0;
}

struct AimArgs {
  std::string lambda0 = "0";
  std::string s0 = "1";
  bool harmonic = false;
  std::string x0 = "0";
  int kmax = 10;
  std::string window = "0,20";
  int grid = 200;
  int digits = 20;
  std::optional<int> working_digits;
};

int run_const_check(const AimArgs& a) {
  const PrecisionContext ctx = context_for(a.working_digits, a.digits);
  const mpq_class l0 = parse_rational(a.lambda0);
  const mpq_class s0 = parse_rational(a.s0);
  const QuadraticRoots roots = constant_b_roots(l0, s0, ctx);
  const AimSystem sys = AimSystem::constant(l0, {s0, 0});
  const BigReal energy(ctx);

  BigReal worst(ctx);
  for (const auto& gs : constant_solutions(l0, s0, ctx)) {
    const RealFunction y = [&gs](const BigReal& x) { return general_solution_eval(gs, x); };
    for (int i = -10; i <= 10; ++i) {
      const BigReal x = BigReal(i, ctx) / 10;
      worst = max(worst, ode_residual(sys, y, x, energy, ctx).abs());
    }
  }

  std::ostringstream out;
  if (roots.complex_pair) {
    out << "b = " << render_decimal(roots.real_part, a.digits) << " +/- i " << render_decimal(roots.imag_part, a.digits)
        << '\n';
  } else {
    out << "b_plus " << render_decimal(roots.plus, a.digits) << "\nb_minus " << render_decimal(roots.minus, a.digits)
        << '\n';
  }
  out << "equal_roots " << (roots.equal_roots ? "true" : "false") << "\ncomplex_pair "
      << (roots.complex_pair ? "true" : "false") << "\nmax_residual " << render_decimal(worst, 3) << '\n';
  std::cout << out.str();
  return 0;
}

int run_estimate(const AimArgs& a) {
  const PrecisionContext ctx = context_for(a.working_digits, a.digits);
  const AimSystem sys =
      a.harmonic ? AimSystem::harmonic() : AimSystem::constant(parse_rational(a.lambda0), {parse_rational(a.s0), -1});
  BigReal x0(ctx);
  try {
    x0 = BigReal::parse(a.x0, ctx);
  } catch (const NumericError& e) {
    throw UsageError(std::string("--x0: ") + e.what());
  }
  if (a.kmax < 0 || a.kmax > 120) throw UsageError("--kmax must be in [0, 120]");
  if (a.grid < 8) throw UsageError("--grid must be >= 8");
  AimOptions opts;
  opts.grid = a.grid;

  std::ostringstream out;
  for (const auto& it : aim_estimate(sys, x0, a.kmax, parse_window(a.window, ctx), ctx, opts)) {
    out << "k=" << it.k << ':';
    for (const auto& r : it.roots) out << ' ' << render_decimal(r, a.digits);
    out << '\n';
  }
  std::cout << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riccati-Pade eigenvalue bounds for even polynomial potentials"};
  app.require_subcommand(1);

  BoundsArgs bounds;
  auto* cmd_bounds = app.add_subcommand("bounds", "Lower/upper bound table for one state");
  cmd_bounds->add_option("--coeff", bounds.coeffs, "<even power>=<rational>, repeatable")->required();
  cmd_bounds->add_option("--n", bounds.n, "State index (0 = ground)");
  cmd_bounds->add_option("--dmin", bounds.dmin, "First dimension, or 'auto'");
  cmd_bounds->add_option("--dmax", bounds.dmax, "Last dimension");
  cmd_bounds->add_option("--digits", bounds.digits, "Significant digits in the output");
  cmd_bounds->add_option("--working-digits", bounds.working_digits, "Working precision in decimal digits");
  cmd_bounds->add_option("--format", bounds.format, "plain|csv|json");
  cmd_bounds->add_option("--out", bounds.out, "Output path (default stdout)");
  cmd_bounds->add_option("--window", bounds.window, "Initial search window <lo>,<hi>");
  cmd_bounds->add_flag("--serial", bounds.serial, "Use the serial sampling kernel");

  std::string target;
  std::optional<int> reproduce_wd;
  std::string reproduce_out;
  auto* cmd_reproduce = app.add_subcommand("reproduce", "Recompute and compare reference data");
  cmd_reproduce->add_option("target", target, "table1|table2|a2")->required();
  cmd_reproduce->add_option("--working-digits", reproduce_wd, "Working precision in decimal digits");
  cmd_reproduce->add_option("--out", reproduce_out, "Output path (default stdout)");

  std::string claim, lower, upper;
  auto* cmd_digits = app.add_subcommand("digits", "Digits of a claimed value consistent with [lower, upper]");
  cmd_digits->add_option("claim", claim)->required();
  cmd_digits->add_option("lower", lower)->required();
  cmd_digits->add_option("upper", upper)->required();

  AimArgs aim;
  auto* cmd_aim = app.add_subcommand("aim", "Factorization and iteration checks");
  cmd_aim->require_subcommand(1);
  auto* cmd_const = cmd_aim->add_subcommand("const-check", "Constant-coefficient roots and solution residuals");
  auto* cmd_estimate = cmd_aim->add_subcommand("estimate", "Roots of the AIM termination condition per iteration");
  for (auto* sub : {cmd_const, cmd_estimate}) {
    sub->add_option("--lambda0", aim.lambda0, "Constant lambda0");
    sub->add_option("--digits", aim.digits, "Significant digits in the output");
    sub->add_option("--working-digits", aim.working_digits, "Working precision in decimal digits");
  }
  cmd_const->add_option("--s0", aim.s0, "Constant s0");
  cmd_estimate->add_option("--s0", aim.s0, "c in s0 = c - E");
  cmd_estimate->add_flag("--harmonic", aim.harmonic, "lambda0 = 2x, s0 = 1 - E");
  cmd_estimate->add_option("--x0", aim.x0, "Evaluation point");
  cmd_estimate->add_option("--kmax", aim.kmax, "Iterations");
  cmd_estimate->add_option("--window", aim.window, "Energy window <lo>,<hi>");
  cmd_estimate->add_option("--grid", aim.grid, "Grid cells over the window");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*cmd_bounds) return run_bounds(bounds);
    if (*cmd_reproduce) return run_reproduce(target, reproduce_wd, reproduce_out);
    if (*cmd_digits) return run_digits(claim, lower, upper);
    if (*cmd_const) return run_const_check(aim);
    if (*cmd_estimate) return run_estimate(aim);
  } catch (const UsageError& e) {
    std::cerr << "rpm: " << e.what() << '\n';
    return kUsage;
  } catch (const PotentialError& e) {
    std::cerr << "rpm: " << e.what() << '\n';
    return kUsage;
  } catch (const ReportError& e) {
    std::cerr << "rpm: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "rpm: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
