// Acceptance run: one PASS/FAIL line per criterion, indented detail lines
// underneath. Exit status 0 only when every criterion passes.

#include "rpm/aim.hpp"
#include "rpm/bounds.hpp"
#include "rpm/hankel.hpp"
#include "rpm/reproduce.hpp"
#include "rpm/riccati.hpp"

#include "oracles.hpp"

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace rpm;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back("failed: " + what);
    }
  }
  void note(const std::string& line) { details.push_back(line); }
};

// Last line of a reproduction report: "<target>: k/N PASS|FAIL".
std::string count_line(const Reproduction& r) {
  std::istringstream in(r.report());
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  return last;
}

Outcome entries_outcome(const Reproduction& r) {
  Outcome o;
  int passed = 0;
  for (const auto& e : r.entries) {
    if (e.pass()) {
      ++passed;
    } else {
      o.check(false, e.label + ": expected " + e.expected + ", computed " + e.computed);
    }
  }
  o.note(std::to_string(passed) + "/" + std::to_string(r.entries.size()) + " bound strings match");
  return o;
}

Outcome criterion_table1(const Reproduction& r) { return entries_outcome(r); }

Outcome criterion_table2(const Reproduction& r) { return entries_outcome(r); }

Outcome criterion_a2(const Reproduction& r) {
  Outcome o = entries_outcome(r);
  for (const auto& a : r.audits) {
    o.check(a.pass(), "claim " + a.verdict.claim.value + " agreed_digits " + std::to_string(a.verdict.agreed_digits) +
                          ", expected " + std::to_string(a.expected_digits));
    o.note("claim " + a.verdict.claim.value + ": agreed_digits " + std::to_string(a.verdict.agreed_digits));
  }
  return o;
}

// The AIM strings are audited against the published intervals and against the
// freshly computed ones; both must give the count obtained by comparing the
// printed strings character by character.
Outcome criterion_aim_audit(const Reproduction& table2) {
  Outcome o;
  for (const auto& ref : reference::tenth_states) {
    const int prefix = std::max(oracle::common_prefix_digits(ref.claim, ref.lower),
                                oracle::common_prefix_digits(ref.claim, ref.upper));
    o.check(prefix == ref.claim_agreed_digits,
            "n=" + std::to_string(ref.n) + " printed-prefix count " + std::to_string(prefix));
    const AuditVerdict published = digit_agreement(ref.claim, ref.lower, ref.upper);
    o.check(published.agreed_digits == ref.claim_agreed_digits,
            "n=" + std::to_string(ref.n) + " against the published interval: " +
                std::to_string(published.agreed_digits));
  }
  for (const auto& a : table2.audits) {
    o.check(a.pass(), a.verdict.claim.label + " agreed_digits " + std::to_string(a.verdict.agreed_digits));
    o.note(a.verdict.claim.label + ": " + std::to_string(a.verdict.agreed_digits) + " of " +
           std::to_string(a.verdict.claimed_digits) + " digits consistent");
  }
  return o;
}

BoundTable deepest(const PotentialSpec& pot, int n, const PrecisionContext& ctx) {
  const StateSelector state(n);
  return bound_table(pot, state, first_isolating_dimension(pot, state, 15, ctx), 15, ctx);
}

void property_nesting_and_contraction(Outcome& o, const PrecisionContext& ctx) {
  for (const mpq_class& a : {mpq_class(1, 10), mpq_class(2)}) {
    for (int n = 0; n < 4; ++n) {
      const BoundTable t = deepest(PotentialSpec::quartic(a), n, ctx);
      const std::string where = "A=" + a.get_str() + " n=" + std::to_string(n);
      o.check(!t.rows.empty() && t.rows.back().dimension == 15, "(a) " + where + " reaches D=15");
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        const std::string at = where + " D=" + std::to_string(r.dimension);
        o.check(r.lower.energy < r.upper.energy, "(a) strict interval at " + at);
        if (i == 0) continue;
        const auto& p = t.rows[i - 1];
        o.check(p.lower.energy <= r.lower.energy && r.upper.energy <= p.upper.energy, "(a) nesting at " + at);
        if (a == mpq_class(1, 10) && n == 0 && p.dimension >= 4) {
          o.check(r.width() * 10 <= p.width(), "(b) contraction at " + at);
        }
      }
    }
  }
}

void property_harmonic(Outcome& o, const PrecisionContext& ctx) {
  const PotentialSpec harmonic = PotentialSpec::parse_terms({"2=1"});
  for (int n = 0; n < 4; ++n) {
    const BoundTable t = bound_table(harmonic, StateSelector(n), 2, 15, ctx);
    const BigReal exact(2 * n + 1, ctx);
    for (const auto& r : t.rows) {
      const std::string at = "n=" + std::to_string(n) + " D=" + std::to_string(r.dimension);
      o.check(agreeing_digits(r.lower.energy, exact, 1000) >= ctx.convergence_digits(), "(c) lower " + at);
      o.check(agreeing_digits(r.upper.energy, exact, 1000) >= ctx.convergence_digits(), "(c) upper " + at);
    }
  }
}

void property_elimination(Outcome& o) {
  oracle::Rng rng(4242);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto m = rng.rational_matrix(n);
      o.check(elimination_det(m) == oracle::det_smalloracle(m), "(d) D=" + std::to_string(n));
    }
  }
}

void property_series(Outcome& o, const PrecisionContext& ctx) {
  oracle::Rng rng(77);
  const BigReal tol = BigReal::pow10(-ctx.working_digits + 5, ctx);
  for (const mpq_class& a : {mpq_class(0), mpq_class(1, 10), mpq_class(2)}) {
    const PotentialSpec pot = a == 0 ? PotentialSpec::parse_terms({"2=1"}) : PotentialSpec::quartic(a);
    for (int s = 0; s < 2; ++s) {
      const BigReal e(rng.fraction(0, 1000, 100), ctx);
      for (const auto& r : residual_check(riccati_coefficients(pot, Parity(s), seed(e), 10), pot, 10)) {
        o.check(r.abs() <= tol, "(e) A=" + a.get_str() + " s=" + std::to_string(s));
      }
    }
  }
}

void property_tangents(Outcome& o, const PrecisionContext& ctx) {
  const PotentialSpec pot = PotentialSpec::quartic(mpq_class(1, 10));
  const BigReal h = BigReal::pow10(-ctx.working_digits / 3, ctx);
  const int need = ctx.working_digits / 2;
  for (int j : {0, 5, 12}) {
    const auto fj = [&](const DualReal& e) {
      return riccati_coefficients(pot, Parity(1), e, 12).coeffs[static_cast<std::size_t>(j)];
    };
    const DualCheck c = dual_eval_check(fj, BigReal::parse("1.37", ctx), h);
    o.check(agreeing_digits(c.tangent, c.central_difference, 1000) >= need, "(f) f_" + std::to_string(j));
  }
  for (const auto& [dim, disp] : std::vector<std::pair<int, int>>{{2, 0}, {4, 1}, {8, 0}}) {
    const HankelIndex index(dim, disp);
    const auto hd = [&](const DualReal& e) {
      return hankel_det(riccati_coefficients(pot, Parity(0), e, index.required_count()), index, ctx).value;
    };
    const DualCheck c = dual_eval_check(hd, BigReal::parse("2.3", ctx), h);
    o.check(agreeing_digits(c.tangent, c.central_difference, 1000) >= need,
            "(f) H(D=" + std::to_string(dim) + ", d=" + std::to_string(disp) + ")");
  }
}

void property_general_solution(Outcome& o, const PrecisionContext& ctx) {
  const BigReal tol = BigReal::pow10(-ctx.working_digits / 3 + 4, ctx);
  struct Case {
    const char* name;
    mpq_class lambda0, s0;
  };
  for (const Case& c : {Case{"distinct", 3, 4}, Case{"equal", -2, -1}, Case{"complex", 2, -5}}) {
    const QuadraticRoots roots = constant_b_roots(c.lambda0, c.s0, ctx);
    const bool shape = std::string(c.name) == "distinct" ? !roots.equal_roots && !roots.complex_pair
                       : std::string(c.name) == "equal"  ? roots.equal_roots
                                                         : roots.complex_pair;
    o.check(shape, std::string("(g) ") + c.name + " discriminant classification");
    const AimSystem sys = AimSystem::constant(c.lambda0, {c.s0, 0});
    for (const auto& gs : constant_solutions(c.lambda0, c.s0, ctx)) {
      const RealFunction y = [&gs](const BigReal& t) { return general_solution_eval(gs, t); };
      for (const char* x : {"-0.8", "0", "0.45", "1.3"}) {
        const BigReal r = ode_residual(sys, y, BigReal::parse(x, ctx), BigReal(ctx), ctx);
        o.check(r.abs() < tol, std::string("(g) ") + c.name + " residual at x=" + x);
      }
    }
  }
}

void property_aim_harmonic(Outcome& o, const PrecisionContext& ctx) {
  const auto its = aim_estimate(AimSystem::harmonic(), BigReal(ctx), 10, {BigReal(0, ctx), BigReal(20, ctx)}, ctx);
  const auto& last = its.back();
  for (int n = 0; n < 4; ++n) {
    bool found = false;
    for (const auto& r : last.roots) {
      if (agreeing_digits(r, BigReal(2 * n + 1, ctx), 1000) >= ctx.convergence_digits()) found = true;
    }
    o.check(found, "(h) E=" + std::to_string(2 * n + 1) + " at k=10");
  }
}

Outcome criterion_properties(const PrecisionContext& ctx) {
  Outcome o;
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> parts{
      {"(a)+(b) nesting and contraction", [&](Outcome& x) { property_nesting_and_contraction(x, ctx); }},
      {"(c) harmonic exactness", [&](Outcome& x) { property_harmonic(x, ctx); }},
      {"(d) elimination vs cofactor", [](Outcome& x) { property_elimination(x); }},
      {"(e) series residual", [&](Outcome& x) { property_series(x, ctx); }},
      {"(f) tangents vs central differences", [&](Outcome& x) { property_tangents(x, ctx); }},
      {"(g) general solution residuals", [&](Outcome& x) { property_general_solution(x, ctx); }},
      {"(h) AIM harmonic levels", [&](Outcome& x) { property_aim_harmonic(x, ctx); }},
  };
  for (const auto& [name, run] : parts) {
    Outcome part;
    try {
      run(part);
    } catch (const std::exception& e) {
      part.check(false, std::string("exception: ") + e.what());
    }
    o.note(name + ": " + (part.pass ? "PASS" : "FAIL"));
    for (const auto& d : part.details) o.note("  " + d);
    o.pass = o.pass && part.pass;
  }
  return o;
}

Outcome criterion_stability(const std::vector<Reproduction>& at120, const std::vector<Reproduction>& at180) {
  Outcome o;
  for (std::size_t i = 0; i < at120.size(); ++i) {
    const std::string name(target_name(at120[i].target));
    const bool identical = at120[i].report() == at180[i].report();
    o.check(identical, name + ": reports differ between 120 and 180 digits");
    o.check(at120[i].all_pass() && at180[i].all_pass(), name + ": does not pass at both precisions");
    o.note(name + " at 120: " + count_line(at120[i]) + "; at 180: " + count_line(at180[i]) +
           (identical ? "; identical output" : "; outputs differ"));
  }
  return o;
}

void print(int id, const std::string& name, const Outcome& o) {
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << name << '\n';
  for (const auto& d : o.details) std::cout << "    " << d << '\n';
  std::cout << std::flush;
}

}  // namespace

int main() {
  const PrecisionContext ctx120{120, 20};
  const PrecisionContext ctx180{180, 20};
  bool all = true;
  const auto record = [&all](int id, const std::string& name, const Outcome& o) {
    print(id, name, o);
    all = all && o.pass;
  };

  try {
    std::vector<Reproduction> at120, at180;
    for (const ReproduceTarget t : {ReproduceTarget::table1, ReproduceTarget::table2, ReproduceTarget::a2}) {
      at120.push_back(reproduce(t, ctx120));
      at180.push_back(reproduce(t, ctx180));
    }
    record(1, "ground-state bound table, A = 1/10", criterion_table1(at120[0]));
    record(2, "bounds for n = 0..3 at D = 15, A = 1/10", criterion_table2(at120[1]));
    record(3, "A = 2 bounds and the 13-digit estimate", criterion_a2(at120[2]));
    record(4, "digit audit of the iterative estimates", criterion_aim_audit(at120[1]));
    record(5, "property suite", criterion_properties(ctx120));
    record(6, "precision stability, 120 vs 180 digits", criterion_stability(at120, at180));
  } catch (const std::exception& e) {
    std::cout << "acceptance aborted: " << e.what() << '\n';
    return 1;
  }
  return all ? 0 : 1;
}
