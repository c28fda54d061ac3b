#include "rpm/reproduce.hpp"

#include <sstream>

namespace rpm {

namespace {

constexpr int kDepth = 15;

BoundOptions options_for(Execution exec) {
  BoundOptions opts;
  opts.execution = exec;
  return opts;
}

Reproduction table1(const PrecisionContext& ctx, Execution exec) {
  constexpr int digits = 40;
  ctx.require_output(digits);
  const BoundTable table = bound_table(PotentialSpec::quartic(mpq_class(1, 10)), StateSelector(0), 2, kDepth, ctx,
                                       options_for(exec));
  Reproduction out{ReproduceTarget::table1, {}, {}};
  for (const auto& ref : reference::tenth_ground_rows) {
    const BoundPair& row = table.rows.at(static_cast<std::size_t>(ref.dimension - 2));
    const std::string d = "D=" + std::to_string(ref.dimension);
    out.entries.push_back({d + " d=0", ref.lower, render_decimal(row.lower.energy, digits)});
    out.entries.push_back({d + " d=1", ref.upper, render_decimal(row.upper.energy, digits)});
  }
  return out;
}

Reproduction table2(const PrecisionContext& ctx, Execution exec) {
  constexpr int digits = 40;
  ctx.require_output(digits);
  const PotentialSpec pot = PotentialSpec::quartic(mpq_class(1, 10));
  const BoundOptions opts = options_for(exec);
  Reproduction out{ReproduceTarget::table2, {}, {}};
  for (const auto& ref : reference::tenth_states) {
    const StateSelector state(ref.n);
    const int d_min = first_isolating_dimension(pot, state, kDepth, ctx, opts);
    const auto [lower, upper] = best_interval(bound_table(pot, state, d_min, kDepth, ctx, opts));
    const std::string n = "n=" + std::to_string(ref.n);
    EntryCheck lo{n + " lower", ref.lower, render_decimal(lower, digits)};
    EntryCheck hi{n + " upper", ref.upper, render_decimal(upper, digits)};
    out.audits.push_back({digit_agreement(Claim{n + " claim", ref.claim}, lo.computed, hi.computed),
                          ref.claim_agreed_digits});
    out.entries.push_back(std::move(lo));
    out.entries.push_back(std::move(hi));
  }
  return out;
}

Reproduction a2(const PrecisionContext& ctx, Execution exec) {
  constexpr int digits = 30;
  ctx.require_output(digits);
  const BoundTable table =
      bound_table(PotentialSpec::quartic(2), StateSelector(0), 2, kDepth, ctx, options_for(exec));
  const auto [lower, upper] = best_interval(table);
  Reproduction out{ReproduceTarget::a2, {}, {}};
  out.entries.push_back({"D=15 lower", reference::two_lower, render_decimal(lower, digits)});
  out.entries.push_back({"D=15 upper", reference::two_upper, render_decimal(upper, digits)});
  out.audits.push_back({digit_agreement(Claim{"13-digit claim", reference::two_claim}, out.entries[0].computed,
                                        out.entries[1].computed),
                        reference::two_claim_digits});
  return out;
}

}  // namespace

ReproduceTarget parse_reproduce_target(std::string_view name) {
  if (name == "table1") return ReproduceTarget::table1;
  if (name == "table2") return ReproduceTarget::table2;
  if (name == "a2") return ReproduceTarget::a2;
  throw ReportError("unknown reproduction target '" + std::string(name) + "' (expected table1, table2 or a2)");
}

std::string_view target_name(ReproduceTarget target) {
  switch (target) {
    case ReproduceTarget::table1:
      return "table1";
    case ReproduceTarget::table2:
      return "table2";
    case ReproduceTarget::a2:
      return "a2";
  }
  return "";
}

bool Reproduction::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass()) return false;
  for (const auto& a : audits)
    if (!a.pass()) return false;
  return true;
}

std::string Reproduction::report() const {
  std::ostringstream out;
  int passed = 0;
  for (const auto& e : entries) {
    passed += e.pass() ? 1 : 0;
    out << (e.pass() ? "PASS " : "FAIL ") << e.label << ' ' << e.computed;
    if (!e.pass()) out << " (expected " << e.expected << ')';
    out << '\n';
  }
  for (const auto& a : audits) {
    passed += a.pass() ? 1 : 0;
    out << (a.pass() ? "PASS " : "FAIL ") << a.verdict.claim.label << " agreed_digits=" << a.verdict.agreed_digits
        << '/' << a.verdict.claimed_digits;
    if (!a.pass()) out << " (expected " << a.expected_digits << ')';
    out << '\n';
  }
  const std::size_t total = entries.size() + audits.size();
  out << target_name(target) << ": " << passed << '/' << total << ' ' << (all_pass() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

Reproduction reproduce(ReproduceTarget target, const PrecisionContext& ctx, Execution exec) {
  switch (target) {
    case ReproduceTarget::table1:
      return table1(ctx, exec);
    case ReproduceTarget::table2:
      return table2(ctx, exec);
    case ReproduceTarget::a2:
      return a2(ctx, exec);
  }
  throw ReportError("unknown reproduction target");
}

}  // namespace rpm
