#include "rpm/bounds.hpp"

#include "rpm/spectrum.hpp"

#include <limits>

namespace rpm {

namespace {

// Raised internally when a continuation step breaks the nesting
// lower(D) <= lower(D+1) <= upper(D+1) <= upper(D).
class NestingViolation : public TrackingError {
 public:
  using TrackingError::TrackingError;
};

std::vector<RootResult> all_roots(const Evaluator& f, const EnergyWindow& window, int grid,
                                  const PrecisionContext& ctx, Execution exec) {
  const auto samples = sample_grid(f, window.lo, window.hi, grid, exec);
  std::vector<RootResult> roots;
  for (const auto& b : brackets_from_samples(f, samples, ctx)) roots.push_back(refine_bracket(f, b, ctx));
  return roots;
}

struct Identification {
  double estimate;
  double below;  // neighbouring levels of the same parity
  double above;
  double slack;
};

Identification identify(const PotentialSpec& pot, const StateSelector& state) {
  const CoarseSpectrum spectrum(pot, state.parity(), state.branch() + 2);
  const int m = state.branch();
  const double e = spectrum.level(m);
  return {e, m > 0 ? spectrum.level(m - 1) : -std::numeric_limits<double>::infinity(), spectrum.level(m + 1),
          1e-4 * std::max(1.0, std::abs(e))};
}

struct Seed {
  RootEstimate lower;
  RootEstimate upper;
};

// Root pair at dimension D enclosing the estimate and no neighbouring level.
std::optional<Seed> seed_pair(const PotentialSpec& pot, const StateSelector& state, int dimension,
                              const Identification& id, const PrecisionContext& ctx, const BoundOptions& opts) {
  const EnergyWindow window = opts.window ? *opts.window : default_window(pot, state, ctx);
  std::optional<RootResult> lower, upper;
  for (int d = 0; d < 2; ++d) {
    const HankelIndex index(dimension, d);
    const auto f = hankel_evaluator(pot, state.parity(), index, ctx);
    for (auto& r : all_roots(f, window, opts.initial_grid, ctx, opts.execution)) {
      const double x = r.energy.to_double();
      if (d == 0 && x <= id.estimate + id.slack && (!lower || lower->energy < r.energy)) lower = r;
      if (d == 1 && x >= id.estimate - id.slack && (!upper || r.energy < upper->energy)) upper = r;
    }
  }
  if (!lower || !upper) return std::nullopt;
  // Coincident bounds (exactly solvable cases) may cross by rounding.
  const BigReal tie = BigReal::pow10(-ctx.convergence_digits(), ctx) * max(upper->energy.abs(), upper->energy.constant(1));
  if (upper->energy + tie < lower->energy) return std::nullopt;
  if (lower->energy.to_double() <= id.below + id.slack || upper->energy.to_double() >= id.above - id.slack) {
    return std::nullopt;
  }
  return Seed{{HankelIndex(dimension, 0), lower->energy, lower->converged, lower->steps},
              {HankelIndex(dimension, 1), upper->energy, upper->converged, upper->steps}};
}

// One continuation step for one chain: roots of H_D^d inside a window of
// half-width `half` around `center`, restricted to [allowed_lo, allowed_hi].
RootEstimate track(const PotentialSpec& pot, const StateSelector& state, HankelIndex index, const BigReal& center,
                   const BigReal& half, const BigReal& allowed_lo, const BigReal& allowed_hi,
                   const PrecisionContext& ctx, const BoundOptions& opts) {
  const auto f = hankel_evaluator(pot, state.parity(), index, ctx);
  const EnergyWindow window{center - half, center + half};
  const BigReal slack = BigReal::pow10(-ctx.convergence_digits(), ctx) * max(center.abs(), center.constant(1));

  // Root did not move (exactly solvable cases, where it also has high order).
  if (const Sample at = f(center); at.near_zero || at.value.primal.is_zero()) return {index, center, true, 0};

  int grid = opts.continuation_grid;
  for (int attempt = 0; attempt < 2; ++attempt, grid *= 4) {
    const auto samples = sample_grid(f, window.lo, window.hi, grid, opts.execution);
    const auto brackets = brackets_from_samples(f, samples, ctx);
    std::optional<RootEstimate> best;
    BigReal best_distance = center.constant(0);
    bool any = false;
    for (const auto& b : brackets) {
      const RootResult r = refine_bracket(f, b, ctx);
      any = true;
      if (r.energy < allowed_lo - slack || allowed_hi + slack < r.energy) continue;
      BigReal distance = (r.energy - center).abs();
      if (!best || distance < best_distance) {
        best = RootEstimate{index, r.energy, r.converged, r.steps};
        best_distance = std::move(distance);
      }
    }
    if (best) return *best;
    if (any) throw NestingViolation("continuation found only roots outside the previous interval", index);
  }
  // A window that is itself below the convergence tolerance cannot move the
  // estimate: the root is the center to working precision (high-order roots
  // of collapsed intervals end up here).
  if (half <= slack) return {index, center, true, 0};
  throw TrackingError("lost root during continuation", index);
}

BoundTable build_table(const PotentialSpec& pot, const StateSelector& state, int d_min, int d_max,
                       const PrecisionContext& ctx, const BoundOptions& opts) {
  const Identification id = identify(pot, state);
  auto seed = seed_pair(pot, state, d_min, id, ctx, opts);
  if (!seed) {
    throw TrackingError("state n=" + std::to_string(state.n()) +
                            " is not isolated by a root pair at this dimension; try a larger D_min",
                        HankelIndex(d_min, 0));
  }

  BoundTable table{pot, state, ctx, {}};
  table.rows.push_back({d_min, std::move(seed->lower), std::move(seed->upper)});
  for (int dim = d_min + 1; dim <= d_max; ++dim) {
    const BoundPair& prev = table.rows.back();
    const BigReal& lo = prev.lower.energy;
    const BigReal& hi = prev.upper.energy;
    const BigReal floor =
        BigReal::pow10(-ctx.working_digits + ctx.guard_digits, ctx) * max(hi.abs(), hi.constant(1));
    const BigReal half = max(prev.width() * 2, floor / 2);

    RootEstimate lower = track(pot, state, HankelIndex(dim, 0), lo, half, lo, hi, ctx, opts);
    RootEstimate upper = track(pot, state, HankelIndex(dim, 1), hi, half, lo, hi, ctx, opts);
    const BigReal tie = BigReal::pow10(-ctx.convergence_digits(), ctx) * max(hi.abs(), hi.constant(1));
    if (upper.energy + tie < lower.energy) {
      throw NestingViolation("lower bound above upper bound", HankelIndex(dim, 1));
    }
    table.rows.push_back({dim, std::move(lower), std::move(upper)});
  }
  return table;
}

}  // namespace

StateSelector::StateSelector(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("state index must be non-negative");
}

EnergyWindow default_window(const PotentialSpec& pot, const StateSelector& state, const PrecisionContext& ctx) {
  const mpq_class v0 = pot.coefficient(0);
  const mpq_class top = pot.top_coefficient() > 1 ? pot.top_coefficient() : mpq_class(1);
  const mpq_class hi = v0 + 10 * (state.n() + 1) * top;
  return {BigReal(v0, ctx), BigReal(hi, ctx)};
}

Evaluator hankel_evaluator(const PotentialSpec& pot, Parity parity, HankelIndex index,
                           const PrecisionContext& ctx) {
  return [pot, parity, index, ctx](const BigReal& energy) {
    HankelValue h = hankel_at(pot, parity, index, energy, ctx);
    return Sample{energy, std::move(h.value), h.near_zero};
  };
}

std::vector<Bracket> bracket_roots(const PotentialSpec& pot, const StateSelector& state, HankelIndex index,
                                   const EnergyWindow& window, int grid, const PrecisionContext& ctx,
                                   Execution exec) {
  if (!(window.lo < window.hi)) throw std::invalid_argument("bracket_roots: window must satisfy lo < hi");
  if (grid < 8) throw std::invalid_argument("bracket_roots: grid must be >= 8");
  const auto f = hankel_evaluator(pot, state.parity(), index, ctx);
  return brackets_from_samples(f, sample_grid(f, window.lo, window.hi, grid, exec), ctx);
}

RootEstimate refine_root(const PotentialSpec& pot, const StateSelector& state, HankelIndex index,
                         const Bracket& bracket, const PrecisionContext& ctx) {
  const auto f = hankel_evaluator(pot, state.parity(), index, ctx);
  const RootResult r = refine_bracket(f, bracket, ctx);
  return {index, r.energy, r.converged, r.steps};
}

BoundTable bound_table(const PotentialSpec& pot, const StateSelector& state, int d_min, int d_max,
                       const PrecisionContext& ctx, const BoundOptions& opts) {
  if (d_min < 2 || d_max < d_min) throw std::invalid_argument("bound_table: need 2 <= D_min <= D_max");
  try {
    return build_table(pot, state, d_min, d_max, ctx, opts);
  } catch (const NestingViolation&) {
    try {
      return build_table(pot, state, d_min, d_max, ctx.doubled(), opts);
    } catch (const NestingViolation& again) {
      throw TrackingError(std::string("bounds not nested even at doubled precision: ") + again.what(),
                          again.index);
    }
  }
}

int first_isolating_dimension(const PotentialSpec& pot, const StateSelector& state, int d_max,
                              const PrecisionContext& ctx, const BoundOptions& opts) {
  const Identification id = identify(pot, state);
  for (int dim = 2; dim <= d_max; ++dim) {
    if (seed_pair(pot, state, dim, id, ctx, opts)) return dim;
  }
  throw TrackingError("state n=" + std::to_string(state.n()) + " not isolated for any D <= D_max",
                      HankelIndex(d_max, 0));
}

std::pair<BigReal, BigReal> best_interval(const BoundTable& table) {
  if (table.rows.empty()) throw std::invalid_argument("best_interval: empty table");
  return {table.rows.back().lower.energy, table.rows.back().upper.energy};
}

}  // namespace rpm
