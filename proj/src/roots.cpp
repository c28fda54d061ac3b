#include "rpm/roots.hpp"

#include <exception>
#include <mutex>

namespace rpm {

namespace {

BigReal grid_point(const BigReal& lo, const BigReal& hi, int k, int grid) {
  if (k == 0) return lo;
  if (k == grid) return hi;
  return lo + (hi - lo) * static_cast<long>(k) / static_cast<long>(grid);
}

// |a - b| <= 10^-cd * max(|a|, |b|), plus an absolute floor of 10^-wd.
bool agree(const BigReal& a, const BigReal& b, const PrecisionContext& ctx) {
  const BigReal tol = BigReal::pow10(-ctx.convergence_digits(), ctx) * max(a.abs(), b.abs()) +
                      BigReal::pow10(-ctx.working_digits, ctx);
  return (a - b).abs() <= tol;
}

BigReal midpoint(const BigReal& a, const BigReal& b) { return (a + b) / 2; }

bool strictly_inside(const BigReal& x, const BigReal& a, const BigReal& b) {
  return (a < x && x < b) || (b < x && x < a);
}

// Locates the extremum between two same-signed samples whose derivatives
// disagree in sign. Appends zero, one (exact) or two brackets.
void split_at_extremum(const Evaluator& f, const Sample& left, const Sample& right,
                       const PrecisionContext& ctx, std::vector<Bracket>& out) {
  const int base = sign_of(left.value);
  BigReal x0 = left.energy, x1 = right.energy;
  BigReal t0 = left.value.tangent, t1 = right.value.tangent;
  int last_side = 0;
  std::optional<Sample> best;
  for (int step = 0; step < 400; ++step) {
    BigReal x = x1 - t1 * (x1 - x0) / (t1 - t0);
    if (!x.is_finite() || !strictly_inside(x, x0, x1)) x = midpoint(x0, x1);
    Sample s = f(x);
    if (s.near_zero) {
      out.push_back({s.energy, s.energy, true});
      return;
    }
    if (sign_of(s.value) != base) {
      out.push_back({left.energy, s.energy, false});
      out.push_back({s.energy, right.energy, false});
      return;
    }
    if (!best || s.value.primal.abs() < best->value.primal.abs()) best = s;
    const int ts = s.value.tangent.sign();
    if (ts == 0) break;
    if (ts == t0.sign()) {
      x0 = x;
      t0 = s.value.tangent;
      if (last_side == -1) t1 /= 2;  // Illinois
      last_side = -1;
    } else {
      x1 = x;
      t1 = s.value.tangent;
      if (last_side == 1) t0 /= 2;
      last_side = 1;
    }
    if (agree(x0, x1, ctx)) break;
  }
  if (!best) return;
  // Touching root: the extremum value collapses far below the cell's values.
  const BigReal ref = min(left.value.primal.abs(), right.value.primal.abs());
  if (best->value.primal.abs() <= BigReal::pow10(-ctx.working_digits / 2, ctx) * ref) {
    out.push_back({best->energy, best->energy, true});
  }
}

}  // namespace

std::vector<Sample> sample_grid(const Evaluator& f, const BigReal& lo, const BigReal& hi, int grid,
                                Execution exec) {
  if (!(lo < hi)) throw std::invalid_argument("sample_grid: empty window");
  if (grid < 1) throw std::invalid_argument("sample_grid: grid must be positive");
  std::vector<std::optional<Sample>> slots(static_cast<std::size_t>(grid) + 1);

  if (exec == Execution::serial) {
    for (int k = 0; k <= grid; ++k) slots[static_cast<std::size_t>(k)] = f(grid_point(lo, hi, k, grid));
  } else {
    std::exception_ptr failure;
    std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k <= grid; ++k) {
      try {
        slots[static_cast<std::size_t>(k)] = f(grid_point(lo, hi, k, grid));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<Sample> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<Bracket> brackets_from_samples(const Evaluator& f, const std::vector<Sample>& samples,
                                           const PrecisionContext& ctx) {
  std::vector<Bracket> out;
  const Sample* prev = nullptr;
  for (const auto& s : samples) {
    if (s.near_zero || s.value.primal.is_zero()) {
      out.push_back({s.energy, s.energy, true});
      prev = nullptr;  // the root at this point is already reported
      continue;
    }
    if (prev != nullptr) {
      const int product = sign_of(prev->value) * sign_of(s.value);
      if (product < 0) {
        out.push_back({prev->energy, s.energy, false});
      } else if (prev->value.tangent.sign() * s.value.tangent.sign() < 0) {
        split_at_extremum(f, *prev, s, ctx, out);
      }
    }
    prev = &s;
  }
  return out;
}

RootResult refine_bracket(const Evaluator& f, const Bracket& bracket, const PrecisionContext& ctx,
                          int max_steps) {
  if (bracket.exact) return {bracket.lo, true, 0};

  BigReal a = bracket.lo, b = bracket.hi;
  if (b < a) std::swap(a, b);
  const int sign_a = sign_of(f(a).value);
  if (sign_a == 0) return {a, true, 0};

  BigReal x = midpoint(a, b);
  for (int step = 1; step <= max_steps; ++step) {
    const Sample s = f(x);
    const int sx = sign_of(s.value);
    if (sx == 0) return {x, true, step};
    if (sx == sign_a) {
      a = x;
    } else {
      b = x;
    }

    BigReal next = s.value.tangent.is_zero() ? midpoint(a, b) : x - s.value.primal / s.value.tangent;
    // a Newton step below the tolerance may round onto x itself
    if (next.is_finite() && agree(next, x, ctx)) return {next, true, step};
    if (!next.is_finite() || !strictly_inside(next, a, b)) next = midpoint(a, b);

    if (agree(next, x, ctx) || agree(a, b, ctx)) return {next, true, step};
    x = std::move(next);
  }
  throw RootError("root refinement did not converge in " + std::to_string(max_steps) +
                      " steps; increase working precision",
                  Bracket{a, b, false});
}

}  // namespace rpm
