#include "rpm/aim.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <optional>
#include <string>

namespace rpm {

namespace {

BigReal affine_at(const AffineInE& c, const BigReal& energy) {
  return energy.constant(c.constant) + energy.constant(c.slope) * energy;
}

BigReal poly_at(const std::vector<AffineInE>& p, const BigReal& x, const BigReal& energy) {
  BigReal acc = energy.constant(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + affine_at(*it, energy);
  return acc;
}

BigReal step_for(const PrecisionContext& ctx) { return BigReal::pow10(-ctx.working_digits / 3, ctx); }

BigReal central_derivative(const RealFunction& f, const BigReal& x, const BigReal& h) {
  return (f(x + h) - f(x - h)) / (h * 2);
}

struct Complex {
  BigReal re;
  BigReal im;
};

Complex mul(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex div(const Complex& a, const Complex& b) {
  const BigReal den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

// e^{w} - 1 without cancellation for small |w|.
Complex expm1(const Complex& w) {
  const BigReal half_sin = (w.im / 2).sin();
  const BigReal cos_im = w.im.cos();
  return {w.re.expm1() * cos_im - half_sin * half_sin * 2, w.re.exp() * w.im.sin()};
}

// Dense polynomial in x with coefficients carrying d/dE.
using Poly = std::vector<DualReal>;

Poly to_poly(const std::vector<AffineInE>& p, const DualReal& energy) {
  Poly out;
  out.reserve(p.size());
  for (const auto& c : p) {
    const BigReal slope = energy.primal.constant(c.slope);
    out.emplace_back(energy.primal.constant(c.constant) + slope * energy.primal, slope * energy.tangent);
  }
  return out;
}

Poly derivative(const Poly& p, const DualReal& zero) {
  if (p.size() <= 1) return {zero};
  Poly out;
  out.reserve(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long>(i));
  return out;
}

Poly add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), constant_like(b.front(), 0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

Poly multiply(const Poly& a, const Poly& b, const DualReal& zero) {
  Poly out(a.size() + b.size() - 1, zero);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

DualReal evaluate(const Poly& p, const BigReal& x) {
  DualReal acc = constant_like(p.front(), 0);
  const DualReal xd = constant_dual(x);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * xd + *it;
  return acc;
}

struct DeltaTerm {
  DualReal delta;
  BigReal scale;  // |s_k lambda_{k-1}| + |s_{k-1} lambda_k| before cancellation
};

std::vector<DeltaTerm> delta_sweep(const AimSystem& sys, const BigReal& x0, const BigReal& energy, int k_max,
                                   int degree_cap) {
  const DualReal e = seed(energy);
  const DualReal zero = constant_like(e, 0);
  const Poly lambda0 = to_poly(sys.lambda0(), e);
  const Poly s0 = to_poly(sys.s0(), e);

  Poly lambda = lambda0;
  Poly s = s0;
  DualReal lambda_at = evaluate(lambda, x0);
  DualReal s_at = evaluate(s, x0);
  std::vector<DeltaTerm> out;
  out.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    Poly next_lambda = add(add(derivative(lambda, zero), s), multiply(lambda0, lambda, zero));
    Poly next_s = add(derivative(s, zero), multiply(s0, lambda, zero));
    if (static_cast<int>(std::max(next_lambda.size(), next_s.size())) - 1 > degree_cap) {
      throw AimError("AIM polynomial degree exceeds cap " + std::to_string(degree_cap) + " at iteration " +
                     std::to_string(k));
    }
    DualReal next_lambda_at = evaluate(next_lambda, x0);
    DualReal next_s_at = evaluate(next_s, x0);
    const DualReal left = next_s_at * lambda_at;
    const DualReal right = s_at * next_lambda_at;
    out.push_back({left - right, left.primal.abs() + right.primal.abs()});
    lambda = std::move(next_lambda);
    s = std::move(next_s);
    lambda_at = std::move(next_lambda_at);
    s_at = std::move(next_s_at);
  }
  return out;
}

Sample delta_sample(const DeltaTerm& t, const BigReal& energy, const PrecisionContext& ctx) {
  const bool near_zero =
      t.delta.primal.is_zero() || t.delta.primal.abs() <= BigReal::pow10(-ctx.working_digits + 10, ctx) * t.scale;
  return {energy, t.delta, near_zero};
}

}  // namespace

AimSystem::AimSystem(std::vector<AffineInE> lambda0, std::vector<AffineInE> s0)
    : lambda0_(std::move(lambda0)), s0_(std::move(s0)) {
  if (lambda0_.empty()) lambda0_.push_back({});
  if (s0_.empty()) s0_.push_back({});
}

AimSystem AimSystem::harmonic() { return AimSystem({{0, 0}, {2, 0}}, {{1, -1}}); }

AimSystem AimSystem::constant(const mpq_class& lambda0, const AffineInE& s0) {
  return AimSystem({{lambda0, 0}}, {s0});
}

BigReal AimSystem::lambda0_at(const BigReal& x, const BigReal& energy) const { return poly_at(lambda0_, x, energy); }
BigReal AimSystem::s0_at(const BigReal& x, const BigReal& energy) const { return poly_at(s0_, x, energy); }

BigReal riccati_residual_b(const AimSystem& sys, const JetFunction& b, const BigReal& x, const BigReal& energy) {
  const Jet j = b(x);
  return j.derivative - j.value * j.value - sys.lambda0_at(x, energy) * j.value + sys.s0_at(x, energy);
}

QuadraticRoots constant_b_roots(const mpq_class& lambda0, const mpq_class& s0, const PrecisionContext& ctx) {
  const mpq_class disc = lambda0 * lambda0 + 4 * s0;
  const BigReal centre = BigReal(mpq_class(-lambda0 / 2), ctx);
  const BigReal zero(ctx);
  if (sgn(disc) == 0) return {centre, centre, true, false, centre, zero};
  const BigReal root = BigReal(mpq_class(abs(disc)), ctx).sqrt() / 2;
  if (sgn(disc) < 0) return {centre, centre, false, true, centre, root};
  return {centre + root, centre - root, false, false, centre, zero};
}

BigReal general_solution_eval(const GeneralSolution& gs, const BigReal& x) {
  if (gs.b_im.is_zero()) {
    const BigReal k = gs.lambda0 + gs.b_re * 2;
    const BigReal integral = k.is_zero() ? x : (k * x).expm1() / k;
    return (-(gs.b_re * x)).exp() * (gs.c2 + gs.c1 * integral);
  }
  const Complex k{gs.lambda0 + gs.b_re * 2, gs.b_im * 2};
  const Complex integral = div(expm1({k.re * x, k.im * x}), k);
  const Complex bracket{gs.c2 + gs.c1 * integral.re, gs.c1 * integral.im};
  const BigReal decay = (-(gs.b_re * x)).exp();
  const BigReal phase = gs.b_im * x;
  const Complex factor{decay * phase.cos(), -(decay * phase.sin())};
  return mul(factor, bracket).re;
}

std::vector<GeneralSolution> constant_solutions(const mpq_class& lambda0, const mpq_class& s0,
                                                const PrecisionContext& ctx) {
  const QuadraticRoots roots = constant_b_roots(lambda0, s0, ctx);
  const BigReal l0(lambda0, ctx);
  const BigReal zero(ctx);
  const BigReal one(1, ctx);
  std::vector<GeneralSolution> out;
  auto both = [&](const BigReal& re, const BigReal& im) {
    out.push_back({re, im, l0, zero, one});
    out.push_back({re, im, l0, one, zero});
  };
  if (roots.complex_pair) {
    both(roots.real_part, roots.imag_part);
  } else {
    both(roots.plus, zero);
    if (!roots.equal_roots) both(roots.minus, zero);
  }
  return out;
}

FactorApplication first_order_factor_apply(const RealFunction& b, const RealFunction& y, const AimSystem& sys,
                                           const BigReal& x, const BigReal& energy, const PrecisionContext& ctx) {
  const BigReal h = step_for(ctx);
  const RealFunction z = [&](const BigReal& t) { return central_derivative(y, t, h) + b(t) * y(t); };
  BigReal z_at = z(x);
  const BigReal a = -sys.lambda0_at(x, energy) - b(x);
  BigReal residual = central_derivative(z, x, h) + a * z_at;
  return {std::move(z_at), std::move(residual)};
}

BigReal ode_residual(const AimSystem& sys, const RealFunction& y, const BigReal& x, const BigReal& energy,
                     const PrecisionContext& ctx) {
  const BigReal h = step_for(ctx);
  const BigReal y0 = y(x);
  const BigReal yp = y(x + h);
  const BigReal ym = y(x - h);
  const BigReal second = (yp - y0 * 2 + ym) / (h * h);
  const BigReal first = (yp - ym) / (h * 2);
  return second - sys.lambda0_at(x, energy) * first - sys.s0_at(x, energy) * y0;
}

std::vector<DualReal> aim_deltas(const AimSystem& sys, const BigReal& x0, const BigReal& energy, int k_max,
                                 int degree_cap) {
  std::vector<DualReal> out;
  for (auto& t : delta_sweep(sys, x0, energy, k_max, degree_cap)) out.push_back(std::move(t.delta));
  return out;
}

std::vector<AimIteration> aim_estimate(const AimSystem& sys, const BigReal& x0, int k_max, const EnergyWindow& window,
                                       const PrecisionContext& ctx, const AimOptions& opts) {
  if (k_max < 0 || k_max > 120) throw std::invalid_argument("aim_estimate: k_max must be in [0, 120]");
  if (!(window.lo < window.hi)) throw std::invalid_argument("aim_estimate: window must satisfy lo < hi");
  if (opts.grid < 8) throw std::invalid_argument("aim_estimate: grid must be >= 8");
  if (k_max == 0) return {};

  const int grid = opts.grid;
  std::vector<std::optional<std::vector<DeltaTerm>>> rows(static_cast<std::size_t>(grid) + 1);
  auto energy_at = [&](int i) {
    return i == grid ? window.hi : window.lo + (window.hi - window.lo) * static_cast<long>(i) / static_cast<long>(grid);
  };

  if (opts.execution == Execution::serial) {
    for (int i = 0; i <= grid; ++i) rows[static_cast<std::size_t>(i)] = delta_sweep(sys, x0, energy_at(i), k_max, opts.degree_cap);
  } else {
    std::exception_ptr failure;
    std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i <= grid; ++i) {
      try {
        rows[static_cast<std::size_t>(i)] = delta_sweep(sys, x0, energy_at(i), k_max, opts.degree_cap);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<AimIteration> out;
  for (int k = 1; k <= k_max; ++k) {
    const auto ki = static_cast<std::size_t>(k - 1);
    std::vector<Sample> samples;
    samples.reserve(rows.size());
    for (int i = 0; i <= grid; ++i) samples.push_back(delta_sample((*rows[static_cast<std::size_t>(i)])[ki], energy_at(i), ctx));

    const Evaluator f = [&sys, &x0, &ctx, k, cap = opts.degree_cap](const BigReal& energy) {
      return delta_sample(delta_sweep(sys, x0, energy, k, cap).back(), energy, ctx);
    };
    AimIteration it{k, {}};
    for (const auto& b : brackets_from_samples(f, samples, ctx)) it.roots.push_back(refine_bracket(f, b, ctx).energy);
    std::sort(it.roots.begin(), it.roots.end());
    out.push_back(std::move(it));
  }
  return out;
}

}  // namespace rpm
