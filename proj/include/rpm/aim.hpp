#pragma once

// Factorization view of y'' = lambda0(x) y' + s0(x) y:
//   [d/dx + a][d/dx + b] y = 0  with  a + b = -lambda0,  b' + a b = -s0,
// so b solves  b' - b^2 - lambda0 b + s0 = 0.  With z = y' + b y the equation
// splits into z' + a z = 0 and a first-order equation for y, giving
//   y = e^{-int b} [C2 + C1 int e^{int (lambda0 + 2b)}].
// Also hosts the usual asymptotic-iteration recursion for cross-checks.

#include "rpm/numerics.hpp"
#include "rpm/roots.hpp"

#include <gmpxx.h>

#include <functional>
#include <stdexcept>
#include <vector>

namespace rpm {

class AimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// constant + slope * E
struct AffineInE {
  mpq_class constant = 0;
  mpq_class slope = 0;
};

/// lambda0(x), s0(x) as dense polynomials in x whose coefficients are affine in E.
class AimSystem {
 public:
  AimSystem(std::vector<AffineInE> lambda0, std::vector<AffineInE> s0);

  /// Gauged harmonic oscillator, psi = e^{-x^2/2} y:  lambda0 = 2x, s0 = 1 - E.
  static AimSystem harmonic();
  /// Constant coefficients: lambda0 = c, s0 = s.
  static AimSystem constant(const mpq_class& lambda0, const AffineInE& s0);

  [[nodiscard]] const std::vector<AffineInE>& lambda0() const { return lambda0_; }
  [[nodiscard]] const std::vector<AffineInE>& s0() const { return s0_; }

  [[nodiscard]] BigReal lambda0_at(const BigReal& x, const BigReal& energy) const;
  [[nodiscard]] BigReal s0_at(const BigReal& x, const BigReal& energy) const;

 private:
  std::vector<AffineInE> lambda0_;
  std::vector<AffineInE> s0_;
};

struct Jet {
  BigReal value;
  BigReal derivative;
};

using JetFunction = std::function<Jet(const BigReal&)>;
using RealFunction = std::function<BigReal(const BigReal&)>;

/// b' - b^2 - lambda0 b + s0 at (x, E).
BigReal riccati_residual_b(const AimSystem& sys, const JetFunction& b, const BigReal& x, const BigReal& energy);

/// Roots of b^2 + lambda0 b - s0 = 0. For a negative discriminant the pair is
/// real_part +/- i imag_part and plus == minus == real_part.
struct QuadraticRoots {
  BigReal plus;
  BigReal minus;
  bool equal_roots = false;
  bool complex_pair = false;
  BigReal real_part;
  BigReal imag_part;
};

QuadraticRoots constant_b_roots(const mpq_class& lambda0, const mpq_class& s0, const PrecisionContext& ctx);

/// y(x) = e^{-bx} [C2 + C1 (e^{kx} - 1)/k],  k = lambda0 + 2b  (x when k = 0).
/// For complex b = b_re + i b_im the real part is returned, which is itself a
/// solution of the (real) equation.
struct GeneralSolution {
  BigReal b_re;
  BigReal b_im;
  BigReal lambda0;
  BigReal c1;
  BigReal c2;
};

BigReal general_solution_eval(const GeneralSolution& gs, const BigReal& x);

/// Solutions of the constant-coefficient equation: one per root (two real
/// forms for a complex pair), each with (C1, C2) = (0, 1) and (1, 0).
std::vector<GeneralSolution> constant_solutions(const mpq_class& lambda0, const mpq_class& s0,
                                                const PrecisionContext& ctx);

struct FactorApplication {
  BigReal z;
  BigReal residual;  // z' + a z with a = -lambda0 - b
};

/// z = y' + b y and its transport residual, derivatives by central differences
/// with step 10^(-working_digits/3).
FactorApplication first_order_factor_apply(const RealFunction& b, const RealFunction& y, const AimSystem& sys,
                                           const BigReal& x, const BigReal& energy, const PrecisionContext& ctx);

/// y'' - lambda0 y' - s0 y by central differences with step 10^(-working_digits/3).
BigReal ode_residual(const AimSystem& sys, const RealFunction& y, const BigReal& x, const BigReal& energy,
                     const PrecisionContext& ctx);

struct AimIteration {
  int k;
  std::vector<BigReal> roots;  // real roots of delta_k(x0, E) in the window, ascending
};

struct AimOptions {
  int grid = 200;
  int degree_cap = 400;
  Execution execution = Execution::parallel;
};

/// delta_k(x0, E) = s_k lambda_{k-1} - s_{k-1} lambda_k for k = 1..k_max with
/// lambda_{k+1} = lambda_k' + s_k + lambda0 lambda_k,  s_{k+1} = s_k' + s0 lambda_k.
/// Returns the value and d/dE. Throws AimError when a polynomial degree would
/// exceed the cap.
std::vector<DualReal> aim_deltas(const AimSystem& sys, const BigReal& x0, const BigReal& energy, int k_max,
                                 int degree_cap = 400);

/// Real roots of delta_k(x0, E) inside the window for every k = 1..k_max.
/// k_max = 0 gives an empty sequence; k_max > 120 is rejected.
std::vector<AimIteration> aim_estimate(const AimSystem& sys, const BigReal& x0, int k_max, const EnergyWindow& window,
                                       const PrecisionContext& ctx, const AimOptions& opts = {});

}  // namespace rpm
