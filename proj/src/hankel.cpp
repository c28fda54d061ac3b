#include "rpm/hankel.hpp"

#include <algorithm>

namespace rpm {

namespace {

constexpr long kZeroExponent = -(1L << 40);

long exp2_or_floor(const BigReal& x) { return x.is_zero() ? kZeroExponent : x.exponent2(); }

// Pivoted elimination that also carries, per entry, the base-2 exponent of
// its accumulated rounding error in units of the unit roundoff. Returns the
// determinant and the worst relative-error exponent over the pivots.
std::pair<DualReal, long> tracked_det(std::vector<std::vector<DualReal>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<long>> err(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) err[i][j] = exp2_or_floor(a[i][j].primal);

  DualReal det = constant_like(a[0][0], 1);
  long worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    BigReal best = a[k][k].primal.abs();
    for (std::size_t r = k + 1; r < n; ++r) {
      BigReal m = a[r][k].primal.abs();
      if (best < m) {
        best = std::move(m);
        pivot = r;
      }
    }
    if (a[pivot][k].primal.is_zero()) return {constant_like(a[0][0], 0), kZeroExponent};
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      std::swap(err[pivot], err[k]);
      det = -det;
    }
    det *= a[k][k];
    const long pivot_rel = err[k][k] - a[k][k].primal.exponent2();
    worst = std::max(worst, pivot_rel);

    for (std::size_t r = k + 1; r < n; ++r) {
      if (a[r][k].primal.is_zero()) continue;
      const DualReal factor = a[r][k] / a[k][k];
      const long factor_rel = std::max(err[r][k] - a[r][k].primal.exponent2(), pivot_rel);
      const long factor_exp = factor.primal.exponent2();
      for (std::size_t c = k + 1; c < n; ++c) {
        const long row_rel = err[k][c] - exp2_or_floor(a[k][c].primal);
        const long product_err =
            a[k][c].primal.is_zero() ? kZeroExponent
                                     : factor_exp + a[k][c].primal.exponent2() + std::max(factor_rel, row_rel);
        a[r][c] -= factor * a[k][c];
        err[r][c] = std::max({err[r][c], product_err, exp2_or_floor(a[r][c].primal)}) + 1;
      }
    }
  }
  return {std::move(det), worst};
}

}  // namespace

HankelIndex::HankelIndex(int dim, int disp) : dimension(dim), displacement(disp) {
  if (dim < 1) throw std::invalid_argument("Hankel dimension must be >= 1");
  if (disp != 0 && disp != 1) throw std::invalid_argument("Hankel displacement must be 0 or 1");
}

HankelValue hankel_det(const RiccatiSeries& series, HankelIndex index, const PrecisionContext& ctx) {
  auto [det, worst_rel] = tracked_det(hankel_matrix(series.coeffs, index));
  // Flag when the estimated relative error of the determinant exceeds 10^-10,
  // or the determinant vanished exactly.
  const long budget = static_cast<long>(ctx.bits()) - 34;
  const bool near_zero = det.primal.is_zero() || worst_rel > budget;
  return {index, std::move(det), near_zero};
}

HankelValue hankel_at(const PotentialSpec& pot, Parity parity, HankelIndex index, const BigReal& energy,
                      const PrecisionContext& ctx) {
  const auto series = riccati_coefficients(pot, parity, seed(energy), index.required_count());
  return hankel_det(series, index, ctx);
}

}  // namespace rpm
