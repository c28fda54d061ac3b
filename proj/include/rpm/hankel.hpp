#pragma once

#include "rpm/numerics.hpp"
#include "rpm/riccati.hpp"

#include <stdexcept>
#include <vector>

namespace rpm {

/// Selects H_D^d: the D x D matrix with entries f_{i+j+d-1}, i,j = 1..D.
struct HankelIndex {
  int dimension;     // D >= 1
  int displacement;  // d in {0, 1}

  HankelIndex(int dim, int disp);
  /// Highest coefficient index used: f_{2D+d-1}.
  [[nodiscard]] int required_count() const { return 2 * dimension + displacement - 1; }
  friend bool operator==(const HankelIndex&, const HankelIndex&) = default;
};

struct HankelValue {
  HankelIndex index;
  DualReal value;
  /// Estimated relative rounding error of the determinant above 10^-10, so
  /// its sign is not trustworthy. Exact zeros are flagged too.
  bool near_zero = false;
};

/// Determinant by Gaussian elimination with partial pivoting on magnitude().
/// Works for BigReal, DualReal and mpq_class; an exactly zero column gives an
/// exact zero.
template <typename T>
T elimination_det(std::vector<std::vector<T>> a) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("elimination_det: empty matrix");
  T det = constant_like(a[0][0], 1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    auto best = magnitude(a[k][k]);
    for (std::size_t r = k + 1; r < n; ++r) {
      auto m = magnitude(a[r][k]);
      if (best < m) {
        best = std::move(m);
        pivot = r;
      }
    }
    if (is_exact_zero(a[pivot][k])) return constant_like(a[0][0], 0);
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t r = k + 1; r < n; ++r) {
      if (is_exact_zero(a[r][k])) continue;
      const T factor = a[r][k] / a[k][k];
      for (std::size_t c = k + 1; c < n; ++c) a[r][c] -= factor * a[k][c];
    }
  }
  return det;
}

/// D x D Hankel matrix M[i][j] = f_{i+j+d-1} (1-based i, j).
template <typename T>
std::vector<std::vector<T>> hankel_matrix(const std::vector<T>& f, HankelIndex index) {
  if (static_cast<int>(f.size()) <= index.required_count()) {
    throw std::invalid_argument("hankel_matrix: series too short for D=" +
                                std::to_string(index.dimension) + ", d=" +
                                std::to_string(index.displacement));
  }
  const auto n = static_cast<std::size_t>(index.dimension);
  std::vector<std::vector<T>> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i].reserve(n);
    for (std::size_t j = 0; j < n; ++j) m[i].push_back(f[i + j + 1 + static_cast<std::size_t>(index.displacement)]);
  }
  return m;
}

/// H_D^d(E) and its E-derivative. Throws std::invalid_argument when the
/// series is shorter than 2D+d-1 + 1 coefficients.
HankelValue hankel_det(const RiccatiSeries& series, HankelIndex index, const PrecisionContext& ctx);

/// Convenience: builds the series at `energy` and evaluates H_D^d.
HankelValue hankel_at(const PotentialSpec& pot, Parity parity, HankelIndex index, const BigReal& energy,
                      const PrecisionContext& ctx);

}  // namespace rpm
