#pragma once

#include "rpm/riccati.hpp"

#include <vector>

namespace rpm {

/// Low-accuracy (about 1e-6 relative) eigenvalues of -psi'' + V psi = E psi
/// within one parity class, from a second-order finite-difference
/// discretization on the half line with Sturm-sequence bisection. Used only to
/// tell which Hankel roots belong to which state; the bounds never depend on
/// its digits.
class CoarseSpectrum {
 public:
  /// Box and mesh are chosen so that the lowest `count` levels are converged
  /// to the stated accuracy.
  CoarseSpectrum(const PotentialSpec& pot, Parity parity, int count);

  /// Ordinal m = 0, 1, ... within the parity class (state n = 2m + s).
  [[nodiscard]] double level(int ordinal) const { return levels_.at(static_cast<std::size_t>(ordinal)); }
  [[nodiscard]] const std::vector<double>& levels() const { return levels_; }

  /// Number of eigenvalues of the tridiagonal matrix below `energy`.
  static int sturm_count(const std::vector<double>& diag, double offdiag, double energy);

 private:
  std::vector<double> levels_;
};

}  // namespace rpm
