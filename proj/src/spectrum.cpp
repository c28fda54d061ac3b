#include "rpm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rpm {

namespace {

struct Mesh {
  std::vector<double> diag;
  double offdiag;
};

double potential_at(const std::vector<std::pair<int, double>>& terms, double x) {
  double v = 0.0;
  for (const auto& [m, c] : terms) v += c * std::pow(x, 2 * m);
  return v;
}

// Half line [0, L] with cell-centred nodes; the mirror condition at 0 selects
// the parity, psi(L) = 0 closes the box.
Mesh build_mesh(const std::vector<std::pair<int, double>>& terms, int s, double box, int nodes) {
  const double h = box / (nodes + 0.5);
  const double inv_h2 = 1.0 / (h * h);
  Mesh mesh{std::vector<double>(static_cast<std::size_t>(nodes)), -inv_h2};
  for (int i = 0; i < nodes; ++i) {
    mesh.diag[static_cast<std::size_t>(i)] = 2.0 * inv_h2 + potential_at(terms, (i + 0.5) * h);
  }
  mesh.diag[0] += (s == 0 ? -1.0 : 1.0) * inv_h2;
  return mesh;
}

double kth_eigenvalue(const Mesh& mesh, int k) {
  const auto [lo_it, hi_it] = std::minmax_element(mesh.diag.begin(), mesh.diag.end());
  double lo = *lo_it - 2.0 * std::abs(mesh.offdiag);
  double hi = *hi_it + 2.0 * std::abs(mesh.offdiag);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (CoarseSpectrum::sturm_count(mesh.diag, mesh.offdiag, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> levels_on(const std::vector<std::pair<int, double>>& terms, int s, double box,
                              int nodes, int count) {
  const Mesh mesh = build_mesh(terms, s, box, nodes);
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(kth_eigenvalue(mesh, k));
  return out;
}

}  // namespace

int CoarseSpectrum::sturm_count(const std::vector<double>& diag, double offdiag, double energy) {
  int negatives = 0;
  double pivot = 1.0;
  const double off2 = offdiag * offdiag;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    pivot = (diag[i] - energy) - (i == 0 ? 0.0 : off2 / pivot);
    if (pivot == 0.0) pivot = -1e-300;
    if (pivot < 0.0) ++negatives;
  }
  return negatives;
}

CoarseSpectrum::CoarseSpectrum(const PotentialSpec& pot, Parity parity, int count) {
  if (count < 1) throw std::invalid_argument("CoarseSpectrum: count must be positive");
  std::vector<std::pair<int, double>> terms;
  for (const auto& [m, v] : pot.coefficients()) terms.emplace_back(m, v.get_d());
  const double v0 = pot.coefficient(0).get_d();

  // Grow the box until the top requested level sits deep below the wall.
  double wall = 50.0;
  constexpr int kNodes = 4000;
  for (int attempt = 0; attempt < 8; ++attempt) {
    double box = 0.5;
    while (potential_at(terms, box) - v0 < wall) box *= 1.25;
    box *= 1.5;
    const auto coarse = levels_on(terms, parity.s(), box, kNodes, count);
    const double needed = 4.0 * (coarse.back() - v0) + 50.0;
    if (needed <= wall) {
      // Richardson extrapolation of the O(h^2) mesh error.
      const auto fine = levels_on(terms, parity.s(), box, 2 * kNodes, count);
      levels_.resize(static_cast<std::size_t>(count));
      for (std::size_t k = 0; k < levels_.size(); ++k) levels_[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
      return;
    }
    wall = needed;
  }
  throw std::runtime_error("CoarseSpectrum: could not size the box");
}

}  // namespace rpm
