#pragma once

// Lower (d = 0) and upper (d = 1) eigenvalue bounds from the roots of the
// Hankel determinants H_D^d(E), tracked in D by continuation.

#include "rpm/hankel.hpp"
#include "rpm/numerics.hpp"
#include "rpm/riccati.hpp"
#include "rpm/roots.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rpm {

/// State n >= 0; parity s = n mod 2, ordinal m = floor(n/2) within the class.
class StateSelector {
 public:
  explicit StateSelector(int n);
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] Parity parity() const { return Parity::of_state(n_); }
  [[nodiscard]] int branch() const { return n_ / 2; }

 private:
  int n_;
};

struct RootEstimate {
  HankelIndex index;
  BigReal energy;
  bool converged = false;
  int newton_steps = 0;
};

struct BoundPair {
  int dimension;
  RootEstimate lower;  // d = 0
  RootEstimate upper;  // d = 1

  [[nodiscard]] BigReal width() const { return upper.energy - lower.energy; }
};

struct BoundTable {
  PotentialSpec potential;
  StateSelector state;
  PrecisionContext precision;
  std::vector<BoundPair> rows;
};

/// A root could not be followed, or the state could not be isolated. Carries
/// the (D, d) where it happened.
class TrackingError : public std::runtime_error {
 public:
  TrackingError(const std::string& what, HankelIndex where)
      : std::runtime_error(what + " (D=" + std::to_string(where.dimension) +
                           ", d=" + std::to_string(where.displacement) + ")"),
        index(where) {}
  HankelIndex index;
};

struct BoundOptions {
  /// Search window at the first dimension; default_window() when unset.
  std::optional<EnergyWindow> window;
  int initial_grid = 128;
  int continuation_grid = 32;
  Execution execution = Execution::parallel;
};

/// [V_0, V_0 + 10 (n+1) max(1, leading coefficient)].
EnergyWindow default_window(const PotentialSpec& pot, const StateSelector& state, const PrecisionContext& ctx);

/// Evaluator E -> H_D^d(E) for use with the generic root machinery.
Evaluator hankel_evaluator(const PotentialSpec& pot, Parity parity, HankelIndex index,
                           const PrecisionContext& ctx);

/// Sign-change brackets of H_D^d on a uniform grid over the window, ascending.
/// Throws std::invalid_argument for an empty window or grid < 8.
std::vector<Bracket> bracket_roots(const PotentialSpec& pot, const StateSelector& state, HankelIndex index,
                                   const EnergyWindow& window, int grid, const PrecisionContext& ctx,
                                   Execution exec = Execution::parallel);

/// Safeguarded Newton polish of one bracket. Throws RootError on
/// non-convergence.
RootEstimate refine_root(const PotentialSpec& pot, const StateSelector& state, HankelIndex index,
                         const Bracket& bracket, const PrecisionContext& ctx);

/// Bound pairs for D = d_min..d_max. The pair at d_min is chosen as the roots
/// of H^0 and H^1 that enclose the state's coarse eigenvalue estimate and
/// exclude its neighbours; later rows follow by continuation. A nesting
/// violation triggers one retry at doubled precision.
BoundTable bound_table(const PotentialSpec& pot, const StateSelector& state, int d_min, int d_max,
                       const PrecisionContext& ctx, const BoundOptions& opts = {});

/// Smallest D in [2, d_max] at which the state is isolated by a root pair.
/// Throws TrackingError when none is.
int first_isolating_dimension(const PotentialSpec& pot, const StateSelector& state, int d_max,
                              const PrecisionContext& ctx, const BoundOptions& opts = {});

/// The deepest row's (lower, upper). Throws std::invalid_argument on an empty table.
std::pair<BigReal, BigReal> best_interval(const BoundTable& table);

}  // namespace rpm
