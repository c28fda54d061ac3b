#pragma once

// Root bracketing and polishing for real functions of the energy that come
// with a dual-number derivative. Grid sampling has an OpenMP kernel and a
// serial reference kernel; both must produce identical samples.

#include "rpm/numerics.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rpm {

enum class Execution { serial, parallel };

struct EnergyWindow {
  BigReal lo;
  BigReal hi;
};

struct Sample {
  BigReal energy;
  DualReal value;
  bool near_zero = false;
};

/// Must be safe to call concurrently from several threads.
using Evaluator = std::function<Sample(const BigReal&)>;

/// [lo, hi] with a verified sign change, or lo == hi when `exact` (a point at
/// which the function vanishes to working precision, e.g. an even-order root).
struct Bracket {
  BigReal lo;
  BigReal hi;
  bool exact = false;
};

class RootError : public std::runtime_error {
 public:
  RootError(const std::string& what, std::optional<Bracket> best)
      : std::runtime_error(what), best_bracket(std::move(best)) {}
  std::optional<Bracket> best_bracket;
};

/// f at lo + k (hi - lo) / grid for k = 0..grid.
std::vector<Sample> sample_grid(const Evaluator& f, const BigReal& lo, const BigReal& hi, int grid,
                                Execution exec);

/// Ascending brackets from consecutive samples. Near-zero samples become
/// exact brackets. A cell whose endpoint derivatives have opposite signs but
/// whose values share a sign is split at its interior extremum, which catches
/// close root pairs and even-order roots.
std::vector<Bracket> brackets_from_samples(const Evaluator& f, const std::vector<Sample>& samples,
                                           const PrecisionContext& ctx);

struct RootResult {
  BigReal energy;
  bool converged = false;
  int steps = 0;
};

/// Newton iteration safeguarded by bisection. Stops when successive iterates
/// agree to ctx.convergence_digits() digits. Throws RootError after
/// `max_steps` iterations.
RootResult refine_bracket(const Evaluator& f, const Bracket& bracket, const PrecisionContext& ctx,
                          int max_steps = 200);

}  // namespace rpm
