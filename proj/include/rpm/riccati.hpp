#pragma once

// Taylor coefficients of the regularized logarithmic derivative
//   f(x) = -Phi'(x)/Phi(x) = f_0 x + f_1 x^3 + f_2 x^5 + ...,  Phi = x^{-s} psi,
// for -psi'' + V(x) psi = E psi with an even polynomial V. f obeys
//   f' + 2s f/x - f^2 + V - E = 0,
// which gives f_0 = (E - V_0)/(1+2s) and
//   (2n+1+2s) f_n = sum_{i+j=n-1} f_i f_j - V_n,  n >= 1.

#include "rpm/numerics.hpp"

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rpm {

class PotentialError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// V(x) = sum_m V_m x^{2m} with exact rational coefficients, keyed by half-degree m.
class PotentialSpec {
 public:
  /// Validates: at least one m >= 1 with V_m != 0, and the top such V_m > 0.
  explicit PotentialSpec(std::map<int, mpq_class> coefficients);

  /// Parses "<even power>=<rational>" terms, e.g. {"2=1", "4=1/10"}. Repeated
  /// powers accumulate. Odd powers and malformed terms throw PotentialError.
  static PotentialSpec parse_terms(const std::vector<std::string>& terms);

  /// x^2 + A x^4.
  static PotentialSpec quartic(const mpq_class& a);

  /// V_m (zero beyond the degree).
  [[nodiscard]] mpq_class coefficient(int half_degree) const;
  [[nodiscard]] int half_degree() const { return coefficients_.rbegin()->first; }
  [[nodiscard]] const mpq_class& top_coefficient() const { return coefficients_.rbegin()->second; }
  [[nodiscard]] const std::map<int, mpq_class>& coefficients() const { return coefficients_; }

  /// "x^2 + 1/10 x^4" style text.
  [[nodiscard]] std::string describe() const;

 private:
  std::map<int, mpq_class> coefficients_;
};

/// s = 0 for even states, s = 1 for odd ones.
class Parity {
 public:
  explicit Parity(int s);
  static Parity of_state(int n) { return Parity(n % 2); }
  [[nodiscard]] int s() const { return s_; }
  friend bool operator==(Parity, Parity) = default;

 private:
  int s_;
};

struct RiccatiSeries {
  DualReal energy;
  Parity parity;
  std::vector<DualReal> coeffs;  // f_0 ... f_N

  [[nodiscard]] std::size_t count() const { return coeffs.size(); }
};

/// Scalar-generic recursion: returns f_0 ... f_count for any field type T
/// (BigReal, DualReal, mpq_class).
template <typename T>
std::vector<T> riccati_recursion(const PotentialSpec& pot, Parity parity, const T& energy, int count) {
  const long twice_s = 2L * parity.s();
  std::vector<T> f;
  f.reserve(static_cast<std::size_t>(count) + 1);
  f.push_back((energy - constant_like(energy, pot.coefficient(0))) / (1 + twice_s));
  for (int n = 1; n <= count; ++n) {
    // sum_{i+j=n-1} f_i f_j, folded over the symmetric halves
    const int last = n - 1;
    T acc = constant_like(energy, 0);
    for (int i = 0; 2 * i < last; ++i) acc += f[i] * f[last - i];
    acc *= 2;
    if (last % 2 == 0) acc += f[last / 2] * f[last / 2];
    acc -= constant_like(energy, pot.coefficient(n));
    acc /= (2L * n + 1 + twice_s);
    f.push_back(std::move(acc));
  }
  return f;
}

/// f_0 ... f_count at the given energy, with d/dE carried by the dual tangent.
/// Throws std::invalid_argument for count < 1 or non-finite energy.
RiccatiSeries riccati_coefficients(const PotentialSpec& pot, Parity parity, const DualReal& energy,
                                   int count);

/// Coefficients of x^0 ... x^{2M} of f' + 2s f/x - f^2 + V - E for the
/// truncated series, computed by dense polynomial arithmetic (independent of
/// the recursion). Requires M <= series.count() - 1.
std::vector<BigReal> residual_check(const RiccatiSeries& series, const PotentialSpec& pot, int order);

}  // namespace rpm
