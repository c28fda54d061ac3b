#pragma once

// Arbitrary-precision reals (MPFR-backed) and first-order dual numbers
// carrying the derivative with respect to the energy.

#include <mpfr.h>

#include <compare>
#include <functional>
#include <gmpxx.h>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rpm {

/// Thrown for malformed numeric text and invalid precision requests.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Working precision for one computation. Passed explicitly everywhere; there
/// is no global default precision.
struct PrecisionContext {
  int working_digits = 120;
  int guard_digits = 20;

  /// Mantissa bits: ceil(working_digits * log2(10)) + 8.
  [[nodiscard]] mpfr_prec_t bits() const;

  /// Number of digits successive Newton iterates must agree on.
  [[nodiscard]] int convergence_digits() const { return working_digits - guard_digits; }

  /// Throws NumericError unless working_digits >= output_digits + guard_digits.
  void require_output(int output_digits) const;

  [[nodiscard]] PrecisionContext doubled() const {
    return {working_digits * 2, guard_digits};
  }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;
};

class BigReal {
 public:
  explicit BigReal(const PrecisionContext& ctx);
  BigReal(long value, const PrecisionContext& ctx);
  BigReal(const mpq_class& value, const PrecisionContext& ctx);
  /// Zero at an explicit bit precision.
  explicit BigReal(mpfr_prec_t bits);

  /// Parses a decimal literal ("1.25", "-3e-4", "7/3"). Throws NumericError.
  static BigReal parse(std::string_view text, const PrecisionContext& ctx);
  /// 10^exponent, correctly rounded.
  static BigReal pow10(long exponent, const PrecisionContext& ctx);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  [[nodiscard]] int sign() const { return mpfr_sgn(value_); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(value_) != 0; }
  [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Base-2 exponent e with |x| in [2^(e-1), 2^e); LONG_MIN for zero.
  [[nodiscard]] long exponent2() const;

  [[nodiscard]] BigReal abs() const;
  [[nodiscard]] BigReal sqrt() const;
  [[nodiscard]] BigReal exp() const;
  [[nodiscard]] BigReal expm1() const;
  [[nodiscard]] BigReal sin() const;
  [[nodiscard]] BigReal cos() const;
  [[nodiscard]] BigReal pow(long n) const;
  /// Same value, different precision (rounded to nearest).
  [[nodiscard]] BigReal with_precision(mpfr_prec_t bits) const;
  /// A constant at this value's precision.
  [[nodiscard]] BigReal constant(long value) const;
  [[nodiscard]] BigReal constant(const mpq_class& value) const;

  [[nodiscard]] mpfr_srcptr get() const { return value_; }
  [[nodiscard]] mpfr_ptr get_mutable() { return value_; }

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  friend BigReal operator+(BigReal lhs, const BigReal& rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, const BigReal& rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, const BigReal& rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, const BigReal& rhs) { return lhs /= rhs; }
  friend BigReal operator*(BigReal lhs, long rhs) { return lhs *= rhs; }
  friend BigReal operator*(long lhs, BigReal rhs) { return rhs *= lhs; }
  friend BigReal operator/(BigReal lhs, long rhs) { return lhs /= rhs; }
  friend BigReal operator+(BigReal lhs, long rhs);
  friend BigReal operator-(BigReal lhs, long rhs);
  friend BigReal operator-(const BigReal& x);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b);

 private:
  mpfr_t value_;
};

BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);

/// `digits` significant decimal digits, correctly rounded with ties to even.
/// Fixed-point notation for moderate exponents, otherwise "d.ddde-N".
/// Throws NumericError for digits < 1 or non-finite input.
std::string render_decimal(const BigReal& x, int digits);

std::ostream& operator<<(std::ostream& os, const BigReal& x);

/// Jet (value, d/dE). Constants have tangent 0; the seed variable has tangent 1.
template <typename T>
struct Dual {
  T primal;
  T tangent;

  Dual(T p, T t) : primal(std::move(p)), tangent(std::move(t)) {}

  Dual& operator+=(const Dual& rhs) {
    primal += rhs.primal;
    tangent += rhs.tangent;
    return *this;
  }
  Dual& operator-=(const Dual& rhs) {
    primal -= rhs.primal;
    tangent -= rhs.tangent;
    return *this;
  }
  Dual& operator*=(const Dual& rhs) {
    tangent *= rhs.primal;
    tangent += primal * rhs.tangent;
    primal *= rhs.primal;
    return *this;
  }
  Dual& operator/=(const Dual& rhs) {
    // (a/b)' = (a' b - a b') / b^2 = (a' - (a/b) b') / b
    primal /= rhs.primal;
    tangent -= primal * rhs.tangent;
    tangent /= rhs.primal;
    return *this;
  }
  Dual& operator*=(long c) {
    primal *= c;
    tangent *= c;
    return *this;
  }
  Dual& operator/=(long c) {
    primal /= c;
    tangent /= c;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator*(Dual a, long c) { return a *= c; }
  friend Dual operator/(Dual a, long c) { return a /= c; }
  friend Dual operator-(const Dual& a) { return Dual(-a.primal, -a.tangent); }
};

using DualReal = Dual<BigReal>;

inline DualReal seed(const BigReal& e) { return {e, e.constant(1)}; }
inline DualReal constant_dual(const BigReal& c) { return {c, c.constant(0)}; }

// Scalar-generic helpers used by the templated kernels. Each scalar type
// (BigReal, DualReal, mpq_class) provides constant_like and magnitude.

inline BigReal constant_like(const BigReal& proto, const mpq_class& q) { return proto.constant(q); }
inline DualReal constant_like(const DualReal& proto, const mpq_class& q) {
  return {proto.primal.constant(q), proto.primal.constant(0)};
}
inline mpq_class constant_like(const mpq_class&, const mpq_class& q) { return q; }

inline BigReal magnitude(const BigReal& x) { return x.abs(); }
inline BigReal magnitude(const DualReal& x) { return x.primal.abs(); }
inline mpq_class magnitude(const mpq_class& x) { return abs(x); }

inline bool is_exact_zero(const BigReal& x) { return x.is_zero(); }
inline bool is_exact_zero(const DualReal& x) { return x.primal.is_zero(); }
inline bool is_exact_zero(const mpq_class& x) { return sgn(x) == 0; }

inline int sign_of(const BigReal& x) { return x.sign(); }
inline int sign_of(const DualReal& x) { return x.primal.sign(); }
inline int sign_of(const mpq_class& x) { return sgn(x); }

struct DualCheck {
  BigReal tangent;
  BigReal central_difference;
};

/// Evaluates f at seed(e) and at e +/- h; returns the dual tangent and the
/// central difference (f(e+h) - f(e-h)) / (2h).
DualCheck dual_eval_check(const std::function<DualReal(const DualReal&)>& f, const BigReal& e,
                          const BigReal& h);

/// Number of leading decimal digits on which a and b agree, in the relative
/// sense -log10(|a-b| / max(|a|,|b|)). Returns `cap` when a == b.
int agreeing_digits(const BigReal& a, const BigReal& b, int cap);

}  // namespace rpm
