#include "rpm/numerics.hpp"

#include <climits>
#include <cmath>
#include <ostream>

namespace rpm {

mpfr_prec_t PrecisionContext::bits() const {
  if (working_digits < 1) throw NumericError("working_digits must be positive");
  return static_cast<mpfr_prec_t>(std::ceil(working_digits * std::log2(10.0))) + 8;
}

void PrecisionContext::require_output(int output_digits) const {
  if (output_digits < 1) throw NumericError("output digits must be positive");
  if (guard_digits < 1) throw NumericError("guard_digits must be positive");
  if (working_digits < output_digits + guard_digits) {
    throw NumericError("working precision " + std::to_string(working_digits) +
                       " is below output digits " + std::to_string(output_digits) + " + guard " +
                       std::to_string(guard_digits));
  }
}

BigReal::BigReal(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(const PrecisionContext& ctx) : BigReal(ctx.bits()) {}

BigReal::BigReal(long value, const PrecisionContext& ctx) : BigReal(ctx.bits()) {
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigReal::BigReal(const mpq_class& value, const PrecisionContext& ctx) : BigReal(ctx.bits()) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigReal BigReal::parse(std::string_view text, const PrecisionContext& ctx) {
  std::string s(text);
  if (s.empty()) throw NumericError("empty numeric literal");
  BigReal out(ctx);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
      throw NumericError("malformed rational '" + s + "'");
    }
    q.canonicalize();
    mpfr_set_q(out.value_, q.get_mpq_t(), MPFR_RNDN);
    return out;
  }
  char* end = nullptr;
  mpfr_strtofr(out.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end != s.c_str() + s.size() || !out.is_finite()) {
    throw NumericError("malformed decimal '" + s + "'");
  }
  return out;
}

BigReal BigReal::pow10(long exponent, const PrecisionContext& ctx) {
  BigReal out(ctx);
  mpfr_ui_pow_ui(out.value_, 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent),
                 MPFR_RNDN);
  if (exponent < 0) mpfr_ui_div(out.value_, 1, out.value_, MPFR_RNDN);
  return out;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

long BigReal::exponent2() const {
  if (!mpfr_regular_p(value_)) return LONG_MIN;
  return mpfr_get_exp(value_);
}

BigReal BigReal::abs() const {
  BigReal out(*this);
  mpfr_abs(out.value_, out.value_, MPFR_RNDN);
  return out;
}

BigReal BigReal::sqrt() const {
  BigReal out(*this);
  mpfr_sqrt(out.value_, out.value_, MPFR_RNDN);
  return out;
}

BigReal BigReal::exp() const {
  BigReal out(*this);
  mpfr_exp(out.value_, out.value_, MPFR_RNDN);
  return out;
}

BigReal BigReal::expm1() const {
  BigReal out(*this);
  mpfr_expm1(out.value_, value_, MPFR_RNDN);
  return out;
}

BigReal BigReal::sin() const {
  BigReal out(*this);
  mpfr_sin(out.value_, value_, MPFR_RNDN);
  return out;
}

BigReal BigReal::cos() const {
  BigReal out(*this);
  mpfr_cos(out.value_, value_, MPFR_RNDN);
  return out;
}

BigReal BigReal::pow(long n) const {
  BigReal out(*this);
  mpfr_pow_si(out.value_, value_, n, MPFR_RNDN);
  return out;
}

BigReal BigReal::with_precision(mpfr_prec_t bits) const {
  BigReal out(bits);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

BigReal BigReal::constant(long value) const {
  BigReal out(precision());
  mpfr_set_si(out.value_, value, MPFR_RNDN);
  return out;
}

BigReal BigReal::constant(const mpq_class& value) const {
  BigReal out(precision());
  mpfr_set_q(out.value_, value.get_mpq_t(), MPFR_RNDN);
  return out;
}

namespace {

// Results take the larger of the operand precisions.
void widen(mpfr_ptr target, mpfr_srcptr other) {
  if (mpfr_get_prec(other) > mpfr_get_prec(target)) {
    mpfr_prec_round(target, mpfr_get_prec(other), MPFR_RNDN);
  }
}

}  // namespace

BigReal& BigReal::operator+=(const BigReal& rhs) {
  widen(value_, rhs.value_);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  widen(value_, rhs.value_);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  widen(value_, rhs.value_);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  widen(value_, rhs.value_);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal operator+(BigReal lhs, long rhs) {
  mpfr_add_si(lhs.value_, lhs.value_, rhs, MPFR_RNDN);
  return lhs;
}

BigReal operator-(BigReal lhs, long rhs) {
  mpfr_sub_si(lhs.value_, lhs.value_, rhs, MPFR_RNDN);
  return lhs;
}

BigReal operator-(const BigReal& x) {
  BigReal out(x);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

std::string render_decimal(const BigReal& x, int digits) {
  if (digits < 1) throw NumericError("render_decimal: digits must be >= 1");
  if (!x.is_finite()) throw NumericError("render_decimal: non-finite value");

  std::string sign;
  std::string mantissa;
  long exp10 = 1;  // value = 0.mantissa * 10^exp10
  if (x.is_zero()) {
    mantissa.assign(static_cast<std::size_t>(digits), '0');
  } else {
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), x.get(), MPFR_RNDN);
    mantissa = raw;
    mpfr_free_str(raw);
    if (mantissa.front() == '-') {
      sign = "-";
      mantissa.erase(0, 1);
    }
    exp10 = e;
  }

  std::string out = sign;
  if (exp10 > 0 && exp10 <= digits) {
    out += mantissa.substr(0, static_cast<std::size_t>(exp10));
    if (exp10 < digits) out += "." + mantissa.substr(static_cast<std::size_t>(exp10));
  } else if (exp10 <= 0 && exp10 > -6) {
    out += "0." + std::string(static_cast<std::size_t>(-exp10), '0') + mantissa;
  } else {
    out += mantissa.substr(0, 1);
    if (digits > 1) out += "." + mantissa.substr(1);
    out += "e" + std::to_string(exp10 - 1);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) {
  const auto digits = static_cast<int>(std::floor(static_cast<double>(x.precision()) * std::log10(2.0)));
  return os << render_decimal(x, digits > 0 ? digits : 1);
}

DualCheck dual_eval_check(const std::function<DualReal(const DualReal&)>& f, const BigReal& e,
                          const BigReal& h) {
  const DualReal at = f(seed(e));
  const DualReal plus = f(constant_dual(e + h));
  const DualReal minus = f(constant_dual(e - h));
  BigReal diff = (plus.primal - minus.primal) / (h * 2);
  return {at.tangent, std::move(diff)};
}

int agreeing_digits(const BigReal& a, const BigReal& b, int cap) {
  if (a == b) return cap;
  const BigReal scale = max(a.abs(), b.abs());
  const BigReal rel = (a - b).abs() / scale;
  BigReal lg(rel.precision());
  mpfr_log10(lg.get_mutable(), rel.get(), MPFR_RNDN);
  const double d = -lg.to_double();
  if (d <= 0) return 0;
  const int digits = static_cast<int>(std::floor(d));
  return digits > cap ? cap : digits;
}

}  // namespace rpm
