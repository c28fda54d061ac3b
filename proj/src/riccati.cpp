#include "rpm/riccati.hpp"

#include <sstream>

namespace rpm {

PotentialSpec::PotentialSpec(std::map<int, mpq_class> coefficients) {
  for (auto& [m, v] : coefficients) {
    if (m < 0) throw PotentialError("negative power in potential");
    v.canonicalize();
    if (sgn(v) != 0) coefficients_.emplace(m, v);
  }
  auto top = coefficients_.rbegin();
  if (top == coefficients_.rend() || top->first < 1) {
    throw PotentialError("potential needs a non-zero term of power >= 2");
  }
  if (sgn(top->second) <= 0) {
    throw PotentialError("leading coefficient of the potential must be positive");
  }
}

PotentialSpec PotentialSpec::parse_terms(const std::vector<std::string>& terms) {
  std::map<int, mpq_class> coeffs;
  for (const auto& term : terms) {
    const auto eq = term.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == term.size()) {
      throw PotentialError("expected <even power>=<rational>, got '" + term + "'");
    }
    const std::string power_text = term.substr(0, eq);
    const std::string value_text = term.substr(eq + 1);
    int power = 0;
    std::size_t used = 0;
    try {
      power = std::stoi(power_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != power_text.size() || power < 0) {
      throw PotentialError("bad power '" + power_text + "' in '" + term + "'");
    }
    if (power % 2 != 0) {
      throw PotentialError("odd power " + power_text + " in '" + term +
                           "': only even potentials are supported");
    }
    mpq_class value;
    if (value_text.find_first_not_of("+-0123456789/") != std::string::npos ||
        value.set_str(value_text.front() == '+' ? value_text.substr(1) : value_text, 10) != 0 ||
        value.get_den() == 0) {
      throw PotentialError("bad rational '" + value_text + "' in '" + term + "'");
    }
    value.canonicalize();
    coeffs[power / 2] += value;
  }
  return PotentialSpec(std::move(coeffs));
}

PotentialSpec PotentialSpec::quartic(const mpq_class& a) { return PotentialSpec({{1, 1}, {2, a}}); }

mpq_class PotentialSpec::coefficient(int half_degree) const {
  auto it = coefficients_.find(half_degree);
  return it == coefficients_.end() ? mpq_class(0) : it->second;
}

std::string PotentialSpec::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, v] : coefficients_) {
    if (!first) os << " + ";
    first = false;
    os << v.get_str();
    if (m > 0) os << " x^" << 2 * m;
  }
  return os.str();
}

Parity::Parity(int s) : s_(s) {
  if (s != 0 && s != 1) throw std::invalid_argument("parity must be 0 or 1");
}

RiccatiSeries riccati_coefficients(const PotentialSpec& pot, Parity parity, const DualReal& energy,
                                   int count) {
  if (count < 1) throw std::invalid_argument("riccati_coefficients: count must be >= 1");
  if (!energy.primal.is_finite()) throw std::invalid_argument("riccati_coefficients: non-finite energy");
  return {energy, parity, riccati_recursion(pot, parity, energy, count)};
}

std::vector<BigReal> residual_check(const RiccatiSeries& series, const PotentialSpec& pot, int order) {
  if (order < 0 || static_cast<std::size_t>(order) + 1 > series.count()) {
    throw std::invalid_argument("residual_check: order exceeds series length");
  }
  const BigReal& e = series.energy.primal;
  const BigReal zero = e.constant(0);
  const std::size_t top = 2 * series.count();  // degree of f is 2N+1

  // dense f(x) by power of x
  std::vector<BigReal> f(top + 1, zero);
  for (std::size_t j = 0; j < series.count(); ++j) f[2 * j + 1] = series.coeffs[j].primal;

  const auto want = static_cast<std::size_t>(2 * order);
  std::vector<BigReal> r(want + 1, zero);
  for (std::size_t p = 0; p <= want; ++p) {
    // f' and 2s f/x both contribute coefficient of x^p from f's x^{p+1} term
    if (p + 1 <= top) r[p] += f[p + 1] * static_cast<long>(p + 1 + 2 * series.parity.s());
    // -f^2, naive Cauchy product
    for (std::size_t i = 0; i <= p; ++i) r[p] -= f[i] * f[p - i];
    if (p % 2 == 0) r[p] += e.constant(pot.coefficient(static_cast<int>(p / 2)));
  }
  r[0] -= e;
  return r;
}

}  // namespace rpm
