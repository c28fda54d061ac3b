#include "rpm/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <regex>
#include <sstream>

namespace rpm {

namespace {

mpq_class pow10q(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? mpq_class(1, p) : mpq_class(p);
}

Decimal parse_named(const std::string& text, const char* role) {
  try {
    return Decimal::parse(text);
  } catch (const ReportError&) {
    throw ReportError(std::string("malformed decimal for ") + role + ": '" + text + "'");
  }
}

// Leading significant digits shared by two decimals; shorter digit strings
// are padded with zeros.
int common_digits(const Decimal& a, const Decimal& b) {
  if (a.is_zero() || b.is_zero() || a.negative != b.negative || a.exponent != b.exponent) return 0;
  const std::size_t n = std::max(a.digits.size(), b.digits.size());
  for (std::size_t i = 0; i < n; ++i) {
    const char ca = i < a.digits.size() ? a.digits[i] : '0';
    const char cb = i < b.digits.size() ? b.digits[i] : '0';
    if (ca != cb) return static_cast<int>(i);
  }
  return static_cast<int>(n);
}

}  // namespace

Decimal Decimal::parse(std::string_view text) {
  static const std::regex pattern(R"(([+-])?([0-9]*)(?:\.([0-9]*))?(?:[eE]([+-]?[0-9]+))?)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern) || m[2].length() + m[3].length() == 0) {
    throw ReportError("malformed decimal '" + std::string(text) + "'");
  }
  Decimal out;
  out.negative = m[1].matched && m[1].str() == "-";
  const std::string int_part = m[2].str();
  std::string all = int_part + m[3].str();
  long exponent = static_cast<long>(int_part.size());
  if (m[4].matched) {
    const std::string e = m[4].str();
    long shift = 0;
    const char* first = e.data() + (e.front() == '+' ? 1 : 0);
    if (std::from_chars(first, e.data() + e.size(), shift).ec != std::errc{}) {
      throw ReportError("malformed decimal '" + std::string(text) + "'");
    }
    exponent += shift;
  }
  const auto nonzero = all.find_first_not_of('0');
  if (nonzero == std::string::npos) return Decimal{false, "", 0};
  out.digits = all.substr(nonzero);
  out.exponent = exponent - static_cast<long>(nonzero);
  return out;
}

mpq_class Decimal::exact() const {
  if (is_zero()) return 0;
  mpq_class q = mpq_class(mpz_class(digits, 10)) * pow10q(exponent - static_cast<long>(digits.size()));
  return negative ? mpq_class(-q) : q;
}

AuditVerdict digit_agreement(const Claim& claim, const std::string& lower, const std::string& upper) {
  const Decimal t = parse_named(claim.value, "claim");
  const Decimal lo_d = parse_named(lower, "lower bound");
  const Decimal hi_d = parse_named(upper, "upper bound");
  mpq_class lo = lo_d.exact();
  mpq_class hi = hi_d.exact();
  if (lo > hi) throw ReportError("lower bound '" + lower + "' exceeds upper bound '" + upper + "'");

  AuditVerdict v{claim, lower, upper};
  v.claimed_digits = t.significant_digits();
  v.interval_digits = common_digits(lo_d, hi_d);
  const mpq_class value = t.exact();
  v.inside = lo <= value && value <= hi;
  if (t.is_zero()) return v;

  // Mirror so the claim is positive. All c printed digits agree when the
  // claim is a correct c-digit rounding of some value in [lo, hi]; a shorter
  // prefix of p digits agrees when the cell [t_p, t_p + 10^(e-p)) of numbers
  // starting with it meets [lo, hi].
  if (t.negative) {
    std::swap(lo, hi);
    lo = -lo;
    hi = -hi;
  }
  const mpq_class magnitude = value < 0 ? mpq_class(-value) : value;
  const mpq_class half_ulp = pow10q(t.exponent - v.claimed_digits) / 2;
  if (magnitude - half_ulp <= hi && magnitude + half_ulp >= lo) {
    v.agreed_digits = v.claimed_digits;
    return v;
  }
  for (int p = v.claimed_digits - 1; p >= 1; --p) {
    const mpq_class ulp = pow10q(t.exponent - p);
    const mpq_class prefix = mpq_class(mpz_class(t.digits.substr(0, static_cast<std::size_t>(p)), 10)) * ulp;
    if (prefix <= hi && prefix + ulp > lo) {
      v.agreed_digits = p;
      break;
    }
  }
  return v;
}

AuditVerdict digit_agreement(const std::string& claim, const std::string& lower, const std::string& upper) {
  return digit_agreement(Claim{"", claim}, lower, upper);
}

TableFormat parse_table_format(std::string_view name) {
  if (name == "plain") return TableFormat::plain;
  if (name == "csv") return TableFormat::csv;
  if (name == "json") return TableFormat::json;
  throw ReportError("unknown table format '" + std::string(name) + "' (expected plain, csv or json)");
}

std::string format_table(const BoundTable& table, int digits, TableFormat format) {
  table.precision.require_output(digits);
  std::vector<TableRow> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    rows.push_back({r.dimension, render_decimal(r.lower.energy, digits), render_decimal(r.upper.energy, digits)});
  }

  std::ostringstream out;
  switch (format) {
    case TableFormat::csv:
      out << "D,lower,upper\n";
      for (const auto& r : rows) out << r.dimension << ',' << r.lower << ',' << r.upper << '\n';
      break;
    case TableFormat::json: {
      auto arr = nlohmann::json::array();
      for (const auto& r : rows) arr.push_back({{"D", r.dimension}, {"lower", r.lower}, {"upper", r.upper}});
      out << arr.dump(2) << '\n';
      break;
    }
    case TableFormat::plain: {
      std::size_t width = 5;
      for (const auto& r : rows) width = std::max({width, r.lower.size(), r.upper.size()});
      auto pad = [width](const std::string& s) { return s + std::string(width - s.size(), ' '); };
      out << " D  " << pad("lower") << "  upper\n";
      for (const auto& r : rows) {
        const std::string d = std::to_string(r.dimension);
        out << std::string(d.size() < 2 ? 2 - d.size() : 0, ' ') << d << "  " << pad(r.lower) << "  " << r.upper
            << '\n';
      }
      break;
    }
  }
  return out.str();
}

std::vector<TableRow> parse_csv_table(std::string_view text) {
  std::vector<TableRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "D,lower,upper") throw ReportError("csv table: missing header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = a == std::string::npos ? a : line.find(',', a + 1);
    if (b == std::string::npos || line.find(',', b + 1) != std::string::npos) {
      throw ReportError("csv table: malformed row '" + line + "'");
    }
    TableRow row{0, line.substr(a + 1, b - a - 1), line.substr(b + 1)};
    const auto [end, ec] = std::from_chars(line.data(), line.data() + a, row.dimension);
    if (ec != std::errc{} || end != line.data() + a) {
      throw ReportError("csv table: malformed dimension in '" + line + "'");
    }
    Decimal::parse(row.lower);
    Decimal::parse(row.upper);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rpm
