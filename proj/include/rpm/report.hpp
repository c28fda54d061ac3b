#pragma once

// Digit-agreement audits of published eigenvalue strings against computed
// bound intervals, and table output (plain, CSV, JSON).

#include "rpm/bounds.hpp"

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rpm {

class ReportError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite decimal, value = (negative ? -1 : 1) * 0.digits * 10^exponent,
/// digits without leading zeros (empty for zero). Accepts an optional sign,
/// a decimal point and an e/E exponent.
struct Decimal {
  bool negative = false;
  std::string digits;
  long exponent = 0;

  static Decimal parse(std::string_view text);
  [[nodiscard]] bool is_zero() const { return digits.empty(); }
  [[nodiscard]] int significant_digits() const { return static_cast<int>(digits.size()); }
  [[nodiscard]] mpq_class exact() const;
};

struct Claim {
  std::string label;
  std::string value;
};

struct AuditVerdict {
  Claim claim;
  std::string lower;
  std::string upper;
  /// claimed_digits when the claim is a correct rounding of some number in
  /// [lower, upper]; otherwise the largest p such that some number in the
  /// interval starts with the claim's first p significant digits.
  int agreed_digits = 0;
  int claimed_digits = 0;
  /// Leading significant digits common to lower and upper.
  int interval_digits = 0;
  bool inside = false;
};

/// Throws ReportError naming the offending string on malformed input or
/// lower > upper.
AuditVerdict digit_agreement(const Claim& claim, const std::string& lower, const std::string& upper);
AuditVerdict digit_agreement(const std::string& claim, const std::string& lower, const std::string& upper);

enum class TableFormat { plain, csv, json };

/// Throws ReportError for anything but plain, csv or json.
TableFormat parse_table_format(std::string_view name);

/// One line per D with both bounds at `digits` significant digits (round half
/// to even). CSV: header D,lower,upper; JSON: array of {"D","lower","upper"}
/// with string bounds. Throws NumericError when digits exceed the table's
/// working precision less guard digits.
std::string format_table(const BoundTable& table, int digits, TableFormat format);

struct TableRow {
  int dimension;
  std::string lower;
  std::string upper;
};

/// Inverse of format_table(..., csv). Throws ReportError on malformed input.
std::vector<TableRow> parse_csv_table(std::string_view text);

}  // namespace rpm
