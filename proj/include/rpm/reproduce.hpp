#pragma once

// Published reference strings for the quartic oscillator V = x^2 + A x^4 and
// the reproduction runs that recompute and compare them.

#include "rpm/bounds.hpp"
#include "rpm/report.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace rpm {

namespace reference {

struct RowStrings {
  int dimension;
  const char* lower;
  const char* upper;
};

/// A = 1/10, n = 0, D = 2..15, 40 significant digits.
inline constexpr std::array<RowStrings, 14> tenth_ground_rows{{
    {2, "1.065165589106464508643143086785809633638",
     "1.065291556141124441135238488833718516162"},
    {3, "1.065285181369961298428253752818854854099",
     "1.065285528386575099263974255031454998383"},
    {4, "1.065285508412319469577830463652960342502",
     "1.065285509614182897898433926644472417431"},
    {5, "1.065285509539192592585488356076943661193",
     "1.065285509544015954376247941103453239435"},
    {6, "1.065285509543697581134961945367065150205",
     "1.065285509543719071409991810845081902423"},
    {7, "1.065285509543717592126285592017093474034",
     "1.065285509543717695730809861353737125740"},
    {8, "1.065285509543717688361781653356859779602",
     "1.065285509543717688893236061269397044334"},
    {9, "1.065285509543717688854423603909817897904",
     "1.065285509543717688857290648469407292386"},
    {10, "1.065285509543717688857076639211237627062",
     "1.065285509543717688857092767847161100393"},
    {11, "1.065285509543717688857091541516086073081",
     "1.065285509543717688857091635527212915542"},
    {12, "1.065285509543717688857091628265134465940",
     "1.065285509543717688857091628830109065701"},
    {13, "1.065285509543717688857091628785862167126",
     "1.065285509543717688857091628789349091100"},
    {14, "1.065285509543717688857091628789072686577",
     "1.065285509543717688857091628789094718040"},
    {15, "1.065285509543717688857091628789092952804",
     "1.065285509543717688857091628789093094939"},
}};

struct StateStrings {
  int n;
  const char* lower;
  const char* claim;  // iterative (AIM) estimate quoted alongside the bounds
  const char* upper;
  int claim_agreed_digits;  // prefix comparison of the printed strings
};

/// A = 1/10, D = 15, 40 significant digits.
inline constexpr std::array<StateStrings, 4> tenth_states{{
    {0, "1.065285509543717688857091628789092952804", "1.06528550954371768885687796202255128719116328284144",
     "1.065285509543717688857091628789093094939", 21},
    {1, "3.306872013152913507128121684692867756592", "3.30687201315291350712686699320208560948231024667621",
     "3.306872013152913507128121684692869154624", 21},
    {2, "5.747959268833563304733503118475917140926", "5.74795926883356330473447484696869480558234499767423",
     "5.747959268833563304733503118477229464674", 21},
    {3, "8.352677825785754712155257734637775310436", "8.35267782578575471215441908268140025484171928837895",
     "8.352677825785754712155257734644178775630", 21},
}};

/// A = 2, n = 0, D = 15, 30 significant digits, and a 13-digit estimate.
inline constexpr const char* two_lower = "1.60754130246854753870817192941";
inline constexpr const char* two_upper = "1.60754130246854753870817192948";
inline constexpr const char* two_claim = "1.607541302469";
inline constexpr int two_claim_digits = 13;

}  // namespace reference

enum class ReproduceTarget { table1, table2, a2 };

/// Throws ReportError for anything but table1, table2 or a2.
ReproduceTarget parse_reproduce_target(std::string_view name);
std::string_view target_name(ReproduceTarget target);

struct EntryCheck {
  std::string label;
  std::string expected;
  std::string computed;
  [[nodiscard]] bool pass() const { return expected == computed; }
};

struct AuditCheck {
  AuditVerdict verdict;
  int expected_digits;
  [[nodiscard]] bool pass() const { return verdict.agreed_digits == expected_digits; }
};

struct Reproduction {
  ReproduceTarget target;
  std::vector<EntryCheck> entries;
  std::vector<AuditCheck> audits;

  [[nodiscard]] bool all_pass() const;
  /// One PASS/FAIL line per entry and audit, then a count line.
  [[nodiscard]] std::string report() const;
};

/// Recomputes the target at the given precision (D_max = 15) and compares the
/// round-half-even renderings with the reference strings.
Reproduction reproduce(ReproduceTarget target, const PrecisionContext& ctx, Execution exec = Execution::parallel);

}  // namespace rpm
