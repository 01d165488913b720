#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gent::cli {

inline constexpr const char* kVersion = "0.1.0";

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitUnphysical = 2,
  kExitEntangled = 3,
  kExitNotSymmetric = 4,
  kExitSupport = 5,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

enum class Measure { Bures, Relent, Both };
enum class SweepParam { KappaTilde, R };
enum class SweepFormat { Csv, Json };

struct SweepSpec {
  Measure measure = Measure::Both;
  SweepParam parameter = SweepParam::R;
  double start = 0;
  double stop = 1;
  int steps = 11;
  double nbar = 0;
  std::string output;  ///< empty or "-" writes to stdout
  SweepFormat format = SweepFormat::Csv;
};

struct SweepRow {
  double param = 0;
  double b = 0;
  double c = 0;
  double d = 0;
  double kappa_plus = 0;
  double kappa_minus = 0;
  double kappa_tilde_minus = 0;
  std::optional<double> e_b;
  std::optional<double> e_s;
  std::optional<double> x1_star;
  std::optional<double> x2_star;
};

inline constexpr const char* kSweepHeader =
    "param,b,c,d,kappa_plus,kappa_minus,kappa_tilde_minus,e_b,e_s,x1_star,x2_star";

/// Throws ParseError for an inconsistent spec.
void validate(const SweepSpec& spec);

/// Rows in parameter order; rows are evaluated on a pool of worker threads.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows, const SweepSpec& spec);

}  // namespace gent::cli
