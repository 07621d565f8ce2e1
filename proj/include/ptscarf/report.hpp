#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ptscarf/core_model.hpp"
#include "ptscarf/verify_spectrum.hpp"

namespace ptscarf {

/// Process exit codes; a stable contract for scripts.
namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kVerifyFailure = 1;
inline constexpr int kRegime = 2;
inline constexpr int kValidation = 3;
inline constexpr int kMatch = 4;
inline constexpr int kConvergence = 5;
} // namespace exit_code

enum class OutputFormat { Json, Csv };

struct ScanRange {
  double c_min = 0.0;
  double c_max = 0.0;
  int steps = 2;
};

struct RunConfig {
  Params params;
  SolverConfig solver;
  double param_tol = kParamTol;
  std::optional<std::string> out;
  OutputFormat format = OutputFormat::Json;
  std::optional<ScanRange> scan;
  int jobs = 1;

  /// Throws ValidationError.
  void validate() const;
};

/// Result of one CLI subcommand: what to print, where errors go, how to exit.
struct RunResult {
  int exit_code = exit_code::kSuccess;
  std::string output;   ///< report body (JSON or CSV)
  std::string message;  ///< human-readable diagnostic for standard error
};

nlohmann::json to_json(cplx z);
nlohmann::json to_json(const Params& p);
nlohmann::json to_json(const Superpotential& w);
nlohmann::json to_json(const PotentialCoeffs& v);
nlohmann::json to_json(const SpectrumReport& r, double pairing_tol);

/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const nlohmann::json& j);

/// Superpotential(s), partner potential, regime and PT verdict.
RunResult run_potential(const RunConfig& cfg);
/// Analytic vs numerical spectrum; exit 4 when levels are unmatched.
RunResult run_spectrum(const RunConfig& cfg);
/// c_pt sweep along the broken constraint, one row per (point, level).
RunResult run_scan(const RunConfig& cfg);
/// Property suite; exit 1 when any property fails.
RunResult run_verify(const RunConfig& cfg);

struct ScanRow {
  std::size_t run_id = 0;
  double c_pt = 0.0;
  double B = 0.0;
  std::string sector;  ///< plus, minus, none, or unassigned for stray numeric levels
  std::string family;  ///< primary, sl2_exchanged, or empty
  int n = -1;
  std::optional<cplx> analytic;
  std::optional<cplx> numeric;
  std::optional<double> abs_err;
  std::string error;
};

/// The sweep itself, independent of output formatting. Rows ordered by
/// (c_pt, sector, n, family) regardless of evaluation order.
std::vector<ScanRow> scan_rows(const RunConfig& cfg);

std::string scan_csv(const std::vector<ScanRow>& rows);

} // namespace ptscarf
