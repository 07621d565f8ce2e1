#pragma once

#include <optional>
#include <vector>

#include "ptscarf/analytic_spectrum.hpp"
#include "ptscarf/bound_states.hpp"
#include "ptscarf/core_model.hpp"
#include "ptscarf/eigensolver.hpp"
#include "ptscarf/errors.hpp"
#include "ptscarf/grid.hpp"
#include "ptscarf/matching.hpp"

namespace ptscarf {

struct SolverConfig {
  /// Defaults to 20 / alpha.
  std::optional<double> half_width;
  std::size_t n_points = 4001;
  int order = 4;
  double match_tol = 5e-3;
  double pairing_tol = 1e-3;
  /// |Im E| below this counts as real.
  double real_tol = 1e-6;
  /// Overlap threshold for PT-invariance of ground states.
  double overlap_tol = 1e-6;
  BoundStateOptions bound;
  EigenOptions eigen;
  SpectrumPath path = SpectrumPath::Auto;

  Grid make_grid(double alpha) const;
  /// Throws ValidationError on non-positive tolerances.
  void validate() const;
};

struct AnalyticLevel {
  FamilyOrigin origin = FamilyOrigin::Primary;
  std::optional<Sector> sector;
  int n = 0;
  cplx energy;
};

struct NumericLevel {
  cplx energy;
  double boundary_ratio = 0.0;
};

struct PtDiagnostics {
  double potential_defect = 0.0;  ///< max |V(-x)* - V(x)| on the grid
  bool potential_pt_symmetric = false;
  /// |<PT psi0, psi0>| / |psi0|^2 of the (Plus-sector) analytic ground state.
  double ground_state_self_overlap = 0.0;
  bool ground_state_pt_invariant = false;
  /// Broken only: |<PT psi0+, psi0->| / (|psi0+| |psi0-|).
  std::optional<double> sector_swap_overlap;
  std::optional<bool> sector_swap;
  /// Same two overlaps measured on the numerical eigenvectors matched to E0.
  std::optional<double> numeric_self_overlap;
  std::optional<double> numeric_swap_overlap;
};

struct SpectrumReport {
  Params params;
  Regime regime = Regime::Unbroken;
  double half_width = 0.0;
  std::size_t n_points = 0;
  int order = 4;
  double match_tol = 0.0;
  std::size_t eigenvalue_count = 0;
  double trace_defect = 0.0;  ///< |sum E - tr H| / |H|_F
  std::vector<AnalyticLevel> analytic;
  std::vector<NumericLevel> numerical;
  std::vector<Match> matches;
  std::vector<std::size_t> unmatched_analytic;
  std::vector<std::size_t> unmatched_numeric;
  bool used_hungarian = false;
  PairingReport pairing;
  double max_abs_imag = 0.0;  ///< over numerical bound states
  PtDiagnostics pt;

  bool all_matched() const { return unmatched_analytic.empty(); }
};

class MatchError : public Error {
public:
  MatchError(const std::string& what, SpectrumReport report) : Error(what), report_(std::move(report)) {}
  const SpectrumReport& report() const { return report_; }

private:
  SpectrumReport report_;
};

/// Flattens analytic_families into a level list (families in order, n ascending).
std::vector<AnalyticLevel> analytic_levels(const Params& p);

/// Full analytic-vs-numerical comparison; never throws on unmatched levels.
SpectrumReport compute_spectrum_report(const Params& p, const SolverConfig& cfg = {});

/// As compute_spectrum_report, but throws MatchError (carrying the report) if
/// any analytic level lacks a numerical partner.
SpectrumReport verify_spectrum(const Params& p, const SolverConfig& cfg = {});

} // namespace ptscarf
