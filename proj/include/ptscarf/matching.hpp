#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ptscarf {

using cplx = std::complex<double>;

/// tol for |E| <= 1, tol * |E| above.
double match_tolerance(cplx energy, double tol);

struct Match {
  std::size_t analytic;
  std::size_t numeric;
  double error;
};

struct Assignment {
  std::vector<Match> matches;  ///< sorted by analytic index
  std::vector<std::size_t> unmatched_analytic;
  std::vector<std::size_t> unmatched_numeric;
  bool used_hungarian = false;
};

/// One-to-one nearest-neighbour assignment. Greedy by ascending error, with a
/// Hungarian fallback when greedy strands an analytic level that has a
/// candidate within tolerance. Deterministic: ties break on indices.
Assignment match_levels(const std::vector<cplx>& analytic, const std::vector<cplx>& numeric, double tol);

/// Minimum-cost assignment of rows to distinct columns; rows <= cols required.
/// Returns the column for each row.
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost);

struct ConjugatePair {
  std::size_t upper;  ///< index with Im > 0
  std::size_t lower;  ///< index with Im < 0
  double defect;      ///< |E_upper - conj(E_lower)|
};

struct PairingReport {
  std::vector<ConjugatePair> pairs;
  std::vector<std::size_t> self_paired;  ///< |Im E| <= real_tol
  std::vector<std::size_t> unpaired;
  double max_defect = 0.0;
};

/// Greedily pairs each non-real eigenvalue with its nearest conjugate partner.
PairingReport conjugate_pairing_check(const std::vector<cplx>& eigs, double real_tol);

} // namespace ptscarf
