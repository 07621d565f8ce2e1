#pragma once

#include <complex>
#include <vector>

#include "ptscarf/discretize.hpp"
#include "ptscarf/grid.hpp"

namespace ptscarf {

struct BoundStateOptions {
  /// Largest accepted near-boundary amplitude relative to max |psi|.
  double boundary_eps = 1e-4;
  /// Minimum Re sqrt(-E) * L; rejects the discretized continuum on [0, inf).
  double min_decay = 1.0;
  int inverse_iterations = 3;
};

struct Eigenpair {
  cplx energy;
  Wavefunction psi;
  /// max(|psi(+-(L-h))|, |psi(+-(L-5h))|) / max |psi|.
  double boundary_ratio = 1.0;
};

/// Decay rate Re sqrt(-E) of exp(-kappa |x|) tails (principal branch).
double decay_rate(cplx energy);

/// Near-boundary amplitude of psi relative to its maximum.
double boundary_ratio(const Wavefunction& psi);

/// Eigenvector for a computed eigenvalue by inverse iteration with the
/// eigenvalue itself as shift.
Eigenpair inverse_iteration(const BandedHamiltonian& h, cplx eigenvalue, int iterations = 3);

/// Keeps eigenvalues whose eigenvector is localized away from the boundary and
/// whose tails decay. vectors[i] belongs to eigs[i].
std::vector<cplx> filter_bound_states(const std::vector<cplx>& eigs, const std::vector<Wavefunction>& vectors,
                                      const BoundStateOptions& opts = {});

/// Runs the decay pre-screen, inverse iteration on the survivors and the
/// boundary filter. Result is sorted by (Re E, Im E).
std::vector<Eigenpair> find_bound_states(const BandedHamiltonian& h, const std::vector<cplx>& eigs,
                                         const BoundStateOptions& opts = {});

} // namespace ptscarf
