#include "ptscarf/bound_states.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ptscarf/errors.hpp"

namespace ptscarf {

namespace {

bool decays(cplx e, double half_width, const BoundStateOptions& opts) {
  return decay_rate(e) * half_width >= opts.min_decay;
}

bool localized(const Wavefunction& psi, const BoundStateOptions& opts) {
  return boundary_ratio(psi) <= opts.boundary_eps;
}

} // namespace

double decay_rate(cplx energy) { return std::sqrt(-energy).real(); }

double boundary_ratio(const Wavefunction& psi) {
  const std::size_t n = psi.values.size();
  double peak = 0.0;
  for (const auto& v : psi.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0 || n < 3) return 1.0;
  const std::size_t last = n - 1;
  const std::size_t inner1 = 1;
  const std::size_t inner5 = std::min<std::size_t>(5, last / 2);
  const double edge = std::max({std::abs(psi.values[inner1]), std::abs(psi.values[last - inner1]),
                                std::abs(psi.values[inner5]), std::abs(psi.values[last - inner5])});
  return edge / peak;
}

Eigenpair inverse_iteration(const BandedHamiltonian& h, cplx eigenvalue, int iterations) {
  const int n = h.dim();
  std::mt19937_64 rng(0x5ca7f11);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(1.0 + 0.1 * uni(rng), 0.1 * uni(rng));
  v.normalize();

  cplx shift = eigenvalue;
  Eigen::VectorXcd next;
  for (int it = 0; it < std::max(iterations, 1); ++it) {
    int tries = 0;
    while (!h.solve_shifted(shift, v, next)) {
      // Exactly singular: nudge the shift off the eigenvalue.
      const double bump = 1e-12 * std::max(1.0, std::abs(shift)) * std::pow(10.0, tries);
      shift += cplx(bump, bump);
      if (++tries > 6) throw ConvergenceError("inverse iteration: shifted matrix stays singular");
    }
    const double nrm = next.norm();
    if (!std::isfinite(nrm) || nrm == 0.0) throw ConvergenceError("inverse iteration produced a degenerate vector");
    v = next / nrm;
  }
  Eigenpair out{eigenvalue, h.to_wavefunction(v).normalized(), 1.0};
  out.boundary_ratio = boundary_ratio(out.psi);
  return out;
}

std::vector<cplx> filter_bound_states(const std::vector<cplx>& eigs, const std::vector<Wavefunction>& vectors,
                                      const BoundStateOptions& opts) {
  if (eigs.size() != vectors.size()) throw ValidationError("eigenvalue and eigenvector counts differ");
  std::vector<cplx> kept;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (decays(eigs[i], vectors[i].grid.half_width(), opts) && localized(vectors[i], opts)) {
      kept.push_back(eigs[i]);
    }
  }
  return kept;
}

std::vector<Eigenpair> find_bound_states(const BandedHamiltonian& h, const std::vector<cplx>& eigs,
                                         const BoundStateOptions& opts) {
  std::vector<Eigenpair> out;
  const double half_width = h.grid().half_width();
  for (const auto& e : eigs) {
    if (!decays(e, half_width, opts)) continue;
    Eigenpair pair = inverse_iteration(h, e, opts.inverse_iterations);
    if (localized(pair.psi, opts)) out.push_back(std::move(pair));
  }
  std::sort(out.begin(), out.end(), [](const Eigenpair& l, const Eigenpair& r) {
    if (l.energy.real() != r.energy.real()) return l.energy.real() < r.energy.real();
    return l.energy.imag() < r.energy.imag();
  });
  return out;
}

} // namespace ptscarf
