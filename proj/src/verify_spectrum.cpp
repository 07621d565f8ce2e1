#include "ptscarf/verify_spectrum.hpp"

#include <cmath>
#include <sstream>

#include <spdlog/spdlog.h>

#include "ptscarf/discretize.hpp"
#include "ptscarf/superpotential.hpp"

namespace ptscarf {

Grid SolverConfig::make_grid(double alpha) const {
  return Grid(half_width.value_or(20.0 / alpha), n_points);
}

void SolverConfig::validate() const {
  if (!(match_tol > 0.0) || !(pairing_tol > 0.0) || !(real_tol > 0.0) || !(overlap_tol > 0.0) ||
      !(bound.boundary_eps > 0.0)) {
    throw ValidationError("tolerances must be positive");
  }
  if (order != 2 && order != 4) throw ValidationError("stencil order must be 2 or 4");
}

std::vector<AnalyticLevel> analytic_levels(const Params& p) {
  std::vector<AnalyticLevel> out;
  for (const auto& fam : analytic_families(p)) {
    for (const auto& lvl : fam.levels) out.push_back({fam.origin, fam.sector, lvl.n, lvl.energy});
  }
  return out;
}

namespace {

double frobenius(const BandedHamiltonian& h) {
  double acc = 0.0;
  const int n = h.dim();
  for (int r = 0; r < n; ++r) {
    for (int c = std::max(0, r - h.bandwidth()); c <= std::min(n - 1, r + h.bandwidth()); ++c) {
      acc += std::norm(h.at(r, c));
    }
  }
  return std::sqrt(acc);
}

/// Index of the numerical level matched to the analytic level (sector, n = 0).
std::optional<std::size_t> matched_ground(const SpectrumReport& rep, std::optional<Sector> sector) {
  for (const auto& m : rep.matches) {
    const auto& a = rep.analytic[m.analytic];
    if (a.origin == FamilyOrigin::Primary && a.n == 0 && a.sector == sector) return m.numeric;
  }
  return std::nullopt;
}

} // namespace

SpectrumReport compute_spectrum_report(const Params& p, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  SpectrumReport rep;
  rep.params = p;
  rep.regime = classify_regime(p);
  if (rep.regime == Regime::NotPtSymmetric) {
    throw RegimeError("not PT-symmetric: c_pt*(2(A-B)+alpha) != 0");
  }
  const Grid grid = cfg.make_grid(p.alpha);
  rep.half_width = grid.half_width();
  rep.n_points = grid.size();
  rep.order = cfg.order;
  rep.match_tol = cfg.match_tol;

  rep.analytic = analytic_levels(p);

  const Superpotential w0 = build_sector(p, Sector::Plus);
  const PotentialCoeffs v = partner_potential_minus(w0);
  const BandedHamiltonian h(v, grid, cfg.order);

  spdlog::debug("spectrum: A={} B={} alpha={} c_pt={} regime={} L={} n={} order={}", p.A, p.B, p.alpha, p.c_pt,
               to_string(rep.regime), grid.half_width(), grid.size(), cfg.order);
  const std::vector<cplx> eigs = hamiltonian_eigenvalues(h, cfg.path, cfg.eigen);
  rep.eigenvalue_count = eigs.size();
  cplx sum{0.0, 0.0};
  for (const auto& e : eigs) sum += e;
  rep.trace_defect = std::abs(sum - h.trace()) / std::max(frobenius(h), 1.0);

  const std::vector<Eigenpair> bound = find_bound_states(h, eigs, cfg.bound);
  std::vector<cplx> numeric;
  for (const auto& b : bound) {
    rep.numerical.push_back({b.energy, b.boundary_ratio});
    numeric.push_back(b.energy);
    rep.max_abs_imag = std::max(rep.max_abs_imag, std::abs(b.energy.imag()));
  }
  spdlog::debug("spectrum: {} eigenvalues, {} bound states", eigs.size(), bound.size());

  std::vector<cplx> analytic;
  for (const auto& a : rep.analytic) analytic.push_back(a.energy);
  Assignment asg = match_levels(analytic, numeric, cfg.match_tol);
  rep.matches = std::move(asg.matches);
  rep.unmatched_analytic = std::move(asg.unmatched_analytic);
  rep.unmatched_numeric = std::move(asg.unmatched_numeric);
  rep.used_hungarian = asg.used_hungarian;
  rep.pairing = conjugate_pairing_check(numeric, cfg.real_tol);

  // PT diagnostics.
  rep.pt.potential_defect = h.pt_defect();
  rep.pt.potential_pt_symmetric = check_pt_symmetric_potential(v) && rep.pt.potential_defect <= kParamTol *
      std::max(1.0, std::abs(v.s) + std::abs(v.t));
  const Wavefunction psi0 = ground_state_wavefunction(w0, grid);
  rep.pt.ground_state_self_overlap = normalized_overlap(pt_apply(psi0), psi0);
  rep.pt.ground_state_pt_invariant = rep.pt.ground_state_self_overlap >= 1.0 - cfg.overlap_tol;

  const std::optional<Sector> primary_sector =
      rep.regime == Regime::Broken ? std::optional<Sector>(Sector::Plus) : std::nullopt;
  if (auto k = matched_ground(rep, primary_sector)) {
    const Wavefunction& num = bound[*k].psi;
    rep.pt.numeric_self_overlap = normalized_overlap(pt_apply(num), num);
  }
  if (rep.regime == Regime::Broken) {
    const Wavefunction psi_minus = ground_state_wavefunction(build_sector(p, Sector::Minus), grid);
    rep.pt.sector_swap_overlap = normalized_overlap(pt_apply(psi0), psi_minus);
    rep.pt.sector_swap = *rep.pt.sector_swap_overlap >= 1.0 - cfg.overlap_tol;
    const auto kp = matched_ground(rep, Sector::Plus);
    const auto km = matched_ground(rep, Sector::Minus);
    if (kp && km) rep.pt.numeric_swap_overlap = normalized_overlap(pt_apply(bound[*kp].psi), bound[*km].psi);
  }
  return rep;
}

SpectrumReport verify_spectrum(const Params& p, const SolverConfig& cfg) {
  SpectrumReport rep = compute_spectrum_report(p, cfg);
  if (!rep.all_matched()) {
    std::ostringstream os;
    os << rep.unmatched_analytic.size() << " analytic level(s) without a numerical partner within tolerance";
    throw MatchError(os.str(), std::move(rep));
  }
  return rep;
}

} // namespace ptscarf
