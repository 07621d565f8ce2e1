#include "ptscarf/analytic_spectrum.hpp"

#include <cmath>

#include "ptscarf/errors.hpp"

namespace ptscarf {

std::string_view to_string(FamilyOrigin o) {
  return o == FamilyOrigin::Primary ? "primary" : "sl2_exchanged";
}

int bound_state_count(cplx a, double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");
  const double re = a.real();
  if (!(re > 0.0)) return 0;
  // Largest n with re - n alpha > 0, strictly.
  int count = static_cast<int>(std::ceil(re / alpha));
  while (count > 0 && re - (count - 1) * alpha <= 0.0) --count;
  while (re - count * alpha > 0.0) ++count;
  return count;
}

EnergyFamily spectrum_family(const Superpotential& w) {
  EnergyFamily fam;
  fam.a = w.a;
  fam.alpha = w.alpha;
  const cplx e0 = ground_state_energy(w);
  const int count = bound_state_count(w.a, w.alpha);
  fam.levels.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    const cplx shifted = w.a - static_cast<double>(n) * w.alpha;
    fam.levels.push_back({n, n == 0 ? e0 : -shifted * shifted});
  }
  return fam;
}

EnergyFamily second_family_unbroken(const Params& p) {
  p.validate();
  if (classify_regime(p) != Regime::Unbroken) {
    throw RegimeError("second_family_unbroken requires c_pt = 0");
  }
  const Params q = sl2_exchange(p, Sector::Plus);
  EnergyFamily fam;
  fam.origin = FamilyOrigin::Sl2Exchanged;
  fam.alpha = p.alpha;
  fam.a = cplx(q.A, 0.0);
  if (q.A <= 0.0) return fam;
  EnergyFamily levels = spectrum_family(build_unbroken(q));
  fam.levels = std::move(levels.levels);
  return fam;
}

std::pair<EnergyFamily, EnergyFamily> bifurcated_spectrum(const Params& p) {
  auto [wp, wm] = build_broken_pair(p);
  EnergyFamily plus = spectrum_family(wp);
  EnergyFamily minus = spectrum_family(wm);
  plus.sector = Sector::Plus;
  minus.sector = Sector::Minus;
  return {plus, minus};
}

std::vector<EnergyFamily> analytic_families(const Params& p) {
  p.validate();
  switch (classify_regime(p)) {
  case Regime::Unbroken:
    return {spectrum_family(build_unbroken(p)), second_family_unbroken(p)};
  case Regime::Broken: {
    auto [plus, minus] = bifurcated_spectrum(p);
    return {plus, minus};
  }
  case Regime::NotPtSymmetric:
    break;
  }
  throw RegimeError("not PT-symmetric: c_pt*(2(A-B)+alpha) != 0");
}

} // namespace ptscarf
