#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "ptscarf/core_model.hpp"
#include "ptscarf/superpotential.hpp"

namespace ptscarf {

enum class FamilyOrigin { Primary, Sl2Exchanged };

std::string_view to_string(FamilyOrigin o);

struct Level {
  int n = 0;
  cplx energy;
};

/// Bound levels E_n = -(a - n alpha)^2 generated from one superpotential by the
/// shape-invariance step a -> a - alpha.
struct EnergyFamily {
  std::optional<Sector> sector;
  FamilyOrigin origin = FamilyOrigin::Primary;
  cplx a;  ///< effective tanh coefficient
  double alpha = 1.0;
  std::vector<Level> levels;
};

/// Number of n >= 0 with Re(a) - n alpha > 0 (threshold states excluded).
int bound_state_count(cplx a, double alpha);

/// Throws NonNormalizableError if Re(a) <= 0.
EnergyFamily spectrum_family(const Superpotential& w);

/// Family obtained from the sl(2)-exchanged parameters (A' = B - alpha/2) of an
/// unbroken potential. Empty when B - alpha/2 <= 0.
EnergyFamily second_family_unbroken(const Params& p);

/// (Plus, Minus) families of a broken potential; element-wise complex conjugates.
std::pair<EnergyFamily, EnergyFamily> bifurcated_spectrum(const Params& p);

/// Every analytic bound level of a PT-symmetric potential with multiplicity:
/// primary plus sl(2) family when unbroken, both sectors when broken.
std::vector<EnergyFamily> analytic_families(const Params& p);

} // namespace ptscarf
