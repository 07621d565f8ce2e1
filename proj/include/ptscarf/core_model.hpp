#pragma once

#include <complex>
#include <string_view>

namespace ptscarf {

using cplx = std::complex<double>;

/// Absolute tolerance on parameter-space identities.
inline constexpr double kParamTol = 1e-12;

/// Complex Scarf-II parameters. Units follow hbar = 2m = 1: A, B and c_pt are
/// sqrt(energy), alpha is an inverse length.
struct Params {
  double A = 0.0;
  double B = 0.0;
  double alpha = 1.0;
  double c_pt = 0.0;

  /// Throws ValidationError unless alpha > 0 and every field is finite.
  void validate() const;

  friend bool operator==(const Params&, const Params&) = default;
};

enum class Regime { Unbroken, Broken, NotPtSymmetric };
enum class Sector { Plus, Minus };

std::string_view to_string(Regime r);
std::string_view to_string(Sector s);

inline Sector opposite(Sector s) { return s == Sector::Plus ? Sector::Minus : Sector::Plus; }
/// +1 for Plus, -1 for Minus.
inline double sign_of(Sector s) { return s == Sector::Plus ? 1.0 : -1.0; }

/// Value of the PT condition product c_pt * (2(A - B) + alpha).
double pt_condition_product(const Params& p);

bool check_pt_condition(const Params& p, double tol = kParamTol);

Regime classify_regime(const Params& p, double tol = kParamTol);

/// The complex pair (calA, calB) = (A + s i c_pt, B - s i c_pt) for sector s.
struct Sl2Pair {
  cplx calA;
  cplx calB;
  double alpha = 1.0;
};

Sl2Pair to_sl2_pair(const Params& p, Sector s);

/// calA + alpha/2 <-> calB on an arbitrary complex pair.
Sl2Pair sl2_exchange(const Sl2Pair& q);

/// Re-expresses a pair as Params for sector s. Throws RepresentationError when
/// Im(calA) != -Im(calB), i.e. the pair leaves the conjugate-linked family.
Params to_params(const Sl2Pair& q, Sector s, double tol = kParamTol);

/// Exchange on Params; an involution.
Params sl2_exchange(const Params& p, Sector s, double tol = kParamTol);

/// Params on the broken-PT constraint B = A + alpha/2. Throws DomainError if c_pt == 0.
Params broken_constraint_params(double A, double alpha, double c_pt);

} // namespace ptscarf
