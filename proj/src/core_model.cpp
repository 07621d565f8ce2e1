#include "ptscarf/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ptscarf/errors.hpp"

namespace ptscarf {

void Params::validate() const {
  if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(alpha) || !std::isfinite(c_pt)) {
    throw ValidationError("parameters must be finite");
  }
  if (!(alpha > 0.0)) {
    std::ostringstream os;
    os << "alpha must be positive, got " << alpha;
    throw ValidationError(os.str());
  }
}

std::string_view to_string(Regime r) {
  switch (r) {
  case Regime::Unbroken: return "unbroken";
  case Regime::Broken: return "broken";
  case Regime::NotPtSymmetric: return "not_pt_symmetric";
  }
  return "?";
}

std::string_view to_string(Sector s) { return s == Sector::Plus ? "plus" : "minus"; }

double pt_condition_product(const Params& p) { return p.c_pt * (2.0 * (p.A - p.B) + p.alpha); }

bool check_pt_condition(const Params& p, double tol) {
  const double scale =
      std::max(1.0, std::abs(p.c_pt) * (2.0 * std::abs(p.A) + 2.0 * std::abs(p.B) + p.alpha));
  return std::abs(pt_condition_product(p)) <= tol * scale;
}

Regime classify_regime(const Params& p, double tol) {
  if (std::abs(p.c_pt) <= tol) return Regime::Unbroken;
  const double scale = std::max(1.0, 2.0 * std::abs(p.A) + 2.0 * std::abs(p.B) + p.alpha);
  if (std::abs(2.0 * (p.A - p.B) + p.alpha) <= tol * scale) return Regime::Broken;
  return Regime::NotPtSymmetric;
}

Sl2Pair to_sl2_pair(const Params& p, Sector s) {
  const double sg = sign_of(s);
  return {cplx(p.A, sg * p.c_pt), cplx(p.B, -sg * p.c_pt), p.alpha};
}

Sl2Pair sl2_exchange(const Sl2Pair& q) {
  const double half = 0.5 * q.alpha;
  return {q.calB - half, q.calA + half, q.alpha};
}

Params to_params(const Sl2Pair& q, Sector s, double tol) {
  const double scale = std::max({1.0, std::abs(q.calA), std::abs(q.calB)});
  if (std::abs(q.calA.imag() + q.calB.imag()) > tol * scale) {
    std::ostringstream os;
    os << "pair (" << q.calA << ", " << q.calB
       << ") is not of the form (A + i c, B - i c)";
    throw RepresentationError(os.str());
  }
  // calA = A + s i c  =>  c = s Im(calA); average with the calB reading.
  const double sg = sign_of(s);
  const double c = sg * 0.5 * (q.calA.imag() - q.calB.imag());
  return {q.calA.real(), q.calB.real(), q.alpha, c};
}

Params sl2_exchange(const Params& p, Sector s, double tol) {
  p.validate();
  return to_params(sl2_exchange(to_sl2_pair(p, s)), s, tol);
}

Params broken_constraint_params(double A, double alpha, double c_pt) {
  if (c_pt == 0.0) throw DomainError("broken regime requires c_pt != 0");
  Params p{A, A + 0.5 * alpha, alpha, c_pt};
  p.validate();
  return p;
}

} // namespace ptscarf
