#pragma once

#include <complex>
#include <utility>

#include "ptscarf/core_model.hpp"
#include "ptscarf/grid.hpp"

namespace ptscarf {

/// W(x) = a tanh(alpha x) + b sech(alpha x).
struct Superpotential {
  cplx a;
  cplx b;
  double alpha = 1.0;

  cplx operator()(double x) const;
  /// W'(x) = a alpha sech^2 - b alpha sech tanh, evaluated in closed form.
  cplx derivative(double x) const;
};

/// V(x) = s sech^2(alpha x) + t sech(alpha x) tanh(alpha x) + c0.
struct PotentialCoeffs {
  cplx s;
  cplx t;
  cplx c0{0.0, 0.0};
  double alpha = 1.0;

  cplx operator()(double x) const;
};

/// W = A tanh + i B sech. Requires Unbroken params.
Superpotential build_unbroken(const Params& p);

/// The broken-regime pair (W+, W-): a = A +- i c_pt, b = +-c_pt + i (A + alpha/2).
std::pair<Superpotential, Superpotential> build_broken_pair(const Params& p);

/// Superpotential of one sector; dispatches on the regime.
Superpotential build_sector(const Params& p, Sector s);

cplx evaluate(const Superpotential& w, double x);

/// V- = W^2 - W' - a^2:  s = b^2 - a^2 - a alpha,  t = b (2a + alpha),  c0 = 0.
PotentialCoeffs partner_potential_minus(const Superpotential& w);

/// V+ = W^2 + W' - a^2:  s = b^2 - a^2 + a alpha,  t = b (2a - alpha),  c0 = 0.
PotentialCoeffs partner_potential_plus(const Superpotential& w);

/// -a^2. Throws NonNormalizableError if Re(a) <= 0.
cplx ground_state_energy(const Superpotential& w);

/// exp(-int_0^x W) sampled on g and normalized, by cumulative trapezoid quadrature
/// with the Euler-Maclaurin end correction (W' is known exactly).
Wavefunction ground_state_wavefunction(const Superpotential& w, const Grid& g);

/// Closed form cosh(alpha x)^(-a/alpha) exp(-(b/alpha) gd(alpha x)), normalized.
Wavefunction ground_state_closed_form(const Superpotential& w, const Grid& g);

/// Gudermannian 2 atan(tanh(x/2)).
double gudermannian(double x);

/// True iff |Im s|, |Re t|, |Im c0| are all <= tol, i.e. V(-x)* == V(x).
bool check_pt_symmetric_potential(const PotentialCoeffs& v, double tol = kParamTol);

/// Closed-form unbroken potential: s = -[A(A+alpha) + B^2], t = i B (2A + alpha).
PotentialCoeffs unbroken_potential_closed_form(const Params& p);

/// Closed-form broken potential:
/// s = -[2A(A+alpha) - 2c^2 + alpha^2/4], t = i [2A(A+alpha) + 2c^2 + alpha^2/2].
PotentialCoeffs broken_potential_closed_form(const Params& p);

} // namespace ptscarf
