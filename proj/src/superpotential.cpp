#include "ptscarf/superpotential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ptscarf/errors.hpp"

namespace ptscarf {

namespace {

constexpr cplx kI{0.0, 1.0};

double sech(double u) { return 1.0 / std::cosh(u); }

/// log(cosh u) without overflow.
double log_cosh(double u) {
  const double au = std::abs(u);
  return au + std::log1p(std::exp(-2.0 * au)) - std::numbers::ln2;
}

void require_normalizable(const Superpotential& w) {
  if (!(w.a.real() > 0.0)) {
    std::ostringstream os;
    os << "ground state not normalizable: Re(a) = " << w.a.real() << " <= 0";
    throw NonNormalizableError(os.str());
  }
}

Wavefunction from_log_samples(const Grid& g, const std::vector<cplx>& log_psi) {
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& l : log_psi) peak = std::max(peak, l.real());
  Wavefunction psi{g, std::vector<cplx>(log_psi.size())};
  for (std::size_t i = 0; i < log_psi.size(); ++i) psi.values[i] = std::exp(log_psi[i] - peak);
  return psi.normalized();
}

} // namespace

cplx Superpotential::operator()(double x) const {
  const double u = alpha * x;
  return a * std::tanh(u) + b * sech(u);
}

cplx Superpotential::derivative(double x) const {
  const double u = alpha * x;
  const double se = sech(u);
  return alpha * (a * se * se - b * se * std::tanh(u));
}

cplx PotentialCoeffs::operator()(double x) const {
  const double u = alpha * x;
  const double se = sech(u);
  return s * se * se + t * se * std::tanh(u) + c0;
}

Superpotential build_unbroken(const Params& p) {
  p.validate();
  if (classify_regime(p) != Regime::Unbroken) {
    throw RegimeError("build_unbroken requires c_pt = 0");
  }
  return {cplx(p.A, 0.0), cplx(0.0, p.B), p.alpha};
}

std::pair<Superpotential, Superpotential> build_broken_pair(const Params& p) {
  p.validate();
  if (classify_regime(p) != Regime::Broken) {
    throw RegimeError(std::string("build_broken_pair requires the broken regime, got ") +
                      std::string(to_string(classify_regime(p))));
  }
  const double c = p.c_pt;
  const double shifted = p.A + 0.5 * p.alpha;
  Superpotential plus{cplx(p.A, c), cplx(c, shifted), p.alpha};
  Superpotential minus{cplx(p.A, -c), cplx(-c, shifted), p.alpha};
  return {plus, minus};
}

Superpotential build_sector(const Params& p, Sector s) {
  if (classify_regime(p) == Regime::Unbroken) return build_unbroken(p);
  auto [plus, minus] = build_broken_pair(p);
  return s == Sector::Plus ? plus : minus;
}

cplx evaluate(const Superpotential& w, double x) { return w(x); }

PotentialCoeffs partner_potential_minus(const Superpotential& w) {
  const cplx a = w.a, b = w.b;
  return {b * b - a * a - a * w.alpha, b * (2.0 * a + w.alpha), cplx{0.0, 0.0}, w.alpha};
}

PotentialCoeffs partner_potential_plus(const Superpotential& w) {
  const cplx a = w.a, b = w.b;
  return {b * b - a * a + a * w.alpha, b * (2.0 * a - w.alpha), cplx{0.0, 0.0}, w.alpha};
}

cplx ground_state_energy(const Superpotential& w) {
  require_normalizable(w);
  return -w.a * w.a;
}

Wavefunction ground_state_wavefunction(const Superpotential& w, const Grid& g) {
  require_normalizable(w);
  const std::size_t n = g.size();
  const std::size_t mid = g.center();
  const double h = g.spacing();
  std::vector<cplx> log_psi(n, cplx{0.0, 0.0});
  // March outward from x = 0 in both directions.
  for (std::size_t i = mid; i + 1 < n; ++i) {
    const double x0 = g.x(i), x1 = g.x(i + 1);
    const cplx step = 0.5 * h * (w(x0) + w(x1)) - h * h / 12.0 * (w.derivative(x1) - w.derivative(x0));
    log_psi[i + 1] = log_psi[i] - step;
  }
  for (std::size_t i = mid; i > 0; --i) {
    const double x0 = g.x(i), x1 = g.x(i - 1);
    const cplx step = -0.5 * h * (w(x0) + w(x1)) + h * h / 12.0 * (w.derivative(x0) - w.derivative(x1));
    log_psi[i - 1] = log_psi[i] - step;
  }
  return from_log_samples(g, log_psi);
}

double gudermannian(double x) { return 2.0 * std::atan(std::tanh(0.5 * x)); }

Wavefunction ground_state_closed_form(const Superpotential& w, const Grid& g) {
  require_normalizable(w);
  std::vector<cplx> log_psi(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double u = w.alpha * g.x(i);
    log_psi[i] = -(w.a / w.alpha) * log_cosh(u) - (w.b / w.alpha) * gudermannian(u);
  }
  return from_log_samples(g, log_psi);
}

bool check_pt_symmetric_potential(const PotentialCoeffs& v, double tol) {
  return std::abs(v.s.imag()) <= tol && std::abs(v.t.real()) <= tol && std::abs(v.c0.imag()) <= tol;
}

PotentialCoeffs unbroken_potential_closed_form(const Params& p) {
  const double A = p.A, B = p.B, al = p.alpha;
  return {cplx(-(A * (A + al) + B * B), 0.0), kI * (B * (2.0 * A + al)), cplx{0.0, 0.0}, al};
}

PotentialCoeffs broken_potential_closed_form(const Params& p) {
  const double A = p.A, c = p.c_pt, al = p.alpha;
  const double base = 2.0 * A * (A + al);
  return {cplx(-(base - 2.0 * c * c + 0.25 * al * al), 0.0),
          kI * (base + 2.0 * c * c + 0.5 * al * al), cplx{0.0, 0.0}, al};
}

} // namespace ptscarf
