#include <doctest.h>

#include <cmath>
#include <random>

#include "ptscarf/discretize.hpp"
#include "ptscarf/errors.hpp"
#include "ptscarf/superpotential.hpp"

using namespace ptscarf;

namespace {

constexpr cplx I{0.0, 1.0};

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

/// Test-only oracle: log psi0(x) = -int_0^x W by composite Simpson on a fine
/// sub-grid, independent of the library's corrected trapezoid march.
cplx simpson_log_psi(const Superpotential& w, double x) {
  const int m = 2000;
  const double h = x / m;
  cplx acc = w(0.0) + w(x);
  for (int k = 1; k < m; ++k) acc += (k % 2 ? 4.0 : 2.0) * w(k * h);
  return -acc * h / 3.0;
}

} // namespace

TEST_CASE("build_unbroken") {
  const auto w = build_unbroken({1.0, 2.0, 1.0, 0.0});
  CHECK(w.a == cplx(1.0, 0.0));
  CHECK(w.b == cplx(0.0, 2.0));
  const auto w2 = build_unbroken({2.5, 1.0, 1.0, 0.0});
  CHECK(w2.a == cplx(2.5, 0.0));
  CHECK(w2.b == cplx(0.0, 1.0));
  CHECK_THROWS_AS(build_unbroken({1.5, 2.0, 1.0, 0.5}), RegimeError);
}

TEST_CASE("build_broken_pair") {
  const auto [plus, minus] = build_broken_pair({1.5, 2.0, 1.0, 0.5});
  CHECK(plus.a == cplx(1.5, 0.5));
  CHECK(plus.b == cplx(0.5, 2.0));
  CHECK(minus.a == cplx(1.5, -0.5));
  CHECK(minus.b == cplx(-0.5, 2.0));
  CHECK(minus.a == std::conj(plus.a));
  CHECK(minus.b == -std::conj(plus.b));

  const auto [p2, m2] = build_broken_pair({1.0, 1.5, 1.0, 0.3});
  CHECK(p2.a == cplx(1.0, 0.3));
  CHECK(p2.b == cplx(0.3, 1.5));

  CHECK_THROWS_AS(build_broken_pair({1.0, 2.0, 1.0, 0.0}), RegimeError);
  CHECK_THROWS_AS(build_broken_pair({1.0, 1.0, 1.0, 0.5}), RegimeError);
}

TEST_CASE("evaluate") {
  const Superpotential w{1.0, 2.0 * I, 1.0};
  CHECK(close(evaluate(w, 0.0), 2.0 * I, 1e-15));
  CHECK(close(evaluate(w, 40.0), 1.0, 1e-15));
  // 30-digit mpmath reference.
  const Superpotential wb{cplx(1.5, 0.5), cplx(0.5, 2.0), 1.0};
  CHECK(close(evaluate(wb, 1.0), cplx(1.46641837076559003, 1.67690562530565324), 1e-14));
}

TEST_CASE("property: |W(x)| <= |a| + |b|") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0), xs(-20.0, 20.0), al(0.2, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const Superpotential w{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), al(rng)};
    CHECK(std::abs(w(xs(rng))) <= std::abs(w.a) + std::abs(w.b) + 1e-14);
  }
}

TEST_CASE("partner potential reproduces the unbroken closed form") {
  const Params p{1.0, 2.0, 1.0, 0.0};
  const auto v = partner_potential_minus(build_unbroken(p));
  CHECK(close(v.s, -6.0, 1e-14));
  CHECK(close(v.t, 6.0 * I, 1e-14));
  CHECK(v.c0 == cplx(0.0, 0.0));
  const auto closed = unbroken_potential_closed_form(p);
  CHECK(close(closed.s, -6.0, 0.0));
  CHECK(close(closed.t, 6.0 * I, 0.0));
}

TEST_CASE("partner potential reproduces the broken closed form and is unique") {
  const Params p{1.5, 2.0, 1.0, 0.5};
  const auto [plus, minus] = build_broken_pair(p);
  const auto vp = partner_potential_minus(plus);
  const auto vm = partner_potential_minus(minus);
  CHECK(close(vp.s, -7.25, 1e-14));
  CHECK(close(vp.t, 8.5 * I, 1e-14));
  CHECK(close(vp.s, vm.s, 1e-14));
  CHECK(close(vp.t, vm.t, 1e-14));
  const auto closed = broken_potential_closed_form(p);
  CHECK(close(closed.s, -7.25, 1e-15));
  CHECK(close(closed.t, 8.5 * I, 1e-15));
}

TEST_CASE("partner_potential_plus and shape invariance") {
  // a = 1, b = 0: V- = -2 sech^2, V+ = 0.
  const auto vm = partner_potential_minus({1.0, 0.0, 1.0});
  const auto vp = partner_potential_plus({1.0, 0.0, 1.0});
  CHECK(close(vm.s, -2.0, 1e-15));
  CHECK(close(vp.s, 0.0, 1e-15));
  CHECK(close(vp.t, 0.0, 1e-15));
  // V+ of a = 2 is V- of a = 1 (sympy expansion).
  const auto vp2 = partner_potential_plus({2.0, 0.0, 1.0});
  CHECK(close(vp2.s, vm.s, 1e-15));
  // a = 1, b = 2i: sympy gives s = b^2 - a^2 + a alpha = -4, t = b (2a - alpha) = 2i.
  const auto vp3 = partner_potential_plus({1.0, 2.0 * I, 1.0});
  CHECK(close(vp3.s, -4.0, 1e-14));
  CHECK(close(vp3.t, 2.0 * I, 1e-14));
  // Generic shape invariance: V+(a, b) == V-(a - alpha, b).
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0), al(0.2, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Superpotential w{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), al(rng)};
    const auto plus = partner_potential_plus(w);
    const auto shifted = partner_potential_minus({w.a - w.alpha, w.b, w.alpha});
    CHECK(close(plus.s, shifted.s, 1e-12));
    CHECK(close(plus.t, shifted.t, 1e-12));
  }
}

TEST_CASE("property: expansion identity W^2 - W' - a^2 at random points") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-3.0, 3.0), al(0.3, 3.0), unit(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const Superpotential w{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), al(rng)};
    const auto v = partner_potential_minus(w);
    const auto vp = partner_potential_plus(w);
    double worst = 0.0, worst_plus = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = 10.0 / w.alpha * unit(rng);
      const cplx wx = w(x);
      worst = std::max(worst, std::abs(v(x) - (wx * wx - w.derivative(x) - w.a * w.a)));
      worst_plus = std::max(worst_plus, std::abs(vp(x) - (wx * wx + w.derivative(x) - w.a * w.a)));
    }
    CHECK(worst <= 1e-12 * std::max(1.0, std::abs(v.s) + std::abs(v.t)));
    CHECK(worst_plus <= 1e-12 * std::max(1.0, std::abs(vp.s) + std::abs(vp.t)));
  }
}

TEST_CASE("analytic derivative agrees with a central difference") {
  const Superpotential w{cplx(1.5, 0.5), cplx(0.5, 2.0), 1.3};
  for (double x : {-2.0, -0.3, 0.0, 0.7, 3.0}) {
    const double h = 1e-5;
    const cplx fd = (w(x + h) - w(x - h)) / (2.0 * h);
    CHECK(close(w.derivative(x), fd, 1e-8));
  }
}

TEST_CASE("ground state energy") {
  CHECK(close(ground_state_energy({2.5, 0.0, 1.0}), -6.25, 1e-15));
  CHECK(close(ground_state_energy({cplx(1.5, 0.5), cplx(0.5, 2.0), 1.0}), cplx(-2.0, -1.5), 1e-15));
  CHECK_THROWS_AS(ground_state_energy({-1.0, 0.0, 1.0}), NonNormalizableError);
  CHECK_THROWS_AS(ground_state_energy({0.0, 1.0, 1.0}), NonNormalizableError);
}

TEST_CASE("ground state wavefunction: textbook sech") {
  const Grid g(20.0, 2001);
  const auto psi = ground_state_wavefunction({1.0, 0.0, 1.0}, g);
  // Proportional to sech(x): the ratio is constant.
  const cplx ref = psi.values[g.center()];
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(psi.values[i] - ref / std::cosh(g.x(i))));
  }
  CHECK(worst <= 1e-8);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ground state wavefunction: quadrature vs Simpson oracle and closed form") {
  const Grid g(10.0, 2001);
  for (const Superpotential& w : {Superpotential{1.0, 2.0 * I, 1.0}, Superpotential{cplx(1.5, 0.5), cplx(0.5, 2.0), 1.0},
                                  Superpotential{cplx(0.7, -0.2), cplx(-0.4, 1.1), 1.7}}) {
    const auto quad = ground_state_wavefunction(w, g);
    const auto closed = ground_state_closed_form(w, g);
    double worst_closed = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst_closed = std::max(worst_closed, std::abs(quad.values[i] - closed.values[i]));
    CHECK(worst_closed <= 1e-8);
    // log(psi(x)/psi(0)) against the Simpson oracle.
    const cplx psi0 = quad.values[g.center()];
    for (std::size_t i : {std::size_t(0), std::size_t(400), std::size_t(1300), std::size_t(2000)}) {
      const cplx log_ratio = std::log(quad.values[i] / psi0);
      const cplx expect = simpson_log_psi(w, g.x(i));
      // Compare modulo 2 pi i.
      const cplx d = log_ratio - expect;
      const double im = std::remainder(d.imag(), 2.0 * M_PI);
      CHECK(std::abs(cplx(d.real(), im)) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(ground_state_wavefunction({-1.0, 0.0, 1.0}, g), NonNormalizableError);
}

TEST_CASE("ground state residual with the 5-point stencil") {
  for (const Params& p : {Params{2.5, 1.0, 1.0, 0.0}, Params{1.0, 2.0, 1.0, 0.0}, Params{1.5, 2.0, 1.0, 0.5}}) {
    const Superpotential w = build_sector(p, Sector::Plus);
    const Grid g(12.0, 4801);  // h = 0.005
    const auto psi = ground_state_closed_form(w, g);
    const auto v = partner_potential_minus(w);
    const BandedHamiltonian h(v, g, 4);
    Eigen::VectorXcd interior(h.dim());
    for (int i = 0; i < h.dim(); ++i) interior(i) = psi.values[static_cast<std::size_t>(i) + 1];
    const Eigen::VectorXcd r = h.apply(interior) - ground_state_energy(w) * interior;
    // Skip the two nodes next to each wall where the stencil sees the Dirichlet ghosts.
    const double res = r.segment(2, h.dim() - 4).norm() / interior.norm();
    CHECK(res <= 1e-6);
  }
}

TEST_CASE("PT symmetry of potentials") {
  CHECK(check_pt_symmetric_potential({-6.0, 6.0 * I, 0.0, 1.0}));
  CHECK(check_pt_symmetric_potential({-7.25, 8.5 * I, 0.0, 1.0}));
  CHECK_FALSE(check_pt_symmetric_potential({cplx(-6.0, 0.1), 6.0 * I, 0.0, 1.0}));
  // Forced through: W built from non-PT-symmetric params gives a non-PT potential.
  const Params bad{1.0, 1.0, 1.0, 0.5};
  const Superpotential w{cplx(bad.A, bad.c_pt), cplx(bad.c_pt, bad.B), bad.alpha};
  CHECK_FALSE(check_pt_symmetric_potential(partner_potential_minus(w)));
}

TEST_CASE("PT image of the broken ground state is the other sector") {
  const Grid g(20.0, 2001);
  const auto [plus, minus] = build_broken_pair({1.5, 2.0, 1.0, 0.5});
  const auto psi_p = ground_state_wavefunction(plus, g);
  const auto psi_m = ground_state_wavefunction(minus, g);
  CHECK(normalized_overlap(pt_apply(psi_p), psi_m) >= 1.0 - 1e-12);
  CHECK(normalized_overlap(pt_apply(psi_p), psi_p) <= 0.999);
}
