#include <doctest.h>

#include <algorithm>
#include <future>
#include <random>

#include "ptscarf/eigensolver.hpp"
#include "ptscarf/errors.hpp"

using namespace ptscarf;

namespace {

constexpr cplx I{0.0, 1.0};

/// Largest distance after pairing each expected value with its nearest unused
/// computed value.
double spectrum_distance(std::vector<cplx> got, const std::vector<cplx>& want) {
  if (got.size() != want.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& w : want) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](cplx l, cplx r) { return std::abs(l - w) < std::abs(r - w); });
    worst = std::max(worst, std::abs(*it - w));
    got.erase(it);
  }
  return worst;
}

Eigen::MatrixXcd random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

const EigenBackend kBackends[] = {EigenBackend::Lapack, EigenBackend::Native};

} // namespace

TEST_CASE("known spectra on both backends") {
  for (EigenBackend be : kBackends) {
    EigenOptions opts;
    opts.backend = be;
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = cplx(1.0, 2.0);
    d(1, 1) = 3.0;
    CHECK(spectrum_distance(eig_complex_dense(d, opts), {cplx(1.0, 2.0), 3.0}) <= 1e-10);

    Eigen::MatrixXcd rot(2, 2);
    rot << 0.0, 1.0, -1.0, 0.0;
    CHECK(spectrum_distance(eig_complex_dense(rot, opts), {I, -I}) <= 1e-10);

    // Companion matrix of z^4 - 1.
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(4, 4);
    comp(0, 3) = 1.0;
    comp(1, 0) = comp(2, 1) = comp(3, 2) = 1.0;
    CHECK(spectrum_distance(eig_complex_dense(comp, opts), {1.0, -1.0, I, -I}) <= 1e-10);

    Eigen::MatrixXd real_rot(2, 2);
    real_rot << 0.0, 1.0, -1.0, 0.0;
    CHECK(spectrum_distance(eig_real_dense(real_rot, opts), {I, -I}) <= 1e-10);

    CHECK(eig_complex_dense(Eigen::MatrixXcd(0, 0), opts).empty());
    Eigen::MatrixXcd one(1, 1);
    one(0, 0) = cplx(-2.0, 0.5);
    CHECK(spectrum_distance(eig_complex_dense(one, opts), {cplx(-2.0, 0.5)}) <= 1e-15);
  }
}

TEST_CASE("trace identity on random matrices and backend agreement") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(2, 200);
  for (int k = 0; k < 50; ++k) {
    const int n = dim(rng);
    const Eigen::MatrixXcd m = random_matrix(n, rng);
    const double norm = m.norm();
    EigenOptions native;
    native.backend = EigenBackend::Native;
    const auto lap = eig_complex_dense(m);
    const auto nat = eig_complex_dense(m, native);
    cplx sl{0.0, 0.0}, sn{0.0, 0.0};
    for (auto e : lap) sl += e;
    for (auto e : nat) sn += e;
    CHECK(std::abs(sl - m.trace()) <= 1e-8 * norm);
    CHECK(std::abs(sn - m.trace()) <= 1e-8 * norm);
    CHECK(spectrum_distance(nat, lap) <= 1e-8 * norm);
  }
}

TEST_CASE("Hermitian input gives real eigenvalues") {
  std::mt19937_64 rng(7);
  for (int n : {5, 40, 120}) {
    const Eigen::MatrixXcd r = random_matrix(n, rng);
    const Eigen::MatrixXcd h = 0.5 * (r + r.adjoint());
    for (EigenBackend be : kBackends) {
      EigenOptions opts;
      opts.backend = be;
      for (auto e : eig_complex_dense(h, opts)) CHECK(std::abs(e.imag()) <= 1e-10 * h.norm());
    }
  }
}

TEST_CASE("Hessenberg reduction is a similarity transform") {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXcd m = random_matrix(30, rng);
  Eigen::MatrixXcd h = m;
  reduce_to_hessenberg(h);
  for (int j = 0; j < 30; ++j)
    for (int i = j + 2; i < 30; ++i) CHECK(h(i, j) == cplx(0.0, 0.0));
  CHECK(std::abs(h.trace() - m.trace()) <= 1e-12 * m.norm());
  CHECK(std::abs(h.norm() - m.norm()) <= 1e-12 * m.norm());
  Eigen::MatrixXcd b = m;
  balance(b);
  CHECK(std::abs(b.trace() - m.trace()) <= 1e-12 * m.norm());
}

TEST_CASE("QR reports non-convergence with partial results") {
  std::mt19937_64 rng(13);
  Eigen::MatrixXcd m = random_matrix(20, rng);
  reduce_to_hessenberg(m);
  try {
    (void)hessenberg_qr_eigenvalues(m, 0);
    FAIL("expected QrConvergenceError");
  } catch (const QrConvergenceError& e) {
    CHECK(e.partial().size() < 20);
  }
}

TEST_CASE("dimension guard") {
  EigenOptions opts;
  opts.max_dim = 10;
  CHECK_THROWS_AS(eig_complex_dense(Eigen::MatrixXcd::Identity(11, 11), opts), ValidationError);
  CHECK_THROWS_AS(eig_complex_dense(Eigen::MatrixXcd::Identity(3, 4)), ValidationError);
}

TEST_CASE("PT-real form has the same spectrum as the complex matrix") {
  const Grid g(10.0, 301);
  for (const Params& p : {Params{2.5, 1.0, 1.0, 0.0}, Params{1.5, 2.0, 1.0, 0.5}, Params{0.8, 1.3, 1.0, 1.2}}) {
    for (int order : {2, 4}) {
      const PotentialCoeffs v = partner_potential_minus(build_sector(p, Sector::Plus));
      const BandedHamiltonian h(v, g, order);
      const Eigen::MatrixXd r = pt_real_form(h);
      const auto via_real = eig_real_dense(r);
      const auto via_complex = hamiltonian_eigenvalues(h, SpectrumPath::Complex);
      const double scale = h.to_dense().norm();
      CHECK(spectrum_distance(via_real, via_complex) <= 1e-9 * scale);
      // Same trace, and the real form is orthogonally similar (equal Frobenius norms).
      CHECK(std::abs(r.trace() - h.trace()) <= 1e-10 * scale);
      CHECK(std::abs(r.norm() - scale) <= 1e-10 * scale);
    }
  }
  // Not PT-symmetric: refused.
  const PotentialCoeffs bad{cplx(-2.0, 0.3), cplx(0.4, 1.0), 0.0, 1.0};
  CHECK_THROWS_AS(pt_real_form(BandedHamiltonian(bad, g, 4)), ValidationError);
  // Auto path falls back to the complex solver.
  const BandedHamiltonian hb(bad, g, 4);
  CHECK(spectrum_distance(hamiltonian_eigenvalues(hb), eig_complex_dense(hb.to_dense())) <= 1e-9);
}

TEST_CASE("concurrent eigensolves on distinct matrices") {
  std::mt19937_64 rng(31);
  std::vector<Eigen::MatrixXcd> mats;
  for (int k = 0; k < 6; ++k) mats.push_back(random_matrix(80, rng));
  std::vector<std::vector<cplx>> serial;
  for (const auto& m : mats) serial.push_back(eig_complex_dense(m));
  std::vector<std::future<std::vector<cplx>>> futs;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    EigenOptions opts;
    opts.backend = k % 2 ? EigenBackend::Native : EigenBackend::Lapack;
    futs.push_back(std::async(std::launch::async, [&, k, opts] { return eig_complex_dense(mats[k], opts); }));
  }
  for (std::size_t k = 0; k < mats.size(); ++k) CHECK(spectrum_distance(futs[k].get(), serial[k]) <= 1e-8 * mats[k].norm());
}
