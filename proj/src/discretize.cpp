#include "ptscarf/discretize.hpp"

#include <algorithm>
#include <cmath>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "ptscarf/errors.hpp"

namespace ptscarf {

BandedHamiltonian::BandedHamiltonian(const PotentialCoeffs& v, const Grid& g, int order)
    : grid_(g), order_(order) {
  if (order != 2 && order != 4) throw GridError("stencil order must be 2 or 4");
  const double h2 = g.spacing() * g.spacing();
  double d0 = 0.0;
  if (order == 2) {
    d0 = 2.0 / h2;
    off1_ = -1.0 / h2;
    off2_ = 0.0;
  } else {
    d0 = 30.0 / (12.0 * h2);
    off1_ = -16.0 / (12.0 * h2);
    off2_ = 1.0 / (12.0 * h2);
  }
  const std::size_t m = g.size() - 2;
  diag_.resize(m);
  for (std::size_t i = 0; i < m; ++i) diag_[i] = d0 + v(g.x(i + 1));
}

cplx BandedHamiltonian::at(int r, int c) const {
  const int d = std::abs(r - c);
  if (d == 0) return diag_[static_cast<std::size_t>(r)];
  if (d == 1) return off1_;
  if (d == 2) return off2_;
  return 0.0;
}

cplx BandedHamiltonian::trace() const {
  cplx acc{0.0, 0.0};
  for (const auto& d : diag_) acc += d;
  return acc;
}

Eigen::MatrixXcd BandedHamiltonian::to_dense() const {
  const int n = dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const int bw = bandwidth();
  for (int r = 0; r < n; ++r) {
    for (int c = std::max(0, r - bw); c <= std::min(n - 1, r + bw); ++c) m(r, c) = at(r, c);
  }
  return m;
}

Eigen::VectorXcd BandedHamiltonian::apply(const Eigen::VectorXcd& x) const {
  const int n = dim();
  const int bw = bandwidth();
  Eigen::VectorXcd y(n);
  for (int r = 0; r < n; ++r) {
    cplx acc{0.0, 0.0};
    for (int c = std::max(0, r - bw); c <= std::min(n - 1, r + bw); ++c) acc += at(r, c) * x(c);
    y(r) = acc;
  }
  return y;
}

bool BandedHamiltonian::solve_shifted(cplx shift, const Eigen::VectorXcd& rhs,
                                      Eigen::VectorXcd& out) const {
  const lapack_int n = dim();
  const lapack_int kl = bandwidth(), ku = bandwidth();
  const lapack_int ldab = 2 * kl + ku + 1;
  // Column-major band storage: AB(kl + ku + r - c, c) = A(r, c).
  std::vector<cplx> ab(static_cast<std::size_t>(ldab) * static_cast<std::size_t>(n), cplx{0.0, 0.0});
  for (lapack_int c = 0; c < n; ++c) {
    for (lapack_int r = std::max<lapack_int>(0, c - ku); r <= std::min<lapack_int>(n - 1, c + kl); ++r) {
      cplx v = at(r, c);
      if (r == c) v -= shift;
      ab[static_cast<std::size_t>(c) * ldab + static_cast<std::size_t>(kl + ku + r - c)] = v;
    }
  }
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  out = rhs;
  const lapack_int info =
      LAPACKE_zgbsv(LAPACK_COL_MAJOR, n, kl, ku, 1, ab.data(), ldab, ipiv.data(), out.data(), n);
  if (info < 0) throw Error("zgbsv: invalid argument " + std::to_string(-info));
  return info == 0;
}

double BandedHamiltonian::pt_defect() const {
  const std::size_t m = diag_.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    worst = std::max(worst, std::abs(std::conj(diag_[m - 1 - i]) - diag_[i]));
  }
  return worst;
}

Wavefunction BandedHamiltonian::to_wavefunction(const Eigen::VectorXcd& interior) const {
  Wavefunction psi{grid_, std::vector<cplx>(grid_.size(), cplx{0.0, 0.0})};
  for (int i = 0; i < interior.size(); ++i) psi.values[static_cast<std::size_t>(i) + 1] = interior(i);
  return psi;
}

Eigen::MatrixXcd discretize(const PotentialCoeffs& v, const Grid& g, int order) {
  return BandedHamiltonian(v, g, order).to_dense();
}

} // namespace ptscarf
