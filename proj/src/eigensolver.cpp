#include "ptscarf/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <spdlog/spdlog.h>

#include "ptscarf/errors.hpp"

namespace ptscarf {

namespace {

void check_dim(Eigen::Index rows, Eigen::Index cols, const EigenOptions& opts) {
  if (rows != cols) throw ValidationError("eigenvalue problem needs a square matrix");
  if (rows > opts.max_dim) {
    std::ostringstream os;
    os << "matrix dimension " << rows << " exceeds the configured maximum " << opts.max_dim;
    throw ValidationError(os.str());
  }
}

double abs1(cplx z) { return std::abs(z.real()) + std::abs(z.imag()); }

std::vector<cplx> lapack_complex(Eigen::MatrixXcd m) {
  const lapack_int n = static_cast<lapack_int>(m.rows());
  std::vector<cplx> w(static_cast<std::size_t>(n));
  if (n == 0) return w;
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, m.data(), n, w.data(), nullptr, 1,
                                        nullptr, 1);
  if (info < 0) throw Error("zgeev: invalid argument " + std::to_string(-info));
  if (info > 0) {
    throw QrConvergenceError("zgeev: QR failed to converge", {w.begin() + info, w.end()});
  }
  return w;
}

std::vector<cplx> lapack_real(Eigen::MatrixXd m) {
  const lapack_int n = static_cast<lapack_int>(m.rows());
  std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
  std::vector<cplx> w;
  if (n == 0) return w;
  const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, m.data(), n, wr.data(), wi.data(),
                                        nullptr, 1, nullptr, 1);
  if (info < 0) throw Error("dgeev: invalid argument " + std::to_string(-info));
  for (lapack_int i = std::max<lapack_int>(info, 0); i < n; ++i) w.emplace_back(wr[i], wi[i]);
  if (info > 0) throw QrConvergenceError("dgeev: QR failed to converge", w);
  return w;
}

} // namespace

void balance(Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(m(j, i));
        r += abs1(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r / f) < 0.95 * s * f && f != 1.0) {
        converged = false;
        m.col(i) *= f;
        m.row(i) /= f;
      }
    }
  }
}

void reduce_to_hessenberg(Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index len = n - k - 1;
    Eigen::VectorXcd v = m.col(k).tail(len);
    const double xnorm = v.norm();
    if (xnorm == 0.0) continue;
    const cplx x0 = v(0);
    const cplx phase = std::abs(x0) == 0.0 ? cplx{1.0, 0.0} : x0 / std::abs(x0);
    const cplx beta = -phase * xnorm;
    v(0) -= beta;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    // P = I - 2 v v^H acting on rows/cols k+1..n-1.
    auto rows = m.bottomRows(len);
    Eigen::RowVectorXcd left = v.adjoint() * rows;
    rows.noalias() -= 2.0 * v * left;
    auto cols = m.rightCols(len);
    Eigen::VectorXcd right = cols * v;
    cols.noalias() -= 2.0 * right * v.adjoint();
    m.col(k).tail(len - 1).setZero();
    m(k + 1, k) = beta;
  }
}

std::vector<cplx> hessenberg_qr_eigenvalues(Eigen::MatrixXcd h, int max_sweeps_per_eigenvalue) {
  const Eigen::Index n = h.rows();
  std::vector<cplx> eig(static_cast<std::size_t>(n));
  if (n == 0) return eig;
  const double eps = std::numeric_limits<double>::epsilon();
  const double hnorm = std::max(h.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const long max_total = static_cast<long>(max_sweeps_per_eigenvalue) * std::max<Eigen::Index>(n, 1);
  long total = 0;
  int its = 0;
  Eigen::Index hi = n - 1;
  while (hi >= 0) {
    Eigen::Index l = hi;
    while (l > 0) {
      double tst = abs1(h(l - 1, l - 1)) + abs1(h(l, l));
      if (tst == 0.0) tst = hnorm;
      if (abs1(h(l, l - 1)) <= eps * tst) break;
      --l;
    }
    if (l > 0) h(l, l - 1) = 0.0;
    if (l == hi) {
      eig[static_cast<std::size_t>(hi)] = h(hi, hi);
      --hi;
      its = 0;
      continue;
    }
    if (++total > max_total) {
      std::vector<cplx> partial(eig.begin() + hi + 1, eig.end());
      std::ostringstream os;
      os << "QR iteration did not converge; " << partial.size() << " of " << n << " eigenvalues found";
      throw QrConvergenceError(os.str(), std::move(partial));
    }
    ++its;

    cplx mu;
    if (its % 10 == 0) {
      // Exceptional shift.
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1).real()) + cplx(0.0, 0.75 * std::abs(h(hi, hi - 1).imag()));
    } else {
      // Eigenvalue of the trailing 2x2 block closest to h(hi, hi).
      const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
      const cplx half_tr = 0.5 * (a + d);
      const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
      const cplx e1 = half_tr + disc, e2 = half_tr - disc;
      mu = std::abs(e1 - d) < std::abs(e2 - d) ? e1 : e2;
    }

    for (Eigen::Index k = l; k < hi; ++k) {
      cplx x, y;
      if (k == l) {
        x = h(l, l) - mu;
        y = h(l + 1, l);
      } else {
        x = h(k, k - 1);
        y = h(k + 1, k - 1);
      }
      const double ax = std::abs(x);
      const double nrm = std::hypot(ax, std::abs(y));
      if (nrm == 0.0) continue;
      double c;
      cplx s;
      if (ax == 0.0) {
        c = 0.0;
        s = 1.0;
      } else {
        c = ax / nrm;
        s = (x / ax) * std::conj(y) / nrm;
      }
      const Eigen::Index c0 = (k == l) ? l : k - 1;
      for (Eigen::Index j = c0; j <= hi; ++j) {
        const cplx a = h(k, j), b = h(k + 1, j);
        h(k, j) = c * a + s * b;
        h(k + 1, j) = -std::conj(s) * a + c * b;
      }
      const Eigen::Index r1 = std::min(k + 2, hi);
      for (Eigen::Index i = l; i <= r1; ++i) {
        const cplx a = h(i, k), b = h(i, k + 1);
        h(i, k) = c * a + std::conj(s) * b;
        h(i, k + 1) = -s * a + c * b;
      }
      if (k > l) h(k + 1, k - 1) = 0.0;
    }
  }
  return eig;
}

std::vector<cplx> eig_complex_dense(const Eigen::MatrixXcd& m, const EigenOptions& opts) {
  check_dim(m.rows(), m.cols(), opts);
  if (!m.allFinite()) throw ValidationError("matrix has non-finite entries");
  if (opts.backend == EigenBackend::Lapack) return lapack_complex(m);
  Eigen::MatrixXcd work = m;
  balance(work);
  reduce_to_hessenberg(work);
  return hessenberg_qr_eigenvalues(std::move(work), opts.max_sweeps_per_eigenvalue);
}

std::vector<cplx> eig_real_dense(const Eigen::MatrixXd& m, const EigenOptions& opts) {
  check_dim(m.rows(), m.cols(), opts);
  if (!m.allFinite()) throw ValidationError("matrix has non-finite entries");
  if (opts.backend == EigenBackend::Lapack) return lapack_real(m);
  return eig_complex_dense(m.cast<cplx>(), opts);
}

Eigen::MatrixXd pt_real_form(const BandedHamiltonian& h, double tol) {
  const int n = h.dim();
  const int mid = n / 2;  // interior count is odd, so this is x = 0
  if (n % 2 == 0) throw GridError("PT-real form needs an odd number of interior nodes");
  double scale = 1.0;
  for (const auto& d : h.diagonal()) scale = std::max(scale, std::abs(d));
  if (h.pt_defect() > tol * scale) {
    throw ValidationError("Hamiltonian is not PT-symmetric on this grid");
  }

  // Basis index -> up to two (node, coefficient) pairs.
  //   [0, mid):      u_j = (e_{mid+j} + e_{mid-j}) / sqrt2,   j = 1..mid
  //   [mid, 2 mid):  w_j = i (e_{mid+j} - e_{mid-j}) / sqrt2
  //   2 mid:         e_mid
  const double r = 1.0 / std::sqrt(2.0);
  struct Term {
    int node;
    cplx coef;
  };
  auto basis = [&](int k, Term out[2]) -> int {
    if (k < mid) {
      const int j = k + 1;
      out[0] = {mid + j, r};
      out[1] = {mid - j, r};
      return 2;
    }
    if (k < 2 * mid) {
      const int j = k - mid + 1;
      out[0] = {mid + j, cplx(0.0, r)};
      out[1] = {mid - j, cplx(0.0, -r)};
      return 2;
    }
    out[0] = {mid, 1.0};
    return 1;
  };
  // Node -> basis indices whose support contains it.
  auto owners = [&](int node, int out[2]) -> int {
    if (node == mid) {
      out[0] = 2 * mid;
      return 1;
    }
    const int j = std::abs(node - mid);
    out[0] = j - 1;
    out[1] = mid + j - 1;
    return 2;
  };

  Eigen::MatrixXd real_form = Eigen::MatrixXd::Zero(n, n);
  const int bw = h.bandwidth();
  double worst_imag = 0.0;
  Term fa[2], fb[2];
  int own[2];
  std::map<int, cplx> column;
  for (int b = 0; b < n; ++b) {
    column.clear();
    const int nb = basis(b, fb);
    for (int t = 0; t < nb; ++t) {
      const int j = fb[t].node;
      for (int i = std::max(0, j - bw); i <= std::min(n - 1, j + bw); ++i) {
        const cplx hij = h.at(i, j) * fb[t].coef;
        const int no = owners(i, own);
        for (int o = 0; o < no; ++o) {
          const int na = basis(own[o], fa);
          for (int q = 0; q < na; ++q) {
            if (fa[q].node == i) column[own[o]] += std::conj(fa[q].coef) * hij;
          }
        }
      }
    }
    for (const auto& [a, v] : column) {
      real_form(a, b) = v.real();
      worst_imag = std::max(worst_imag, std::abs(v.imag()));
    }
  }
  if (worst_imag > tol * scale) {
    throw ValidationError("PT-real form has a non-negligible imaginary residue");
  }
  return real_form;
}

std::vector<cplx> hamiltonian_eigenvalues(const BandedHamiltonian& h, SpectrumPath path,
                                          const EigenOptions& opts) {
  check_dim(h.dim(), h.dim(), opts);
  if (path == SpectrumPath::Auto) {
    double scale = 1.0;
    for (const auto& d : h.diagonal()) scale = std::max(scale, std::abs(d));
    if (h.dim() % 2 == 1 && h.pt_defect() <= 1e-12 * scale) {
      spdlog::debug("eigensolve: PT-real form, dim {}", h.dim());
      return eig_real_dense(pt_real_form(h), opts);
    }
  }
  spdlog::debug("eigensolve: dense complex, dim {}", h.dim());
  return eig_complex_dense(h.to_dense(), opts);
}

} // namespace ptscarf
