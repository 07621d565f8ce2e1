#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ptscarf/discretize.hpp"
#include "ptscarf/errors.hpp"

namespace ptscarf {

enum class EigenBackend {
  Lapack,  ///< zgeev / dgeev
  Native,  ///< in-house balancing + Hessenberg + shifted QR
};

struct EigenOptions {
  EigenBackend backend = EigenBackend::Lapack;
  int max_dim = 6000;
  /// QR sweeps allowed per eigenvalue (Native backend).
  int max_sweeps_per_eigenvalue = 30;
};

/// Thrown by the Native backend when QR fails to deflate; carries the
/// eigenvalues that did converge.
class QrConvergenceError : public ConvergenceError {
public:
  QrConvergenceError(const std::string& what, std::vector<cplx> partial)
      : ConvergenceError(what), partial_(std::move(partial)) {}
  const std::vector<cplx>& partial() const { return partial_; }

private:
  std::vector<cplx> partial_;
};

/// All eigenvalues of a dense complex matrix, unordered.
std::vector<cplx> eig_complex_dense(const Eigen::MatrixXcd& m, const EigenOptions& opts = {});

/// All eigenvalues of a dense real matrix; complex ones come in exact conjugate pairs.
std::vector<cplx> eig_real_dense(const Eigen::MatrixXd& m, const EigenOptions& opts = {});

/// In-place Parlett-Reinsch balancing with power-of-two scalings.
void balance(Eigen::MatrixXcd& m);

/// Householder reduction to upper Hessenberg form (similarity transform).
void reduce_to_hessenberg(Eigen::MatrixXcd& m);

/// Eigenvalues of an upper Hessenberg matrix by implicit single-shift QR with
/// Wilkinson shifts. Throws QrConvergenceError.
std::vector<cplx> hessenberg_qr_eigenvalues(Eigen::MatrixXcd h, int max_sweeps_per_eigenvalue = 30);

/// Real matrix similar to a PT-symmetric banded Hamiltonian.
///
/// In the basis (e_j + e_-j)/sqrt2, i (e_j - e_-j)/sqrt2, e_0, where j indexes
/// nodes mirrored about x = 0, every matrix element of an operator commuting
/// with psi(x) -> conj(psi(-x)) is real. Throws ValidationError if the
/// Hamiltonian's PT defect exceeds tol * max|H_ii|.
Eigen::MatrixXd pt_real_form(const BandedHamiltonian& h, double tol = 1e-12);

enum class SpectrumPath {
  Auto,     ///< PT-real form when the potential is PT-symmetric on the grid
  Complex,  ///< always the dense complex path
};

/// Full spectrum of a discretized Hamiltonian.
std::vector<cplx> hamiltonian_eigenvalues(const BandedHamiltonian& h, SpectrumPath path = SpectrumPath::Auto,
                                          const EigenOptions& opts = {});

} // namespace ptscarf
