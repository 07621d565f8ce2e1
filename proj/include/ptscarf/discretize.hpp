#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ptscarf/grid.hpp"
#include "ptscarf/superpotential.hpp"

namespace ptscarf {

/// H = -d^2/dx^2 + V on the interior nodes of a grid with psi(+-L) = 0.
///
/// Stored by diagonals: the kinetic stencil is constant, only the main diagonal
/// carries V(x_i). Nodes outside [-L, L] reached by the 5-point stencil are taken
/// as zero. The matrix is complex symmetric for both orders.
class BandedHamiltonian {
public:
  BandedHamiltonian(const PotentialCoeffs& v, const Grid& g, int order);

  const Grid& grid() const { return grid_; }
  int order() const { return order_; }
  /// Number of unknowns, n_points - 2.
  int dim() const { return static_cast<int>(diag_.size()); }
  /// Half bandwidth: 1 for order 2, 2 for order 4.
  int bandwidth() const { return order_ == 2 ? 1 : 2; }

  /// Entry (r, c) in the interior-node basis.
  cplx at(int r, int c) const;
  const std::vector<cplx>& diagonal() const { return diag_; }
  cplx trace() const;

  Eigen::MatrixXcd to_dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

  /// Solves (H - shift) y = rhs by banded LU with partial pivoting. Returns false
  /// when the shifted matrix is exactly singular.
  bool solve_shifted(cplx shift, const Eigen::VectorXcd& rhs, Eigen::VectorXcd& out) const;

  /// max |V(-x)* - V(x)| over the grid nodes.
  double pt_defect() const;

  /// Pads an interior vector with the Dirichlet zeros into a full-grid Wavefunction.
  Wavefunction to_wavefunction(const Eigen::VectorXcd& interior) const;

private:
  Grid grid_;
  int order_;
  std::vector<cplx> diag_;
  double off1_;
  double off2_;
};

/// Dense form of the discretized Hamiltonian; order must be 2 or 4.
Eigen::MatrixXcd discretize(const PotentialCoeffs& v, const Grid& g, int order);

} // namespace ptscarf
