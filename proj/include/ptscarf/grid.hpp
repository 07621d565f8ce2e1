#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ptscarf {

using cplx = std::complex<double>;

/// Uniform symmetric grid on [-L, L] with an odd number of nodes, so x = 0 is a node.
class Grid {
public:
  /// Throws GridError unless half_width > 0 and n_points is odd and >= 3.
  Grid(double half_width, std::size_t n_points);

  double half_width() const { return half_width_; }
  std::size_t size() const { return n_points_; }
  double spacing() const { return h_; }
  std::size_t center() const { return n_points_ / 2; }

  /// x_i = (i - center) h, exactly antisymmetric about the center node.
  double x(std::size_t i) const;
  std::vector<double> nodes() const;

private:
  double half_width_;
  std::size_t n_points_;
  double h_;
};

/// Complex samples on a Grid.
struct Wavefunction {
  Grid grid;
  std::vector<cplx> values;

  /// Discrete L2 norm sqrt(h sum |psi|^2).
  double norm() const;
  Wavefunction normalized() const;
};

/// <f, g> = h sum conj(f_i) g_i. Throws GridError when the grids differ.
cplx inner(const Wavefunction& f, const Wavefunction& g);

/// |<f, g>| / (|f| |g|).
double normalized_overlap(const Wavefunction& f, const Wavefunction& g);

/// PT action psi(x) -> conj(psi(-x)).
Wavefunction pt_apply(const Wavefunction& psi);

} // namespace ptscarf
