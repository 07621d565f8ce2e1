#include "ptscarf/grid.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "ptscarf/errors.hpp"

namespace ptscarf {

Grid::Grid(double half_width, std::size_t n_points)
    : half_width_(half_width), n_points_(n_points), h_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw GridError("grid half-width must be positive and finite");
  }
  if (n_points < 3 || n_points % 2 == 0) {
    std::ostringstream os;
    os << "grid needs an odd number of points >= 3, got " << n_points;
    throw GridError(os.str());
  }
  h_ = 2.0 * half_width / static_cast<double>(n_points - 1);
}

double Grid::x(std::size_t i) const {
  return (static_cast<double>(i) - static_cast<double>(center())) * h_;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) xs[i] = x(i);
  return xs;
}

double Wavefunction::norm() const {
  double acc = 0.0;
  for (const auto& v : values) acc += std::norm(v);
  return std::sqrt(grid.spacing() * acc);
}

Wavefunction Wavefunction::normalized() const {
  const double n = norm();
  Wavefunction out = *this;
  if (n > 0.0) {
    for (auto& v : out.values) v /= n;
  }
  return out;
}

static void require_same_grid(const Wavefunction& f, const Wavefunction& g) {
  if (f.values.size() != g.values.size() || f.grid.size() != g.grid.size() ||
      f.grid.half_width() != g.grid.half_width()) {
    throw GridError("wavefunctions live on different grids");
  }
}

cplx inner(const Wavefunction& f, const Wavefunction& g) {
  require_same_grid(f, g);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < f.values.size(); ++i) acc += std::conj(f.values[i]) * g.values[i];
  return acc * f.grid.spacing();
}

double normalized_overlap(const Wavefunction& f, const Wavefunction& g) {
  const double d = f.norm() * g.norm();
  if (d == 0.0) return 0.0;
  return std::abs(inner(f, g)) / d;
}

Wavefunction pt_apply(const Wavefunction& psi) {
  if (psi.values.size() != psi.grid.size()) throw GridError("wavefunction size does not match its grid");
  Wavefunction out = psi;
  const std::size_t n = psi.values.size();
  for (std::size_t i = 0; i < n; ++i) out.values[i] = std::conj(psi.values[n - 1 - i]);
  return out;
}

} // namespace ptscarf
