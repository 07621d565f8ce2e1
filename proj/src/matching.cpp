#include "ptscarf/matching.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace ptscarf {

double match_tolerance(cplx energy, double tol) { return tol * std::max(1.0, std::abs(energy)); }

std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {};
  const std::size_t m = cost.front().size();
  const double inf = std::numeric_limits<double>::infinity();
  // Potentials formulation, 1-based with a virtual column 0.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

Assignment match_levels(const std::vector<cplx>& analytic, const std::vector<cplx>& numeric, double tol) {
  Assignment out;
  const std::size_t na = analytic.size(), nn = numeric.size();

  std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t k = 0; k < nn; ++k) {
      const double err = std::abs(analytic[a] - numeric[k]);
      if (err <= match_tolerance(analytic[a], tol)) cand.emplace_back(err, a, k);
    }
  }
  std::sort(cand.begin(), cand.end());

  std::vector<bool> a_used(na, false), n_used(nn, false);
  for (const auto& [err, a, k] : cand) {
    if (a_used[a] || n_used[k]) continue;
    a_used[a] = n_used[k] = true;
    out.matches.push_back({a, k, err});
  }

  bool stranded = false;
  for (const auto& [err, a, k] : cand) {
    if (!a_used[a]) stranded = true;
  }
  if (stranded) {
    // Maximize the number of within-tolerance matches, then minimize total error.
    constexpr double kInfeasible = 1e6;
    const bool transpose = na > nn;
    const std::size_t rows = transpose ? nn : na, cols = transpose ? na : nn;
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols, kInfeasible));
    for (const auto& [err, a, k] : cand) {
      if (transpose) cost[k][a] = err;
      else cost[a][k] = err;
    }
    const auto assign = hungarian(cost);
    out.matches.clear();
    std::fill(a_used.begin(), a_used.end(), false);
    std::fill(n_used.begin(), n_used.end(), false);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t c = assign[r];
      if (cost[r][c] >= kInfeasible) continue;
      const std::size_t a = transpose ? c : r, k = transpose ? r : c;
      a_used[a] = n_used[k] = true;
      out.matches.push_back({a, k, cost[r][c]});
    }
    out.used_hungarian = true;
  }

  std::sort(out.matches.begin(), out.matches.end(),
            [](const Match& l, const Match& r) { return l.analytic < r.analytic; });
  for (std::size_t a = 0; a < na; ++a) {
    if (!a_used[a]) out.unmatched_analytic.push_back(a);
  }
  for (std::size_t k = 0; k < nn; ++k) {
    if (!n_used[k]) out.unmatched_numeric.push_back(k);
  }
  return out;
}

PairingReport conjugate_pairing_check(const std::vector<cplx>& eigs, double real_tol) {
  PairingReport out;
  std::vector<std::size_t> upper, lower;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    const double im = eigs[i].imag();
    if (std::abs(im) <= real_tol) out.self_paired.push_back(i);
    else if (im > 0.0) upper.push_back(i);
    else lower.push_back(i);
  }
  std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
  for (const auto u : upper) {
    for (const auto l : lower) cand.emplace_back(std::abs(eigs[u] - std::conj(eigs[l])), u, l);
  }
  std::sort(cand.begin(), cand.end());
  std::vector<bool> used(eigs.size(), false);
  for (const auto& [d, u, l] : cand) {
    if (used[u] || used[l]) continue;
    used[u] = used[l] = true;
    out.pairs.push_back({u, l, d});
    out.max_defect = std::max(out.max_defect, d);
  }
  for (const auto u : upper) {
    if (!used[u]) out.unpaired.push_back(u);
  }
  for (const auto l : lower) {
    if (!used[l]) out.unpaired.push_back(l);
  }
  std::sort(out.unpaired.begin(), out.unpaired.end());
  return out;
}

} // namespace ptscarf
