#pragma once

// Test-only referee for the projection module: assembles the full KKT system
// [[W, C^T], [C, 0]] [gamma; mu] = [0; b] densely and solves it by naive
// Gaussian elimination with partial pivoting. Kept deliberately independent
// of Eigen and of the production Schur-complement path.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mdev/projection.hpp"

namespace oracle {

inline std::vector<double> gauss_solve(std::vector<std::vector<double>> M,
                                       std::vector<double> rhs) {
  const std::size_t n = M.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
    if (std::fabs(M[piv][col]) < 1e-14) throw std::runtime_error("oracle: singular KKT");
    std::swap(M[col], M[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = M[r][col] / M[col][col];
      if (factor == 0) continue;
      for (std::size_t c = col; c < n; ++c) M[r][c] -= factor * M[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / M[i][i];
  return x;
}

struct KktSolution {
  double value;
  std::vector<double> gamma;
};

// blocks and operator rows as in the production solver; y are the operator
// targets (centering targets are zero).
inline KktSolution kkt_solve(const std::vector<mdev::DiscretizedRate>& blocks,
                             const std::vector<std::vector<double>>& op_rows,
                             const std::vector<double>& y) {
  std::size_t ntot = 0;
  for (const auto& b : blocks) ntot += b.size();
  const std::size_t m = op_rows.size() + blocks.size();
  const std::size_t dim = ntot + m;

  std::vector<double> w(ntot);
  {
    std::size_t off = 0;
    for (const auto& b : blocks)
      for (std::size_t i = 0; i < b.size(); ++i) w[off++] = b.weight * b.mass[i];
  }
  std::vector<std::vector<double>> C(m, std::vector<double>(ntot, 0.0));
  for (std::size_t r = 0; r < op_rows.size(); ++r) C[r] = op_rows[r];
  {
    std::size_t off = 0;
    for (std::size_t bidx = 0; bidx < blocks.size(); ++bidx) {
      for (std::size_t i = 0; i < blocks[bidx].size(); ++i)
        C[op_rows.size() + bidx][off + i] = blocks[bidx].mass[i];
      off += blocks[bidx].size();
    }
  }

  std::vector<std::vector<double>> M(dim, std::vector<double>(dim, 0.0));
  std::vector<double> rhs(dim, 0.0);
  for (std::size_t i = 0; i < ntot; ++i) M[i][i] = w[i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i < ntot; ++i) {
      M[i][ntot + r] = C[r][i];
      M[ntot + r][i] = C[r][i];
    }
  for (std::size_t r = 0; r < y.size(); ++r) rhs[ntot + r] = y[r];

  const auto x = gauss_solve(std::move(M), std::move(rhs));
  KktSolution sol;
  sol.gamma.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(ntot));
  sol.value = 0;
  for (std::size_t i = 0; i < ntot; ++i) sol.value += 0.5 * w[i] * sol.gamma[i] * sol.gamma[i];
  return sol;
}

}  // namespace oracle
