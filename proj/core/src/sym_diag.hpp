// Congruence diagonalization of a symmetric matrix over a field of
// characteristic != 2. Returns the diagonal entries; the number of nonzero
// ones is the rank of the form.
#pragma once

#include <utility>
#include <vector>

namespace qgen::detail {

template <class K>
std::vector<K> sym_diagonalize(std::vector<std::vector<K>> g, const K& zero) {
  int n = static_cast<int>(g.size());
  auto swap_basis = [&](int a, int b) {
    if (a == b) return;
    for (int j = 0; j < n; ++j) std::swap(g[a][j], g[b][j]);
    for (int i = 0; i < n; ++i) std::swap(g[i][a], g[i][b]);
  };
  auto add_basis = [&](int a, int b) {  // e_a <- e_a + e_b
    for (int j = 0; j < n; ++j) g[a][j] = g[a][j] + g[b][j];
    for (int i = 0; i < n; ++i) g[i][a] = g[i][a] + g[i][b];
  };
  for (int k = 0; k < n; ++k) {
    if (g[k][k] == zero) {
      int di = -1;
      for (int i = k + 1; i < n; ++i) {
        if (!(g[i][i] == zero)) {
          di = i;
          break;
        }
      }
      if (di >= 0) {
        swap_basis(k, di);
      } else {
        int oi = -1, oj = -1;
        for (int i = k; i < n && oi < 0; ++i) {
          for (int j = i + 1; j < n; ++j) {
            if (!(g[i][j] == zero)) {
              oi = i;
              oj = j;
              break;
            }
          }
        }
        if (oi < 0) break;  // remaining block is zero
        add_basis(oi, oj);  // g[oi][oi] becomes 2*g[oi][oj] != 0
        swap_basis(k, oi);
      }
    }
    K pivot = g[k][k];
    for (int i = k + 1; i < n; ++i) {
      if (g[i][k] == zero) continue;
      K f = g[i][k] / pivot;
      for (int j = 0; j < n; ++j) g[i][j] = g[i][j] - f * g[k][j];
      for (int j = 0; j < n; ++j) g[j][i] = g[j][i] - f * g[j][k];
    }
  }
  std::vector<K> diag(n, zero);
  for (int i = 0; i < n; ++i) diag[i] = g[i][i];
  return diag;
}

}  // namespace qgen::detail
