#include "fp_linalg.hpp"

namespace qgen::detail {

int fp_rank(Mat m, int rows, int cols, std::uint64_t p, int* first_dependent_row) {
  FpEchelon ech(cols, p);
  if (first_dependent_row) *first_dependent_row = rows;
  int rank = 0;
  for (int i = 0; i < rows; ++i) {
    std::vector<std::uint64_t> row(m.begin() + static_cast<std::ptrdiff_t>(i) * cols,
                                   m.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols);
    if (ech.add_if_independent(std::move(row))) {
      ++rank;
    } else if (first_dependent_row && *first_dependent_row == rows) {
      *first_dependent_row = i;
    }
  }
  return rank;
}

bool fp_invert(const Mat& m, int n, std::uint64_t p, Mat& out) {
  // Gauss-Jordan on [m | I].
  std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m[static_cast<std::size_t>(i) * n + j];
    a[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i) {
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return false;
    std::swap(a[col], a[piv]);
    std::uint64_t inv = inv_mod(a[col][col], p);
    for (int j = 0; j < 2 * n; ++j) a[col][j] = mul_mod(a[col][j], inv, p);
    for (int i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      std::uint64_t f = a[i][col];
      for (int j = 0; j < 2 * n; ++j) {
        a[i][j] = sub_mod(a[i][j], mul_mod(f, a[col][j], p), p);
      }
    }
  }
  out.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = a[i][n + j];
  }
  return true;
}

bool fp_solve(Mat a, std::vector<std::uint64_t> b, int n, std::uint64_t p,
              std::vector<std::uint64_t>& x) {
  Mat inv;
  if (!fp_invert(a, n, p, inv)) return false;
  x.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (int j = 0; j < n; ++j) {
      acc = add_mod(acc, mul_mod(inv[static_cast<std::size_t>(i) * n + j], b[j], p), p);
    }
    x[i] = acc;
  }
  return true;
}

Mat fp_matmul(const Mat& a, const Mat& b, int rows, int inner, int cols, std::uint64_t p) {
  Mat c(static_cast<std::size_t>(rows) * cols, 0);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < inner; ++k) {
      std::uint64_t aik = a[static_cast<std::size_t>(i) * inner + k];
      if (aik == 0) continue;
      for (int j = 0; j < cols; ++j) {
        std::size_t cij = static_cast<std::size_t>(i) * cols + j;
        c[cij] = add_mod(c[cij], mul_mod(aik, b[static_cast<std::size_t>(k) * cols + j], p), p);
      }
    }
  }
  return c;
}

void FpEchelon::reduce(std::vector<std::uint64_t>& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::uint64_t c = v[lead_[r]];
    if (c == 0) continue;
    for (int j = lead_[r]; j < cols_; ++j) {
      v[j] = sub_mod(v[j], mul_mod(c, rows_[r][j], p_), p_);
    }
  }
}

bool FpEchelon::add_if_independent(std::vector<std::uint64_t> v) {
  reduce(v);
  int lead = -1;
  for (int j = 0; j < cols_; ++j) {
    if (v[j] != 0) {
      lead = j;
      break;
    }
  }
  if (lead < 0) return false;
  std::uint64_t inv = inv_mod(v[lead], p_);
  for (int j = lead; j < cols_; ++j) v[j] = mul_mod(v[j], inv, p_);
  rows_.push_back(std::move(v));
  lead_.push_back(lead);
  return true;
}

bool FpEchelon::in_span(std::vector<std::uint64_t> v) const {
  reduce(v);
  for (std::uint64_t c : v) {
    if (c != 0) return false;
  }
  return true;
}

}  // namespace qgen::detail
