// Internal dense linear algebra over F_p. Matrices are row-major
// std::vector<std::uint64_t> with entries already reduced mod p.
#pragma once

#include <cstdint>
#include <vector>

#include "qgen/field.hpp"

namespace qgen::detail {

using Mat = std::vector<std::uint64_t>;  // row-major rows x cols

/// Row rank via Gaussian elimination; destroys its working copy.
/// When `first_dependent_row` is non-null, stores the index of the first row
/// that reduced to zero against its predecessors (rows processed in order),
/// or rows if none did.
int fp_rank(Mat m, int rows, int cols, std::uint64_t p, int* first_dependent_row = nullptr);

/// Inverse of an n x n matrix; returns false when singular.
bool fp_invert(const Mat& m, int n, std::uint64_t p, Mat& out);

/// Solves the n x n system a * x = b; returns false when a is singular.
bool fp_solve(Mat a, std::vector<std::uint64_t> b, int n, std::uint64_t p,
              std::vector<std::uint64_t>& x);

/// c = a * b for a rows x inner, b inner x cols.
Mat fp_matmul(const Mat& a, const Mat& b, int rows, int inner, int cols, std::uint64_t p);

/// Incremental row echelon over F_p, used for independence bookkeeping.
class FpEchelon {
 public:
  FpEchelon(int cols, std::uint64_t p) : cols_(cols), p_(p) {}

  /// Reduces v against the current pivots; if a nonzero tail remains the
  /// normalized row is adopted and true is returned.
  bool add_if_independent(std::vector<std::uint64_t> v);

  /// True iff v lies in the span of the adopted rows.
  bool in_span(std::vector<std::uint64_t> v) const;

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  void reduce(std::vector<std::uint64_t>& v) const;
  int cols_;
  std::uint64_t p_;
  std::vector<std::vector<std::uint64_t>> rows_;  // leading entry 1
  std::vector<int> lead_;
};

}  // namespace qgen::detail
