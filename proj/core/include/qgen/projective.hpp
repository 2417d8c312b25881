#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgen/field.hpp"

namespace qgen {

/// A point of P^d(F_p): d+1 homogeneous coordinates, scaled so the first
/// nonzero coordinate is exactly 1. Two points are equal iff their
/// coordinate vectors are identical.
struct ProjPoint {
  std::vector<Fp> coords;

  int ambient_dim() const { return static_cast<int>(coords.size()) - 1; }
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

/// Canonical representative of the projective class of `raw`.
/// Throws InvalidInputError on the all-zero vector.
ProjPoint normalize(std::vector<Fp> raw);

/// All (p^(dim+1) - 1) / (p - 1) points of P^dim(F_p), in lexicographic
/// order of their canonical coordinates.
std::vector<ProjPoint> enumerate_projective_space(Prime p, int dim);

/// True iff the (k+1) x (d+1) coordinate matrix of the points has full row
/// rank, i.e. no (k-1)-dimensional subspace contains all of them.
bool is_general_position(std::span<const ProjPoint> pts);

/// An invertible (d+1) x (d+1) matrix acting on P^d(F_p).
class ProjTransform {
 public:
  /// Validates invertibility; row-major entries. Throws InvalidInputError on
  /// a singular matrix.
  static ProjTransform from_matrix(Prime p, int dim, std::vector<std::uint64_t> entries);
  static ProjTransform identity(Prime p, int dim);

  ProjPoint apply(const ProjPoint& pt) const;
  ProjTransform inverse() const;

  int dim() const { return dim_; }
  Prime prime() const { return p_; }
  std::uint64_t entry(int i, int j) const { return m_[static_cast<std::size_t>(i) * (dim_ + 1) + j]; }

 private:
  ProjTransform(Prime p, int dim, std::vector<std::uint64_t> m) : p_(p), dim_(dim), m_(std::move(m)) {}
  Prime p_;
  int dim_;
  std::vector<std::uint64_t> m_;  // row-major (dim+1)^2
};

/// The transform mapping sources[i] to targets[i] for i = 0..d-1, where both
/// lists are d points of P^d in general position. Deterministic: both lists
/// are extended to a basis of F^(d+1) by the first standard basis vector
/// outside their span, and the unique matrix mapping representative to
/// representative (all scalars 1) is returned.
/// Throws InvalidInputError naming the offending subset when either list is
/// degenerate.
ProjTransform transform_mapping_points(std::span<const ProjPoint> sources,
                                       std::span<const ProjPoint> targets);

}  // namespace qgen
