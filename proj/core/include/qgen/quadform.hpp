#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qgen/field.hpp"
#include "qgen/projective.hpp"

namespace qgen {

struct FormTerm {
  int i = 0;  // 0-based, i <= j
  int j = 0;
  std::uint64_t c = 0;
};

/// A nonzero quadratic form sum_{i<=j} c_ij X_i X_j over F_p, d >= 2.
class QuadraticForm {
 public:
  static QuadraticForm from_terms(Prime p, int dim, std::span<const FormTerm> terms);
  /// Upper triangle row-major: (0,0), (0,1), ..., (0,d-1), (1,1), ...
  static QuadraticForm from_coeffs(Prime p, int dim, std::vector<std::uint64_t> upper);
  /// X_1^2 + ... + X_d^2.
  static QuadraticForm sphere(Prime p, int dim);

  int dim() const { return dim_; }
  Prime prime() const { return p_; }
  std::uint64_t coeff(int i, int j) const;  // requires i <= j
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  std::uint64_t evaluate_raw(std::span<const std::uint64_t> v) const;
  Fp evaluate(std::span<const Fp> v) const;

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  QuadraticForm(Prime p, int dim, std::vector<std::uint64_t> c)
      : p_(p), dim_(dim), c_(std::move(c)) {}
  Prime p_;
  int dim_;
  std::vector<std::uint64_t> c_;
};

/// Rank of the symmetric Gram matrix (G_ii = c_ii, G_ij = c_ij / 2).
int gram_rank(const QuadraticForm& q);

/// The discriminant of the rank-2 part when the form has Gram rank 2 AND
/// that discriminant is a non-square (the irreducible case); nullopt
/// otherwise. This is the search-free side of the dichotomy.
std::optional<std::uint64_t> irreducible_rank2_discriminant(const QuadraticForm& q);

/// A basis v_1..v_d of F_p^d with Q(v_i) = 0 for i < d and Q(v_d) != 0.
/// The anisotropic vector is last.
struct RichBasis {
  Prime p;
  int dim = 0;
  std::vector<std::vector<std::uint64_t>> vectors;
};

/// Re-checks the three RichBasis invariants independently of how the basis
/// was found.
bool rich_basis_valid(const QuadraticForm& q, const RichBasis& b);

/// Searches for a rich basis. Exhaustive vector enumeration when p^d is
/// small enough (<= 2e6); seeded random 2-dimensional slices otherwise.
/// nullopt means the form is not rich.
std::optional<RichBasis> rich_basis(const QuadraticForm& q, std::uint64_t seed = 0);

struct IrreducibleRank2 {
  std::uint64_t discriminant = 0;  // lambda_12^2 - 4*lambda_11*lambda_22 mod p, a non-square
};

using FormClass = std::variant<RichBasis, IrreducibleRank2>;

/// Every nonzero form over an odd prime field is rich or irreducible of rank
/// 2; returns the witness for whichever holds.
FormClass classify(const QuadraticForm& q, std::uint64_t seed = 0);

/// Projective points [0 : v_i] in the ideal hyperplane, one per basis
/// vector, anisotropic last; always in general position.
std::vector<ProjPoint> ideal_points(const RichBasis& b);

}  // namespace qgen
