#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <vector>

#include "qgen/field.hpp"
#include "qgen/quadform.hpp"

namespace qgen {

struct RatTerm {
  int i = 0;  // 0-based, i <= j
  int j = 0;
  mpq_class c;
};

/// A nonzero quadratic form with exact rational coefficients, d >= 2.
class RationalForm {
 public:
  static RationalForm from_terms(int dim, std::span<const RatTerm> terms);
  static RationalForm from_coeffs(int dim, std::vector<mpq_class> upper);
  static RationalForm sphere(int dim);

  int dim() const { return dim_; }
  const mpq_class& coeff(int i, int j) const;  // i <= j
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class evaluate(std::span<const mpq_class> v) const;

  /// The unique positive rescaling with integer coefficients of content 1.
  std::vector<mpz_class> integerized() const;

  friend bool operator==(const RationalForm&, const RationalForm&) = default;

 private:
  RationalForm(int dim, std::vector<mpq_class> c) : dim_(dim), c_(std::move(c)) {}
  int dim_;
  std::vector<mpq_class> c_;  // upper triangle row-major
};

/// A polynomial of total degree <= 2 over the rationals, the domain of the
/// reduction map.
struct RationalPoly {
  int dim = 0;
  mpq_class constant;
  std::vector<mpq_class> linear;  // size dim
  std::vector<mpq_class> quad;    // upper triangle, size dim*(dim+1)/2

  static RationalPoly zero(int dim);
  static RationalPoly from_form(const RationalForm& q);
  bool is_zero() const;
  /// 2, 1, 0, or -1 for the zero polynomial.
  int degree() const;
  mpq_class evaluate(std::span<const mpq_class> v) const;
};

/// Its image over F_p.
struct FpPoly {
  Prime p;
  int dim = 0;
  std::uint64_t constant = 0;
  std::vector<std::uint64_t> linear;
  std::vector<std::uint64_t> quad;

  bool is_zero() const;
  int degree() const;
  std::uint64_t evaluate_raw(std::span<const std::uint64_t> v) const;
};

/// The content-normalized reduction: scale F by the unique positive rational
/// making it integral of content 1, then reduce the coefficients mod p. Zero
/// maps to zero; any other input maps to a nonzero polynomial.
FpPoly reduce_mod_p(const RationalPoly& f, Prime p);

/// Form-to-form reduction; the result never degenerates in degree because
/// the content-1 coefficients cannot all vanish mod p.
QuadraticForm reduce_mod_p(const RationalForm& q, Prime p);

/// Exact classification over the rationals: Gram rank, and, for rank-2 forms
/// whose discriminant is not a rational square, an integer discriminant
/// representative (numerator times denominator of -4ab in diagonal
/// coordinates, e.g. -4 for the planar sphere).
struct RationalClassification {
  int rank = 0;
  std::optional<mpz_class> irreducible_rank2_delta;
};

RationalClassification classify_rational(const RationalForm& q);

}  // namespace qgen
