#include "qgen/rational.hpp"

#include "sym_diag.hpp"

namespace qgen {

namespace {

std::size_t tri_index(int dim, int i, int j) {
  return static_cast<std::size_t>(i) * dim - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
}

/// Multiplies all coefficients by the unique positive rational giving
/// integers of content 1. Zero input yields all zeros.
std::vector<mpz_class> content_normalize(const std::vector<mpq_class>& coeffs) {
  mpz_class lcm_den = 1;
  bool any = false;
  for (const auto& c : coeffs) {
    if (c == 0) continue;
    any = true;
    mpz_class den = c.get_den();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<mpz_class> out(coeffs.size(), mpz_class(0));
  if (!any) return out;
  mpz_class content = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    mpq_class scaled = coeffs[k] * lcm_den;
    out[k] = scaled.get_num();  // denominator is 1 by construction
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out[k].get_mpz_t());
  }
  for (auto& c : out) c /= content;
  return out;
}

std::uint64_t mpz_residue(const mpz_class& a, Prime p) {
  mpz_class r, m(static_cast<unsigned long>(p.value()));
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r.get_ui();
}

}  // namespace

RationalForm RationalForm::from_coeffs(int dim, std::vector<mpq_class> upper) {
  if (dim < 2) throw InvalidInputError("RationalForm: dimension must be >= 2");
  std::size_t want = static_cast<std::size_t>(dim) * (dim + 1) / 2;
  if (upper.size() != want) throw InvalidInputError("RationalForm: wrong coefficient count");
  bool nonzero = false;
  for (auto& c : upper) {
    c.canonicalize();
    nonzero = nonzero || c != 0;
  }
  if (!nonzero) throw InvalidInputError("RationalForm: the zero form is not admitted");
  return RationalForm(dim, std::move(upper));
}

RationalForm RationalForm::from_terms(int dim, std::span<const RatTerm> terms) {
  if (dim < 2) throw InvalidInputError("RationalForm: dimension must be >= 2");
  std::vector<mpq_class> c(static_cast<std::size_t>(dim) * (dim + 1) / 2, mpq_class(0));
  std::vector<bool> seen(c.size(), false);
  for (const RatTerm& t : terms) {
    if (t.i < 0 || t.j < t.i || t.j >= dim) {
      throw InvalidInputError("RationalForm: term index out of range");
    }
    std::size_t k = tri_index(dim, t.i, t.j);
    if (seen[k]) throw InvalidInputError("RationalForm: duplicate coefficient");
    seen[k] = true;
    c[k] = t.c;
  }
  return from_coeffs(dim, std::move(c));
}

RationalForm RationalForm::sphere(int dim) {
  if (dim < 2) throw InvalidInputError("RationalForm: dimension must be >= 2");
  std::vector<mpq_class> c(static_cast<std::size_t>(dim) * (dim + 1) / 2, mpq_class(0));
  for (int i = 0; i < dim; ++i) c[tri_index(dim, i, i)] = 1;
  return RationalForm(dim, std::move(c));
}

const mpq_class& RationalForm::coeff(int i, int j) const {
  return c_[tri_index(dim_, i, j)];
}

mpq_class RationalForm::evaluate(std::span<const mpq_class> v) const {
  if (static_cast<int>(v.size()) != dim_) {
    throw InvalidInputError("RationalForm::evaluate: wrong vector length");
  }
  mpq_class acc = 0;
  std::size_t k = 0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j, ++k) {
      if (c_[k] != 0) acc += c_[k] * v[i] * v[j];
    }
  }
  return acc;
}

std::vector<mpz_class> RationalForm::integerized() const {
  return content_normalize(c_);
}

RationalPoly RationalPoly::zero(int dim) {
  RationalPoly f;
  f.dim = dim;
  f.linear.assign(dim, mpq_class(0));
  f.quad.assign(static_cast<std::size_t>(dim) * (dim + 1) / 2, mpq_class(0));
  return f;
}

RationalPoly RationalPoly::from_form(const RationalForm& q) {
  RationalPoly f = zero(q.dim());
  f.quad = q.coeffs();
  return f;
}

bool RationalPoly::is_zero() const { return degree() < 0; }

int RationalPoly::degree() const {
  for (const auto& c : quad) {
    if (c != 0) return 2;
  }
  for (const auto& c : linear) {
    if (c != 0) return 1;
  }
  return constant != 0 ? 0 : -1;
}

mpq_class RationalPoly::evaluate(std::span<const mpq_class> v) const {
  if (static_cast<int>(v.size()) != dim) {
    throw InvalidInputError("RationalPoly::evaluate: wrong vector length");
  }
  mpq_class acc = constant;
  for (int i = 0; i < dim; ++i) acc += linear[i] * v[i];
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j, ++k) {
      if (quad[k] != 0) acc += quad[k] * v[i] * v[j];
    }
  }
  return acc;
}

bool FpPoly::is_zero() const { return degree() < 0; }

int FpPoly::degree() const {
  for (auto c : quad) {
    if (c != 0) return 2;
  }
  for (auto c : linear) {
    if (c != 0) return 1;
  }
  return constant != 0 ? 0 : -1;
}

std::uint64_t FpPoly::evaluate_raw(std::span<const std::uint64_t> v) const {
  if (static_cast<int>(v.size()) != dim) {
    throw InvalidInputError("FpPoly::evaluate: wrong vector length");
  }
  std::uint64_t pv = p.value();
  std::uint64_t acc = constant;
  for (int i = 0; i < dim; ++i) acc = add_mod(acc, mul_mod(linear[i], v[i] % pv, pv), pv);
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j, ++k) {
      if (quad[k] == 0) continue;
      acc = add_mod(acc, mul_mod(quad[k], mul_mod(v[i] % pv, v[j] % pv, pv), pv), pv);
    }
  }
  return acc;
}

FpPoly reduce_mod_p(const RationalPoly& f, Prime p) {
  std::vector<mpq_class> all;
  all.reserve(1 + f.linear.size() + f.quad.size());
  all.push_back(f.constant);
  all.insert(all.end(), f.linear.begin(), f.linear.end());
  all.insert(all.end(), f.quad.begin(), f.quad.end());
  std::vector<mpz_class> ints = content_normalize(all);

  FpPoly out{p, f.dim, 0, {}, {}};
  out.constant = mpz_residue(ints[0], p);
  out.linear.resize(f.linear.size());
  out.quad.resize(f.quad.size());
  for (std::size_t i = 0; i < f.linear.size(); ++i) out.linear[i] = mpz_residue(ints[1 + i], p);
  for (std::size_t i = 0; i < f.quad.size(); ++i) {
    out.quad[i] = mpz_residue(ints[1 + f.linear.size() + i], p);
  }
  return out;
}

QuadraticForm reduce_mod_p(const RationalForm& q, Prime p) {
  std::vector<mpz_class> ints = q.integerized();
  std::vector<std::uint64_t> c(ints.size());
  bool nonzero = false;
  for (std::size_t i = 0; i < ints.size(); ++i) {
    c[i] = mpz_residue(ints[i], p);
    nonzero = nonzero || c[i] != 0;
  }
  if (!nonzero) {
    // Content 1 rules this out; kept as a hard stop rather than an assert.
    throw std::logic_error("reduce_mod_p: content-1 form vanished mod p");
  }
  return QuadraticForm::from_coeffs(p, q.dim(), std::move(c));
}

RationalClassification classify_rational(const RationalForm& q) {
  int d = q.dim();
  std::vector<std::vector<mpq_class>> g(d, std::vector<mpq_class>(d, mpq_class(0)));
  for (int i = 0; i < d; ++i) {
    g[i][i] = q.coeff(i, i);
    for (int j = i + 1; j < d; ++j) {
      mpq_class half = q.coeff(i, j) / 2;
      g[i][j] = half;
      g[j][i] = half;
    }
  }
  std::vector<mpq_class> diag = detail::sym_diagonalize(std::move(g), mpq_class(0));

  RationalClassification out;
  mpq_class a = 0, b = 0;
  for (const auto& x : diag) {
    if (x == 0) continue;
    ++out.rank;
    if (out.rank == 1) a = x;
    if (out.rank == 2) b = x;
  }
  if (out.rank != 2) return out;

  mpq_class delta_q = -4 * a * b;
  delta_q.canonicalize();
  // num*den represents the square class of delta as an integer; a rational
  // is a square iff this integer is a perfect square.
  mpz_class delta_int = delta_q.get_num() * delta_q.get_den();
  bool square = delta_int >= 0 && mpz_perfect_square_p(delta_int.get_mpz_t());
  if (!square) out.irreducible_rank2_delta = delta_int;
  return out;
}

}  // namespace qgen
