#include "qgen/quadform.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "fp_linalg.hpp"
#include "sym_diag.hpp"

namespace qgen {

namespace {

constexpr double kEnumerationLimit = 2e6;

std::size_t tri_index(int dim, int i, int j) {
  // row-major upper triangle
  return static_cast<std::size_t>(i) * dim - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
}

std::vector<std::vector<Fp>> gram_matrix(const QuadraticForm& q) {
  Prime p = q.prime();
  int d = q.dim();
  Fp inv2 = Fp(p, 2).inv();
  std::vector<std::vector<Fp>> g(d, std::vector<Fp>(d, Fp(p, 0)));
  for (int i = 0; i < d; ++i) {
    g[i][i] = Fp(p, q.coeff(i, i));
    for (int j = i + 1; j < d; ++j) {
      Fp half = Fp(p, q.coeff(i, j)) * inv2;
      g[i][j] = half;
      g[j][i] = half;
    }
  }
  return g;
}

/// Diagonal of the congruence-diagonalized Gram matrix.
std::vector<Fp> gram_diagonal(const QuadraticForm& q) {
  return detail::sym_diagonalize(gram_matrix(q), Fp(q.prime(), 0));
}

int rank_of_diagonal(const std::vector<Fp>& diag) {
  int r = 0;
  for (const Fp& x : diag) {
    if (!x.is_zero()) ++r;
  }
  return r;
}

}  // namespace

std::optional<std::uint64_t> irreducible_rank2_discriminant(const QuadraticForm& q) {
  std::vector<Fp> diag = gram_diagonal(q);
  if (rank_of_diagonal(diag) != 2) return std::nullopt;
  Fp a(q.prime(), 0), b(q.prime(), 0);
  bool have_a = false;
  for (const Fp& x : diag) {
    if (x.is_zero()) continue;
    if (!have_a) {
      a = x;
      have_a = true;
    } else {
      b = x;
    }
  }
  // In diagonal coordinates Q = a L1^2 + b L2^2, so the discriminant is -4ab.
  Fp delta = -(Fp(q.prime(), 4) * a * b);
  if (is_square(delta)) return std::nullopt;
  return delta.residue();
}

namespace {

/// Advances v through F_p^d in lexicographic digit order; false on wrap.
bool next_vector(std::vector<std::uint64_t>& v, std::uint64_t p) {
  int k = static_cast<int>(v.size()) - 1;
  while (k >= 0 && v[k] == p - 1) v[k--] = 0;
  if (k < 0) return false;
  ++v[k];
  return true;
}

std::optional<RichBasis> rich_basis_exhaustive(const QuadraticForm& q) {
  Prime p = q.prime();
  int d = q.dim();
  detail::FpEchelon family(d, p.value());
  std::vector<std::vector<std::uint64_t>> isotropic;
  std::vector<std::uint64_t> v(d, 0);
  while (next_vector(v, p.value()) && static_cast<int>(isotropic.size()) < d - 1) {
    if (q.evaluate_raw(v) != 0) continue;
    if (family.add_if_independent(v)) isotropic.push_back(v);
  }
  if (static_cast<int>(isotropic.size()) < d - 1) return std::nullopt;
  std::fill(v.begin(), v.end(), 0);
  while (next_vector(v, p.value())) {
    if (q.evaluate_raw(v) == 0) continue;
    if (family.in_span(v)) continue;
    RichBasis b{p, d, std::move(isotropic)};
    b.vectors.push_back(v);
    return b;
  }
  return std::nullopt;
}

std::optional<RichBasis> rich_basis_random(const QuadraticForm& q, std::uint64_t seed) {
  // The enumeration threshold is exceeded, so the exhaustive NotRich answer
  // is unavailable; decide NotRich algebraically first, then search knowing
  // the form is rich.
  if (irreducible_rank2_discriminant(q)) return std::nullopt;

  Prime p = q.prime();
  int d = q.dim();
  std::mt19937_64 rng(seed);
  auto rand_vec = [&] {
    std::vector<std::uint64_t> v(d);
    for (auto& x : v) x = rng() % p.value();
    return v;
  };

  detail::FpEchelon family(d, p.value());
  std::vector<std::vector<std::uint64_t>> isotropic;
  const int max_slices = 64 * d;
  for (int slice = 0; slice < max_slices && static_cast<int>(isotropic.size()) < d - 1; ++slice) {
    std::vector<std::uint64_t> a = rand_vec();
    std::vector<std::uint64_t> b = rand_vec();
    {
      detail::FpEchelon pair(d, p.value());
      if (!pair.add_if_independent(a) || !pair.add_if_independent(b)) continue;
    }
    // Scan the projective line of span{a, b}: b + t*a for all t, then a.
    std::vector<std::uint64_t> v(d);
    for (std::uint64_t t = 0; t <= p.value(); ++t) {
      if (t == p.value()) {
        v = a;
      } else {
        for (int i = 0; i < d; ++i) {
          v[i] = add_mod(b[i], mul_mod(t, a[i], p.value()), p.value());
        }
      }
      if (q.evaluate_raw(v) != 0) continue;
      if (family.add_if_independent(v)) {
        isotropic.push_back(v);
        if (static_cast<int>(isotropic.size()) == d - 1) break;
      }
    }
  }
  if (static_cast<int>(isotropic.size()) < d - 1) {
    throw std::logic_error("rich_basis: slice sampling failed on a form classified as rich");
  }
  for (int tries = 0; tries < 4096; ++tries) {
    std::vector<std::uint64_t> v = rand_vec();
    if (q.evaluate_raw(v) == 0) continue;
    if (family.in_span(v)) continue;
    RichBasis b{p, d, std::move(isotropic)};
    b.vectors.push_back(std::move(v));
    return b;
  }
  throw std::logic_error("rich_basis: no anisotropic completion found for a rich form");
}

}  // namespace

QuadraticForm QuadraticForm::from_coeffs(Prime p, int dim, std::vector<std::uint64_t> upper) {
  if (dim < 2) throw InvalidInputError("QuadraticForm: dimension must be >= 2");
  std::size_t want = static_cast<std::size_t>(dim) * (dim + 1) / 2;
  if (upper.size() != want) throw InvalidInputError("QuadraticForm: wrong coefficient count");
  bool nonzero = false;
  for (auto& c : upper) {
    c %= p.value();
    nonzero = nonzero || c != 0;
  }
  if (!nonzero) throw InvalidInputError("QuadraticForm: the zero form is not admitted");
  return QuadraticForm(p, dim, std::move(upper));
}

QuadraticForm QuadraticForm::from_terms(Prime p, int dim, std::span<const FormTerm> terms) {
  if (dim < 2) throw InvalidInputError("QuadraticForm: dimension must be >= 2");
  std::vector<std::uint64_t> c(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0);
  std::vector<bool> seen(c.size(), false);
  for (const FormTerm& t : terms) {
    if (t.i < 0 || t.j < t.i || t.j >= dim) {
      throw InvalidInputError("QuadraticForm: term index out of range");
    }
    std::size_t k = tri_index(dim, t.i, t.j);
    if (seen[k]) throw InvalidInputError("QuadraticForm: duplicate coefficient");
    seen[k] = true;
    c[k] = t.c % p.value();
  }
  return from_coeffs(p, dim, std::move(c));
}

QuadraticForm QuadraticForm::sphere(Prime p, int dim) {
  if (dim < 2) throw InvalidInputError("QuadraticForm: dimension must be >= 2");
  std::vector<std::uint64_t> c(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0);
  for (int i = 0; i < dim; ++i) c[tri_index(dim, i, i)] = 1;
  return QuadraticForm(p, dim, std::move(c));
}

std::uint64_t QuadraticForm::coeff(int i, int j) const {
  return c_[tri_index(dim_, i, j)];
}

std::uint64_t QuadraticForm::evaluate_raw(std::span<const std::uint64_t> v) const {
  if (static_cast<int>(v.size()) != dim_) {
    throw InvalidInputError("QuadraticForm::evaluate: wrong vector length");
  }
  std::uint64_t p = p_.value();
  std::uint64_t acc = 0;
  std::size_t k = 0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j, ++k) {
      if (c_[k] == 0) continue;
      acc = add_mod(acc, mul_mod(c_[k], mul_mod(v[i] % p, v[j] % p, p), p), p);
    }
  }
  return acc;
}

Fp QuadraticForm::evaluate(std::span<const Fp> v) const {
  std::vector<std::uint64_t> raw(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) raw[i] = v[i].residue();
  return Fp(p_, evaluate_raw(raw));
}

int gram_rank(const QuadraticForm& q) {
  return rank_of_diagonal(gram_diagonal(q));
}

bool rich_basis_valid(const QuadraticForm& q, const RichBasis& b) {
  int d = q.dim();
  if (b.dim != d || !(b.p == q.prime())) return false;
  if (static_cast<int>(b.vectors.size()) != d) return false;
  detail::Mat m;
  for (const auto& v : b.vectors) {
    if (static_cast<int>(v.size()) != d) return false;
    m.insert(m.end(), v.begin(), v.end());
  }
  if (detail::fp_rank(std::move(m), d, d, q.prime().value()) != d) return false;
  for (int i = 0; i < d - 1; ++i) {
    if (q.evaluate_raw(b.vectors[i]) != 0) return false;
  }
  return q.evaluate_raw(b.vectors[d - 1]) != 0;
}

std::optional<RichBasis> rich_basis(const QuadraticForm& q, std::uint64_t seed) {
  double total = 1;
  for (int i = 0; i < q.dim(); ++i) total *= static_cast<double>(q.prime().value());
  std::optional<RichBasis> b = total <= kEnumerationLimit ? rich_basis_exhaustive(q)
                                                          : rich_basis_random(q, seed);
  if (b && !rich_basis_valid(q, *b)) {
    throw std::logic_error("rich_basis: search produced an invalid basis");
  }
  return b;
}

FormClass classify(const QuadraticForm& q, std::uint64_t seed) {
  if (auto delta = irreducible_rank2_discriminant(q)) {
    return IrreducibleRank2{*delta};
  }
  std::optional<RichBasis> b = rich_basis(q, seed);
  if (!b) {
    throw std::logic_error(
        "classify: form is neither irreducible of rank 2 nor rich; "
        "this contradicts the finite-field dichotomy");
  }
  return *std::move(b);
}

std::vector<ProjPoint> ideal_points(const RichBasis& b) {
  std::vector<ProjPoint> out;
  out.reserve(b.vectors.size());
  for (const auto& v : b.vectors) {
    std::vector<Fp> c;
    c.reserve(v.size() + 1);
    c.emplace_back(b.p, 0);
    for (std::uint64_t x : v) c.emplace_back(b.p, x);
    out.push_back(normalize(std::move(c)));
  }
  return out;
}

}  // namespace qgen
