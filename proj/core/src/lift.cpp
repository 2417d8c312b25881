#include "qgen/lift.hpp"

namespace qgen {

namespace {

/// One candidate examination; nullopt when usable.
std::optional<std::string> rejection_reason(const RationalForm& q, Prime p) {
  if (p.value() + 1 < static_cast<std::uint64_t>(q.dim())) {
    return "field too small for the dimension";
  }
  QuadraticForm qp = reduce_mod_p(q, p);
  if (auto delta = irreducible_rank2_discriminant(qp)) {
    return "reduction is irreducible of rank 2 (discriminant " + std::to_string(*delta) +
           " is a non-square)";
  }
  return std::nullopt;
}

}  // namespace

Prime choose_prime(std::uint64_t n, const RationalForm& q) {
  if (n < 3) throw InvalidInputError("choose_prime: n must be >= 3");
  RationalClassification rc = classify_rational(q);

  std::optional<ResidueClass> klass;
  if (rc.irreducible_rank2_delta) {
    mpz_class m = 4 * abs(*rc.irreducible_rank2_delta);
    if (!m.fits_ulong_p()) {
      throw InvalidInputError("choose_prime: discriminant too large for a progression scan");
    }
    klass = ResidueClass{1, m.get_ui()};
  }

  std::vector<PrimeRejection> rejected;
  std::uint64_t k = n;
  while (true) {
    Prime p = [&] {
      try {
        return scan_prime_below(k, klass);
      } catch (const InfeasibleError&) {
        std::string cls = klass ? " in the progression 1 (mod " + std::to_string(klass->m) + ")"
                                : "";
        throw PrimeSearchError("choose_prime: no usable prime <= " + std::to_string(n) + cls +
                                   " for this form (" + std::to_string(rejected.size()) +
                                   " candidates rejected)",
                               std::move(rejected));
      }
    }();
    if (auto reason = rejection_reason(q, p)) {
      rejected.push_back(PrimeRejection{p.value(), *reason});
      if (p.value() <= 3) {
        throw PrimeSearchError("choose_prime: no usable prime <= " + std::to_string(n) +
                                   " for this form (" + std::to_string(rejected.size()) +
                                   " candidates rejected)",
                               std::move(rejected));
      }
      k = p.value() - 1;
      continue;
    }
    return p;
  }
}

GridConstruction lift_to_grid(const Construction& c, const RationalForm& q) {
  if (q.dim() != c.dim) throw InvalidInputError("lift_to_grid: dimension mismatch");
  if (!(reduce_mod_p(q, c.p) == c.form)) {
    throw InvalidInputError(
        "lift_to_grid: the construction was not built from the reduction of this form at p = " +
        std::to_string(c.p.value()));
  }
  std::vector<std::vector<std::int64_t>> pts;
  pts.reserve(c.points.size());
  for (const auto& x : c.points) {
    std::vector<std::int64_t> row(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      row[i] = x[i] == 0 ? static_cast<std::int64_t>(c.p.value())
                         : static_cast<std::int64_t>(x[i]);
    }
    pts.push_back(std::move(row));
  }
  return GridConstruction{c.p.value(), c.p, c.dim, q, c.form, c, std::move(pts)};
}

GridConstruction construct_grid(std::uint64_t n, int d, const RationalForm& q,
                                std::uint64_t seed) {
  if (d < 2) throw InvalidInputError("construct_grid: dimension must be >= 2");
  if (d != q.dim()) throw InvalidInputError("construct_grid: form dimension does not match d");
  Prime p = choose_prime(n, q);
  QuadraticForm qp = reduce_mod_p(q, p);
  Construction c = construct_q_generic(qp, d, seed);
  GridConstruction g = lift_to_grid(c, q);
  g.n = n;
  return g;
}

}  // namespace qgen
