#include "qgen/curve.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qgen {

ProjPoint veronese(int d, const ProjPoint& r) {
  if (d < 1) throw InvalidInputError("veronese: degree must be >= 1");
  if (r.coords.size() != 2) throw InvalidInputError("veronese: parameter must lie in P^1");
  Prime p = Prime::checked(r.coords[0].modulus());
  std::uint64_t x0 = r.coords[0].residue();
  std::uint64_t x1 = r.coords[1].residue();
  // powers x0^(d-k) * x1^k for k = 0..d
  std::vector<std::uint64_t> pow0(d + 1, 1), pow1(d + 1, 1);
  for (int k = 1; k <= d; ++k) {
    pow0[k] = mul_mod(pow0[k - 1], x0, p.value());
    pow1[k] = mul_mod(pow1[k - 1], x1, p.value());
  }
  std::vector<Fp> c;
  c.reserve(d + 1);
  for (int k = 0; k <= d; ++k) c.emplace_back(p, mul_mod(pow0[d - k], pow1[k], p.value()));
  return normalize(std::move(c));
}

std::vector<ProjPoint> enumerate_p1(Prime p) {
  std::vector<ProjPoint> out;
  out.reserve(p.value() + 1);
  for (std::uint64_t t = 0; t < p.value(); ++t) {
    out.push_back(ProjPoint{{Fp(p, 1), Fp(p, t)}});
  }
  out.push_back(ProjPoint{{Fp(p, 0), Fp(p, 1)}});
  return out;
}

std::vector<ProjPoint> canonical_parameters(Prime p, int d) {
  if (d < 1 || static_cast<std::uint64_t>(d) > p.value() + 1) {
    throw InvalidInputError("canonical_parameters: need 1 <= d <= p+1");
  }
  std::vector<ProjPoint> out;
  out.reserve(d);
  for (int i = 1; i <= d; ++i) {
    if (static_cast<std::uint64_t>(i - 1) < p.value()) {
      out.push_back(ProjPoint{{Fp(p, 1), Fp(p, static_cast<std::uint64_t>(i - 1))}});
    } else {
      out.push_back(ProjPoint{{Fp(p, 0), Fp(p, 1)}});  // only reached when d = p+1
    }
  }
  return out;
}

bool curve_contains(const RationalNormalCurve& c, const ProjPoint& pt) {
  if (static_cast<int>(pt.coords.size()) != c.dim + 1) return false;
  ProjPoint w = c.phi.inverse().apply(pt);
  if (!w.coords[0].is_zero()) {
    // w normalized with leading 1, so the candidate parameter is [1 : w1].
    ProjPoint r{{Fp(c.p, 1), w.coords[1]}};
    return veronese(c.dim, r) == w;
  }
  ProjPoint last{{Fp(c.p, 0), Fp(c.p, 1)}};
  return veronese(c.dim, last) == w;
}

RationalNormalCurve interpolate_rnc(std::span<const ProjPoint> targets, Prime p) {
  int d = static_cast<int>(targets.size());
  if (d < 1) throw InvalidInputError("interpolate_rnc: no targets");
  if (p.value() + 1 < static_cast<std::uint64_t>(d)) {
    throw InfeasibleError("interpolate_rnc: field too small, need |F| + 1 >= d");
  }
  for (const auto& t : targets) {
    if (static_cast<int>(t.coords.size()) != d + 1) {
      throw InvalidInputError("interpolate_rnc: targets must lie in P^d for d = target count");
    }
  }
  std::vector<ProjPoint> params = canonical_parameters(p, d);
  std::vector<ProjPoint> sources;
  sources.reserve(d);
  for (const auto& r : params) sources.push_back(veronese(d, r));
  ProjTransform phi = transform_mapping_points(sources, targets);
  return RationalNormalCurve{p, d, std::move(phi)};
}

std::vector<ProjPoint> enumerate_curve(const RationalNormalCurve& c) {
  std::vector<ProjPoint> out;
  out.reserve(c.p.value() + 1);
  for (const auto& r : enumerate_p1(c.p)) {
    out.push_back(c.phi.apply(veronese(c.dim, r)));
  }
  return out;
}

Construction construct_q_generic(const QuadraticForm& q, int d, std::uint64_t seed) {
  if (d < 2) throw InvalidInputError("construct_q_generic: dimension must be >= 2");
  if (d != q.dim()) {
    throw InvalidInputError("construct_q_generic: form dimension does not match d");
  }
  Prime p = q.prime();
  if (static_cast<std::uint64_t>(d) > p.value() + 1) {
    throw InfeasibleError("construct_q_generic: need d <= p + 1");
  }
  FormClass cls = classify(q, seed);
  if (std::holds_alternative<IrreducibleRank2>(cls)) {
    throw InfeasibleError(
        "construct_q_generic: the form is irreducible of rank 2 over F_" +
        std::to_string(p.value()) + " (discriminant " +
        std::to_string(std::get<IrreducibleRank2>(cls).discriminant) +
        " is a non-square), so no rich basis exists");
  }
  RichBasis basis = std::get<RichBasis>(std::move(cls));
  std::vector<ProjPoint> ideal = ideal_points(basis);
  RationalNormalCurve curve = interpolate_rnc(ideal, p);

  std::vector<std::vector<std::uint64_t>> affine;
  std::vector<ProjPoint> at_infinity;
  for (const auto& pt : enumerate_curve(curve)) {
    if (pt.coords[0].is_zero()) {
      at_infinity.push_back(pt);
      continue;
    }
    // Normalized with leading coordinate 1, so the tail is already the
    // dehomogenized point.
    std::vector<std::uint64_t> x(d);
    for (int i = 0; i < d; ++i) x[i] = pt.coords[i + 1].residue();
    affine.push_back(std::move(x));
  }

  if (affine.size() != p.value() + 1 - static_cast<std::uint64_t>(d)) {
    throw std::logic_error("construct_q_generic: affine part has unexpected size");
  }
  auto sorted_eq = [](std::vector<ProjPoint> a, std::vector<ProjPoint> b) {
    auto key = [](const ProjPoint& pt) {
      std::vector<std::uint64_t> k(pt.coords.size());
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = pt.coords[i].residue();
      return k;
    };
    auto lt = [&](const ProjPoint& x, const ProjPoint& y) { return key(x) < key(y); };
    std::sort(a.begin(), a.end(), lt);
    std::sort(b.begin(), b.end(), lt);
    return a == b;
  };
  if (!sorted_eq(at_infinity, ideal)) {
    throw std::logic_error("construct_q_generic: points at infinity are not the ideal points");
  }

  return Construction{p, d, q, std::move(basis), std::move(ideal), std::move(curve),
                      std::move(affine)};
}

}  // namespace qgen
