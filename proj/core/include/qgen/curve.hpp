#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgen/field.hpp"
#include "qgen/projective.hpp"
#include "qgen/quadform.hpp"

namespace qgen {

/// Image of [x0:x1] under the degree-d Veronese map
/// [x0:x1] -> [x0^d : x0^(d-1) x1 : ... : x1^d].
ProjPoint veronese(int d, const ProjPoint& r);

/// All p+1 points of P^1(F_p): [1:0], [1:1], ..., [1:p-1], [0:1].
std::vector<ProjPoint> enumerate_p1(Prime p);

/// The d interpolation parameters R_1..R_d: [1:0], [1:1], ..., with [0:1]
/// taking the last slot when d = p+1. Requires d <= p+1.
std::vector<ProjPoint> canonical_parameters(Prime p, int d);

/// A rational normal curve phi(im nu_d) in P^d(F_p), held parametrically.
struct RationalNormalCurve {
  Prime p;
  int dim;
  ProjTransform phi;
};

/// True iff pt = phi(nu_d(r)) for some r in P^1, decided through the
/// parametrization (the preimage of pt is tested for Veronese shape).
bool curve_contains(const RationalNormalCurve& c, const ProjPoint& pt);

/// The curve through d general-position target points: targets[i] becomes
/// the image of the i-th canonical parameter. Throws InvalidInputError on
/// degenerate targets or when the field is too small (p + 1 < d).
RationalNormalCurve interpolate_rnc(std::span<const ProjPoint> targets, Prime p);

/// Images of all p+1 parameters, in parameter order; pairwise distinct.
std::vector<ProjPoint> enumerate_curve(const RationalNormalCurve& c);

/// The affine part of a curve through the ideal points of a rich basis,
/// together with everything needed to audit it.
struct Construction {
  Prime p;
  int dim;
  QuadraticForm form;
  RichBasis basis;
  std::vector<ProjPoint> ideal_pts;       // = curve points at infinity, as a set
  RationalNormalCurve curve;
  std::vector<std::vector<std::uint64_t>> points;  // |F| + 1 - d affine points
};

/// The full finite-field construction: rich basis -> ideal points ->
/// interpolated curve -> affine part. Requires 2 <= d <= p+1 and a rich
/// form; throws InfeasibleError when the form is irreducible of rank 2.
Construction construct_q_generic(const QuadraticForm& q, int d, std::uint64_t seed = 0);

}  // namespace qgen
