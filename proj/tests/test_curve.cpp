#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qgen/curve.hpp>

#include <set>

using namespace qgen;

namespace {

ProjPoint pt(Prime p, std::initializer_list<std::uint64_t> v) {
  std::vector<Fp> c;
  for (auto x : v) c.emplace_back(p, x);
  return normalize(std::move(c));
}

std::vector<std::uint64_t> res(const ProjPoint& q) {
  std::vector<std::uint64_t> out;
  for (const auto& c : q.coords) out.push_back(c.residue());
  return out;
}

}  // namespace

TEST_CASE("veronese") {
  Prime p7 = Prime::checked(7);
  CHECK(res(veronese(3, pt(p7, {1, 0}))) == std::vector<std::uint64_t>{1, 0, 0, 0});
  CHECK(res(veronese(3, pt(p7, {0, 1}))) == std::vector<std::uint64_t>{0, 0, 0, 1});
  CHECK(res(veronese(2, pt(p7, {1, 3}))) == std::vector<std::uint64_t>{1, 3, 2});  // 9 mod 7
}

TEST_CASE("veronese is injective on P^1") {
  for (std::uint64_t pv : {3ull, 5ull, 7ull, 11ull, 13ull, 31ull, 47ull}) {
    Prime p = Prime::checked(pv);
    for (int d = 2; d <= 3; ++d) {
      std::set<std::vector<std::uint64_t>> images;
      auto params = enumerate_p1(p);
      for (const auto& r : params) images.insert(res(veronese(d, r)));
      CHECK(images.size() == params.size());
    }
  }
}

TEST_CASE("canonical parameters") {
  Prime p5 = Prime::checked(5);
  auto params = canonical_parameters(p5, 3);
  REQUIRE(params.size() == 3);
  CHECK(res(params[0]) == std::vector<std::uint64_t>{1, 0});
  CHECK(res(params[2]) == std::vector<std::uint64_t>{1, 2});
  // d = p + 1 needs the point at infinity as the last parameter
  Prime p3 = Prime::checked(3);
  auto full = canonical_parameters(p3, 4);
  CHECK(res(full[3]) == std::vector<std::uint64_t>{0, 1});
  std::set<std::vector<std::uint64_t>> uniq;
  for (const auto& r : full) uniq.insert(res(r));
  CHECK(uniq.size() == 4);
  CHECK_THROWS_AS(canonical_parameters(p3, 5), InvalidInputError);
}

TEST_CASE("interpolate_rnc") {
  Prime p5 = Prime::checked(5);

  SUBCASE("through the canonical Veronese images themselves") {
    std::vector<ProjPoint> targets;
    for (const auto& r : canonical_parameters(p5, 2)) targets.push_back(veronese(2, r));
    auto c = interpolate_rnc(targets, p5);
    for (const auto& t : targets) CHECK(curve_contains(c, t));
  }

  SUBCASE("documented d=2, p=5 instance") {
    std::vector<ProjPoint> targets = {pt(p5, {0, 1, 2}), pt(p5, {0, 1, 0})};
    auto c = interpolate_rnc(targets, p5);
    CHECK(curve_contains(c, targets[0]));
    CHECK(curve_contains(c, targets[1]));
  }

  SUBCASE("equal projective targets are rejected") {
    std::vector<ProjPoint> targets = {pt(p5, {1, 0, 0}), pt(p5, {2, 0, 0})};
    CHECK_THROWS_AS(interpolate_rnc(targets, p5), InvalidInputError);
  }

  SUBCASE("field too small") {
    Prime p3 = Prime::checked(3);
    std::vector<ProjPoint> targets;
    for (int i = 0; i < 5; ++i) {
      std::vector<Fp> c(6, Fp(p3, 0));
      c[i] = Fp(p3, 1);
      targets.push_back(ProjPoint{c});
    }
    CHECK_THROWS_AS(interpolate_rnc(targets, p3), InfeasibleError);
  }
}

TEST_CASE("enumerate_curve") {
  Prime p3 = Prime::checked(3);
  RationalNormalCurve c{p3, 2, ProjTransform::identity(p3, 2)};
  auto pts = enumerate_curve(c);
  CHECK(pts.size() == 4);  // |F| + 1
  std::set<std::vector<std::uint64_t>> uniq;
  for (const auto& q : pts) uniq.insert(res(q));
  CHECK(uniq.size() == pts.size());
  for (const auto& q : pts) CHECK(curve_contains(c, q));
  CHECK_FALSE(curve_contains(c, pt(p3, {1, 0, 1})));  // not of shape [1:t:t^2]
}

TEST_CASE("any d+1 distinct curve points are in general position") {
  for (std::uint64_t pv : {5ull, 7ull, 11ull, 13ull}) {
    Prime p = Prime::checked(pv);
    for (int d = 2; d <= 3; ++d) {
      RationalNormalCurve c{p, d, ProjTransform::identity(p, d)};
      auto pts = enumerate_curve(c);
      std::vector<std::size_t> idx(d + 1);
      for (int i = 0; i <= d; ++i) idx[i] = i;
      while (true) {
        std::vector<ProjPoint> sel;
        for (auto i : idx) sel.push_back(pts[i]);
        CHECK(is_general_position(sel));
        int i = d;
        while (i >= 0 && idx[i] == pts.size() - (d + 1) + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j <= d; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
}

TEST_CASE("construct_q_generic") {
  SUBCASE("d=2, p=5, sphere") {
    Prime p5 = Prime::checked(5);
    auto c = construct_q_generic(QuadraticForm::sphere(p5, 2), 2);
    CHECK(c.points.size() == 4);  // p + 1 - d
    std::set<std::vector<std::uint64_t>> uniq(c.points.begin(), c.points.end());
    CHECK(uniq.size() == c.points.size());
    CHECK(c.ideal_pts.size() == 2);
    for (const auto& ip : c.ideal_pts) {
      CHECK(ip.coords[0].is_zero());
      CHECK(curve_contains(c.curve, ip));
    }
  }
  SUBCASE("d=3, p=7, sphere") {
    auto c = construct_q_generic(QuadraticForm::sphere(Prime::checked(7), 3), 3);
    CHECK(c.points.size() == 5);
  }
  SUBCASE("d=2, p=7, sphere is infeasible") {
    CHECK_THROWS_AS(construct_q_generic(QuadraticForm::sphere(Prime::checked(7), 2), 2),
                    InfeasibleError);
  }
  SUBCASE("d = p + 1 degenerates to an empty affine part") {
    Prime p3 = Prime::checked(3);
    auto q = QuadraticForm::from_terms(p3, 4, std::vector<FormTerm>{{0, 1, 1}});
    auto c = construct_q_generic(q, 4);
    CHECK(c.points.empty());
  }
}

TEST_CASE("every Q-quadric meets the affine curve in at most d+1 points") {
  // Exhaustive over all p^3 affine polynomials f for d = 2.
  struct Case {
    std::uint64_t p;
    std::vector<std::uint64_t> coeffs;  // c11, c12, c22
  };
  std::vector<Case> cases = {
      {5, {1, 0, 1}},    // sphere
      {13, {1, 0, 1}},   // sphere
      {7, {0, 1, 0}},    // X1 X2
      {11, {1, 0, 10}},  // X1^2 - X2^2
  };
  for (const auto& tc : cases) {
    Prime p = Prime::checked(tc.p);
    auto q = QuadraticForm::from_coeffs(p, 2, tc.coeffs);
    auto c = construct_q_generic(q, 2);
    std::uint64_t pv = tc.p;
    int worst = 0;
    for (std::uint64_t a0 = 0; a0 < pv; ++a0) {
      for (std::uint64_t a1 = 0; a1 < pv; ++a1) {
        for (std::uint64_t a2 = 0; a2 < pv; ++a2) {
          int hits = 0;
          for (const auto& x : c.points) {
            std::uint64_t val = q.evaluate_raw(x);
            val = add_mod(val, a0, pv);
            val = add_mod(val, mul_mod(a1, x[0], pv), pv);
            val = add_mod(val, mul_mod(a2, x[1], pv), pv);
            if (val == 0) ++hits;
          }
          worst = std::max(worst, hits);
        }
      }
    }
    CAPTURE(tc.p);
    CHECK(worst <= 3);  // d + 1
  }
}
