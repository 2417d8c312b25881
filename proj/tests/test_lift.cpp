#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qgen/lift.hpp>

#include <random>
#include <sstream>

using namespace qgen;

namespace {

RationalForm form2(const mpq_class& c11, const mpq_class& c12, const mpq_class& c22) {
  return RationalForm::from_coeffs(2, {c11, c12, c22});
}

}  // namespace

TEST_CASE("reduce_mod_p on forms") {
  Prime p7 = Prime::checked(7);
  auto q = form2(mpq_class(1, 2), 0, 1);  // (1/2) X1^2 + X2^2
  auto qp = reduce_mod_p(q, p7);
  CHECK(qp.coeff(0, 0) == 1);
  CHECK(qp.coeff(0, 1) == 0);
  CHECK(qp.coeff(1, 1) == 2);

  // scaling by any positive rational leaves the reduction unchanged
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    mpq_class lam(1 + rng() % 50, 1 + rng() % 50);
    auto scaled = form2(q.coeff(0, 0) * lam, q.coeff(0, 1) * lam, q.coeff(1, 1) * lam);
    CHECK(reduce_mod_p(scaled, p7) == qp);
  }
}

TEST_CASE("reduce_mod_p on degree <= 1 polynomials") {
  Prime p3 = Prime::checked(3);
  RationalPoly f = RationalPoly::zero(2);
  f.constant = 6;
  f.linear[0] = 3;  // 3 X1 + 6
  FpPoly fp = reduce_mod_p(f, p3);
  CHECK(fp.constant == 2);
  CHECK(fp.linear[0] == 1);
  CHECK(fp.linear[1] == 0);
  CHECK(fp.degree() == 1);

  FpPoly z = reduce_mod_p(RationalPoly::zero(2), p3);
  CHECK(z.is_zero());
}

TEST_CASE("reduce_mod_p never kills a nonzero polynomial") {
  std::mt19937_64 rng(11);
  for (std::uint64_t pv : {3ull, 5ull, 97ull}) {
    Prime p = Prime::checked(pv);
    for (int rep = 0; rep < 200; ++rep) {
      RationalPoly f = RationalPoly::zero(2);
      f.constant = mpq_class(static_cast<long>(rng() % 19) - 9, 1 + rng() % 7);
      for (auto* part : {&f.linear, &f.quad}) {
        for (auto& c : *part) {
          c = mpq_class(static_cast<long>(rng() % 19) - 9, 1 + rng() % 7);
          c.canonicalize();
        }
      }
      if (f.is_zero()) continue;
      CHECK_FALSE(reduce_mod_p(f, p).is_zero());
    }
  }
}

TEST_CASE("classify_rational") {
  auto sphere2 = RationalForm::sphere(2);
  auto rc = classify_rational(sphere2);
  CHECK(rc.rank == 2);
  REQUIRE(rc.irreducible_rank2_delta.has_value());
  CHECK(*rc.irreducible_rank2_delta == -4);

  CHECK(classify_rational(RationalForm::sphere(3)).rank == 3);
  CHECK_FALSE(classify_rational(RationalForm::sphere(3)).irreducible_rank2_delta.has_value());

  auto xy = form2(0, 1, 0);
  CHECK_FALSE(classify_rational(xy).irreducible_rank2_delta.has_value());  // delta = 1

  auto diff = form2(1, 0, -1);
  CHECK_FALSE(classify_rational(diff).irreducible_rank2_delta.has_value());  // delta = 4

  auto aniso = form2(2, 0, 3);
  REQUIRE(classify_rational(aniso).irreducible_rank2_delta.has_value());
  CHECK(*classify_rational(aniso).irreducible_rank2_delta == -24);

  auto hex = form2(1, 1, 1);
  REQUIRE(classify_rational(hex).irreducible_rank2_delta.has_value());
  CHECK(*classify_rational(hex).irreducible_rank2_delta == -3);
}

TEST_CASE("choose_prime") {
  CHECK(choose_prime(100, RationalForm::sphere(2)).value() == 97);  // 97 == 1 (mod 16)
  CHECK(choose_prime(100, RationalForm::sphere(3)).value() == 97);
  CHECK(choose_prime(200, RationalForm::sphere(2)).value() == 193);  // progression 1 (mod 16)
  CHECK(choose_prime(200, form2(0, 1, 0)).value() == 199);           // unrestricted scan

  // discriminant -47: needs p == 1 (mod 188), none below 10
  auto q47 = form2(1, 1, 12);
  REQUIRE(classify_rational(q47).irreducible_rank2_delta.has_value());
  CHECK(*classify_rational(q47).irreducible_rank2_delta == -47);
  CHECK_THROWS_AS(choose_prime(10, q47), PrimeSearchError);
  try {
    choose_prime(10, q47);
  } catch (const PrimeSearchError& e) {
    CHECK(std::string(e.what()).find("10") != std::string::npos);
  }
}

TEST_CASE("lift_to_grid") {
  auto q = RationalForm::sphere(2);
  bool saw_zero = false;
  for (std::uint64_t pv : {5ull, 13ull, 17ull}) {
    Prime p = Prime::checked(pv);
    auto c = construct_q_generic(reduce_mod_p(q, p), 2);
    auto g = lift_to_grid(c, q);
    REQUIRE(g.points.size() == c.points.size());
    for (std::size_t i = 0; i < g.points.size(); ++i) {
      for (int j = 0; j < 2; ++j) {
        std::int64_t lifted = g.points[i][j];
        CHECK(lifted >= 1);
        CHECK(lifted <= static_cast<std::int64_t>(pv));
        // round trip: coordinate-wise reduction recovers the field point
        CHECK(static_cast<std::uint64_t>(lifted) % pv == c.points[i][j] % pv);
        if (c.points[i][j] == 0) {
          saw_zero = true;
          CHECK(lifted == static_cast<std::int64_t>(pv));  // representative convention
        }
      }
    }
  }
  CHECK(saw_zero);  // some curve point hits a coordinate axis across these runs

  Prime p5 = Prime::checked(5);
  auto c5 = construct_q_generic(reduce_mod_p(q, p5), 2);
  auto wrong = form2(0, 1, 0);
  CHECK_THROWS_AS(lift_to_grid(c5, wrong), InvalidInputError);
}

TEST_CASE("construct_grid") {
  SUBCASE("n=100, d=2, sphere") {
    auto g = construct_grid(100, 2, RationalForm::sphere(2));
    CHECK(g.p.value() == 97);
    CHECK(g.points.size() == 96);
    for (const auto& x : g.points) {
      for (auto c : x) {
        CHECK(c >= 1);
        CHECK(c <= 97);
      }
    }
  }
  SUBCASE("n=50, d=3, sphere") {
    auto g = construct_grid(50, 3, RationalForm::sphere(3));
    CHECK(g.p.value() == 47);
    CHECK(g.points.size() == 45);
  }
  SUBCASE("n=3 degenerates but works") {
    auto g = construct_grid(3, 2, form2(0, 1, 0));
    CHECK(g.p.value() == 3);
    CHECK(g.points.size() == 2);
  }
  SUBCASE("size deficit log for the record") {
    for (std::uint64_t n : {100ull, 1000ull, 10000ull}) {
      for (int d = 2; d <= 4; ++d) {
        auto g = construct_grid(n, d, RationalForm::sphere(d));
        std::ostringstream msg;
        msg << "n=" << n << " d=" << d << " p=" << g.p.value()
            << " deficit=" << (n - g.points.size());
        MESSAGE(msg.str());
        CHECK(g.points.size() == g.p.value() + 1 - static_cast<std::uint64_t>(d));
      }
    }
  }
}
