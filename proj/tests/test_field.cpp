#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qgen/field.hpp>

#include <set>
#include <vector>

using namespace qgen;

namespace {

// Independent oracle: sieve of Eratosthenes.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<bool> comp(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
  }
  return out;
}

// Independent oracle: the set of squares mod p by exhaustive squaring.
std::set<std::uint64_t> squares_mod(std::uint64_t p) {
  std::set<std::uint64_t> s;
  for (std::uint64_t x = 0; x < p; ++x) s.insert(x * x % p);
  return s;
}

}  // namespace

TEST_CASE("prime certification") {
  CHECK(Prime::checked(3).value() == 3);
  CHECK(Prime::checked(97).value() == 97);
  CHECK_THROWS_AS(Prime::checked(2), InvalidInputError);   // even
  CHECK_THROWS_AS(Prime::checked(1), InvalidInputError);
  CHECK_THROWS_AS(Prime::checked(91), InvalidInputError);  // 7 * 13
  auto primes = sieve_primes(2000);
  for (std::uint64_t n = 2; n <= 2000; ++n) {
    bool expect = std::find(primes.begin(), primes.end(), n) != primes.end();
    CHECK(is_prime_u64(n) == expect);
  }
  CHECK(is_prime_u64(2305843009213693951ULL));  // 2^61 - 1, Mersenne
  CHECK_FALSE(is_prime_u64(2305843009213693953ULL));
}

TEST_CASE("fp_inv") {
  Prime p7 = Prime::checked(7);
  CHECK(fp_inv(Fp(p7, 1)).residue() == 1);
  // oracle: exhaust residues
  std::uint64_t expected = 0;
  for (std::uint64_t b = 1; b < 7; ++b) {
    if (2 * b % 7 == 1) expected = b;
  }
  CHECK(expected == 4);
  CHECK(fp_inv(Fp(p7, 2)).residue() == 4);
  CHECK_THROWS_AS(fp_inv(Fp(p7, 0)), InvalidInputError);

  for (std::uint64_t p : {3ull, 5ull, 13ull, 101ull}) {
    Prime pp = Prime::checked(p);
    for (std::uint64_t a = 1; a < p; ++a) {
      CHECK((Fp(pp, a) * fp_inv(Fp(pp, a))).residue() == 1);
    }
  }
}

TEST_CASE("legendre symbol and Euler criterion") {
  Prime p13 = Prime::checked(13);
  Prime p7 = Prime::checked(7);
  CHECK(legendre_symbol(1, p13) == 1);
  CHECK(legendre_symbol(-1, p13) == 1);  // 13 == 1 (mod 4)
  CHECK(legendre_symbol(-1, p7) == -1);  // oracle: squares mod 7 are {0,1,2,4}
  CHECK(squares_mod(7) == std::set<std::uint64_t>{0, 1, 2, 4});
  CHECK(legendre_symbol(14, p7) == 0);

  // Euler criterion against the exhaustive-squares oracle for all p <= 100.
  for (std::uint64_t p : sieve_primes(100)) {
    if (p == 2) continue;
    Prime pp = Prime::checked(p);
    auto sq = squares_mod(p);
    for (std::uint64_t a = 0; a < p; ++a) {
      int expect = a == 0 ? 0 : (sq.count(a) ? 1 : -1);
      CHECK(legendre_symbol(static_cast<std::int64_t>(a), pp) == expect);
    }
  }
}

TEST_CASE("legendre multiplicativity") {
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
    Prime pp = Prime::checked(p);
    for (std::uint64_t a = 1; a < p; ++a) {
      for (std::uint64_t b = 1; b < p; ++b) {
        Fp prod = Fp(pp, a) * Fp(pp, b);
        bool expect = legendre_symbol(static_cast<std::int64_t>(a), pp) *
                          legendre_symbol(static_cast<std::int64_t>(b), pp) ==
                      1;
        CHECK(is_square(prod) == expect);
      }
    }
  }
}

TEST_CASE("is_square") {
  Prime p5 = Prime::checked(5);
  Prime p13 = Prime::checked(13);
  CHECK(is_square(Fp(p5, 0)));
  CHECK(is_square(Fp(p13, 4)));
  CHECK(squares_mod(5) == std::set<std::uint64_t>{0, 1, 4});
  CHECK_FALSE(is_square(Fp(p5, 2)));
}

TEST_CASE("scan_prime_below") {
  auto primes = sieve_primes(100);
  CHECK(primes.back() == 97);  // oracle
  CHECK(scan_prime_below(100).value() == 97);
  CHECK(scan_prime_below(100, ResidueClass{1, 4}).value() == 97);
  CHECK(scan_prime_below(97).value() == 97);
  CHECK(scan_prime_below(96).value() == 89);
  CHECK_THROWS_AS(scan_prime_below(4, ResidueClass{1, 16}), InfeasibleError);
  CHECK_THROWS_AS(scan_prime_below(100, ResidueClass{2, 4}), InvalidInputError);  // gcd != 1

  // Returned value divides no integer in [2, sqrt(p)].
  Prime p = scan_prime_below(100000);
  for (std::uint64_t q = 2; q * q <= p.value(); ++q) CHECK(p.value() % q != 0);

  // Largest-qualifying semantics against the sieve for every n.
  for (std::uint64_t n = 3; n <= 300; ++n) {
    std::uint64_t expect = 0;
    for (std::uint64_t q : sieve_primes(n)) {
      if (q >= 3) expect = q;
    }
    if (expect == 0) continue;
    CHECK(scan_prime_below(n).value() == expect);
  }
}

TEST_CASE("discriminant_root_exists") {
  CHECK(discriminant_root_exists(-4, Prime::checked(13)));  // -4 == 9 == 3^2 (mod 13)
  CHECK(squares_mod(13).count(9) == 1);
  CHECK(discriminant_root_exists(-4, Prime::checked(17)));  // 17 == 1 (mod 16)
  CHECK_FALSE(discriminant_root_exists(-4, Prime::checked(7)));
  CHECK_THROWS_AS(discriminant_root_exists(0, Prime::checked(7)), InvalidInputError);
}

TEST_CASE("quadratic residue guarantee on the progression p == 1 (mod 4|delta|)") {
  auto primes = sieve_primes(1000);
  for (std::int64_t delta = -20; delta <= 20; ++delta) {
    if (delta == 0) continue;
    std::uint64_t m = 4 * static_cast<std::uint64_t>(delta < 0 ? -delta : delta);
    for (std::uint64_t p : primes) {
      if (p < 3 || p % m != 1 % m) continue;
      CAPTURE(delta);
      CAPTURE(p);
      CHECK(discriminant_root_exists(delta, Prime::checked(p)));
    }
  }
}

TEST_CASE("Fp arithmetic basics") {
  Prime p = Prime::checked(101);
  Fp a(p, 70), b(p, 99);
  CHECK((a + b).residue() == (70 + 99) % 101);
  CHECK((a - b).residue() == (70 + 101 - 99) % 101);
  CHECK((a * b).residue() == 70 * 99 % 101);
  CHECK((-Fp(p, 0)).residue() == 0);
  CHECK_THROWS_AS(Fp(p, 1) + Fp(Prime::checked(7), 1), InvalidInputError);

  // 62-bit headroom: products near the modulus cap stay exact.
  Prime big = Prime::checked(4611686018427387847ULL);  // largest prime below 2^62
  Fp x(big, big.value() - 1);
  CHECK((x * x).residue() == 1);  // (-1)^2
}
