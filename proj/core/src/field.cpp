#include "qgen/field.hpp"

#include <numeric>
#include <string>

namespace qgen {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod_wide(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(u128(a) * b % p);
}

}  // namespace

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;  // p < 2^62, no overflow
  return s >= p ? s - p : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (p <= (std::uint64_t{1} << 32)) return a * b % p;
  return mulmod_wide(a, b, p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw InvalidInputError("inv_mod: zero has no inverse");
  // Extended Euclid on (a, p); p prime so gcd is 1.
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t residue_of(std::int64_t a, std::uint64_t p) {
  std::int64_t m = a % static_cast<std::int64_t>(p);
  if (m < 0) m += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(m);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a proven deterministic witness set for all n < 3.3e24,
  // which covers every 64-bit input.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_wide(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Prime Prime::checked(std::uint64_t value) {
  if (value < 3) throw InvalidInputError("Prime: value must be >= 3");
  if (value % 2 == 0) throw InvalidInputError("Prime: even characteristic is not supported");
  if (value > kMaxValue) throw InvalidInputError("Prime: value exceeds the 62-bit modulus cap");
  if (!is_prime_u64(value)) {
    throw InvalidInputError("Prime: " + std::to_string(value) + " is not prime");
  }
  return Prime(value);
}

int legendre_symbol(std::int64_t a, Prime p) {
  std::uint64_t r = residue_of(a, p.value());
  if (r == 0) return 0;
  std::uint64_t e = pow_mod(r, (p.value() - 1) / 2, p.value());
  return e == 1 ? 1 : -1;
}

bool is_square(Fp a) {
  if (a.is_zero()) return true;
  return pow_mod(a.residue(), (a.modulus() - 1) / 2, a.modulus()) == 1;
}

bool discriminant_root_exists(std::int64_t delta, Prime p) {
  if (delta == 0) throw InvalidInputError("discriminant_root_exists: delta must be nonzero");
  return is_square(Fp::from_int(p, delta));
}

Prime scan_prime_below(std::uint64_t n, std::optional<ResidueClass> klass) {
  if (n < 3) throw InvalidInputError("scan_prime_below: n must be >= 3");
  if (klass) {
    if (klass->m == 0) throw InvalidInputError("scan_prime_below: modulus must be positive");
    if (std::gcd(klass->a, klass->m) != 1) {
      throw InvalidInputError("scan_prime_below: residue class must satisfy gcd(a, m) = 1");
    }
  }
  auto in_class = [&](std::uint64_t k) { return !klass || k % klass->m == klass->a % klass->m; };
  for (std::uint64_t k = n; k >= 3; --k) {
    if (k % 2 == 0) continue;
    if (!in_class(k)) continue;
    if (is_prime_u64(k)) return Prime::checked(k);
  }
  std::string cls = klass ? " with p == " + std::to_string(klass->a) + " (mod " + std::to_string(klass->m) + ")"
                          : "";
  throw InfeasibleError("scan_prime_below: no odd prime in [3, " + std::to_string(n) + "]" + cls);
}

}  // namespace qgen
