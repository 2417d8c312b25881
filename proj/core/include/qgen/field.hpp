#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qgen/errors.hpp"

namespace qgen {

/// Deterministic primality test (Miller-Rabin with a fixed base set that is
/// exact for all 64-bit inputs).
bool is_prime_u64(std::uint64_t n);

/// An odd prime, certified at construction. Moduli are capped at 62 bits so
/// that products of residues always fit a 128-bit intermediate.
class Prime {
 public:
  static constexpr std::uint64_t kMaxValue = (std::uint64_t{1} << 62) - 1;

  /// Certifies `value` (odd, >= 3, <= 62 bits, prime) or throws
  /// InvalidInputError.
  static Prime checked(std::uint64_t value);

  std::uint64_t value() const { return value_; }
  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  explicit Prime(std::uint64_t v) : value_(v) {}
  std::uint64_t value_;
};

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
/// Inverse of a mod p via extended Euclid; throws InvalidInputError on a == 0.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);
/// Canonical residue of a (possibly negative) integer.
std::uint64_t residue_of(std::int64_t a, std::uint64_t p);

/// A residue in [0, p). Arithmetic between elements of different fields is a
/// programming error and is rejected.
class Fp {
 public:
  Fp() : r_(0), p_(3) {}
  Fp(Prime p, std::uint64_t residue) : r_(residue % p.value()), p_(p.value()) {}
  static Fp from_int(Prime p, std::int64_t a) { return Fp(p, residue_of(a, p.value())); }

  std::uint64_t residue() const { return r_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return r_ == 0; }

  Fp operator+(Fp o) const { check(o); return raw(add_mod(r_, o.r_, p_), p_); }
  Fp operator-(Fp o) const { check(o); return raw(sub_mod(r_, o.r_, p_), p_); }
  Fp operator*(Fp o) const { check(o); return raw(mul_mod(r_, o.r_, p_), p_); }
  Fp operator-() const { return raw(r_ == 0 ? 0 : p_ - r_, p_); }
  /// Multiplicative inverse; throws InvalidInputError for zero.
  Fp inv() const { return raw(inv_mod(r_, p_), p_); }
  Fp operator/(Fp o) const { return *this * o.inv(); }

  friend bool operator==(const Fp&, const Fp&) = default;

 private:
  static Fp raw(std::uint64_t r, std::uint64_t p) {
    Fp x;
    x.r_ = r;
    x.p_ = p;
    return x;
  }
  void check(const Fp& o) const {
    if (p_ != o.p_) throw InvalidInputError("Fp: mixed moduli");
  }
  std::uint64_t r_;
  std::uint64_t p_;
};

/// Inverse in F_p. Throws InvalidInputError when a == 0.
inline Fp fp_inv(Fp a) { return a.inv(); }

/// Legendre symbol (a|p) in {-1, 0, +1}, computed by Euler's criterion.
int legendre_symbol(std::int64_t a, Prime p);

/// True iff a is a square in F_p; zero counts as a square.
bool is_square(Fp a);

/// True iff delta has a square root mod p. Guaranteed true whenever
/// p == 1 (mod 4*|delta|).
bool discriminant_root_exists(std::int64_t delta, Prime p);

/// Arithmetic progression a (mod m) with gcd(a, m) == 1.
struct ResidueClass {
  std::uint64_t a = 0;
  std::uint64_t m = 1;
};

/// Largest odd prime p <= n, restricted to p == a (mod m) when a residue
/// class is given. Throws InfeasibleError (naming the exhausted range) when
/// no such prime exists in [3, n].
Prime scan_prime_below(std::uint64_t n, std::optional<ResidueClass> klass = std::nullopt);

}  // namespace qgen
