#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgen/curve.hpp"
#include "qgen/rational.hpp"

namespace qgen {

struct PrimeRejection {
  std::uint64_t p = 0;
  std::string reason;
};

/// No prime in range produced a rich reduction; carries every candidate that
/// was examined and why it failed.
class PrimeSearchError : public InfeasibleError {
 public:
  PrimeSearchError(const std::string& msg, std::vector<PrimeRejection> rejected)
      : InfeasibleError(msg), rejected_(std::move(rejected)) {}
  const std::vector<PrimeRejection>& rejected() const { return rejected_; }

 private:
  std::vector<PrimeRejection> rejected_;
};

/// The largest usable prime p <= n for the form: when Q is irreducible of
/// rank 2 over the rationals with integer discriminant Delta, only the
/// progression p == 1 (mod 4|Delta|) is scanned (such p always make the
/// reduction rich); otherwise all odd primes are scanned. Candidates whose
/// reduction fails to be rich, degenerates in degree, or has p + 1 < dim are
/// skipped and recorded.
Prime choose_prime(std::uint64_t n, const RationalForm& q);

/// Points of a field construction re-embedded into the integer grid
/// {1..p}^d (residue 0 maps to p), with the full provenance chain.
struct GridConstruction {
  std::uint64_t n = 0;  // requested grid bound, p <= n
  Prime p;
  int dim = 0;
  RationalForm form;
  QuadraticForm reduced_form;
  Construction field_construction;
  std::vector<std::vector<std::int64_t>> points;  // coordinates in [1, p]
};

/// Coordinate-wise lift of c's points into {1..p}^d. Requires that c was
/// built from the reduction of q at its prime.
GridConstruction lift_to_grid(const Construction& c, const RationalForm& q);

/// End-to-end pipeline: choose_prime -> reduce -> field construction ->
/// grid lift. The result has p + 1 - d points inside {1..p}^d, p <= n.
GridConstruction construct_grid(std::uint64_t n, int d, const RationalForm& q,
                                std::uint64_t seed = 0);

}  // namespace qgen
