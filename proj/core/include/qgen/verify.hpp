#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgen/curve.hpp"
#include "qgen/lift.hpp"

namespace qgen {

/// Affine points over F_p, residues in [0, p).
struct FieldPointSet {
  Prime p;
  int dim = 0;
  std::vector<std::vector<std::uint64_t>> points;
};

/// Affine points with exact integer coordinates.
struct GridPointSet {
  int dim = 0;
  std::vector<std::vector<std::int64_t>> points;
};

FieldPointSet field_point_set(const Construction& c);
GridPointSet grid_point_set(const GridConstruction& g);

/// Thread-count resolution: explicit request > QGEN_THREADS > hardware.
int resolve_threads(int requested);

struct VerifyOptions {
  int threads = 0;  // 0 = resolve from environment/hardware
  /// Incidence maxima are only tallied when |D| does not exceed this bound
  /// and the anchored counting pass fits the work budget below.
  std::size_t incidence_point_limit = 200;
  std::uint64_t incidence_work_limit = 100'000'000;
};

/// Outcome of one exhaustive subset scan. `violation` is the
/// lexicographically first offending index subset; `subsets_tested` counts
/// scanned subsets deterministically (independent of thread count).
struct SubsetCheck {
  std::optional<std::vector<std::size_t>> violation;
  std::uint64_t subsets_tested = 0;
  bool pass() const { return !violation.has_value(); }
};

/// Every (d+1)-subset must span: the (d+1)x(d+1) matrix with rows
/// (1, x_1, ..., x_d) must have nonzero determinant. Sets smaller than d+1
/// pass vacuously.
SubsetCheck check_hyperplanes(const FieldPointSet& d, const VerifyOptions& opt = {});
SubsetCheck check_hyperplanes(const GridPointSet& d, const VerifyOptions& opt = {});

/// Every (d+2)-subset must have a nonzero bordered determinant, rows
/// (1, x_1, ..., x_d, Q(x)). Requires the hyperplane check of the same set
/// to have passed (the zero-determinant dichotomy assumes it); throws
/// std::logic_error otherwise.
SubsetCheck check_quadrics(const FieldPointSet& d, const QuadraticForm& q,
                           const SubsetCheck& hyperplanes, const VerifyOptions& opt = {});
SubsetCheck check_quadrics(const GridPointSet& d, const RationalForm& q,
                           const SubsetCheck& hyperplanes, const VerifyOptions& opt = {});

/// Exhaustive certification result.
struct Certificate {
  enum class Status { pass, hyperplane_violation, quadric_violation };
  Status status = Status::pass;
  std::vector<std::size_t> violating_subset;  // empty on pass
  std::string witness_determinant;            // exact determinant of the violating subset
  std::uint64_t hyperplane_subsets_tested = 0;
  std::uint64_t quadric_subsets_tested = 0;
  /// Anchored incidence maxima; absent when the counting pass was skipped
  /// for cost (see VerifyOptions).
  std::optional<int> max_hyperplane_incidence;
  std::optional<int> max_quadric_incidence;

  bool pass() const { return status == Status::pass; }
};

const char* to_string(Certificate::Status s);

Certificate is_q_generic(const FieldPointSet& d, const QuadraticForm& q,
                         const VerifyOptions& opt = {});
Certificate is_q_generic(const GridPointSet& d, const RationalForm& q,
                         const VerifyOptions& opt = {});

/// Coefficients (a_0, a_1, ..., a_d) of the unique degree <= 1 polynomial f
/// with Q(P_i) + f(P_i) = 0 for the d+1 given affinely independent points,
/// obtained by solving the (d+1)x(d+1) linear system with right side
/// -Q(P_i). Throws InvalidInputError on dependent points.
std::vector<std::uint64_t> unique_quadric_through(std::span<const std::vector<std::uint64_t>> pts,
                                                  const QuadraticForm& q);
std::vector<mpq_class> unique_quadric_through(std::span<const std::vector<std::int64_t>> pts,
                                              const RationalForm& q);

}  // namespace qgen
