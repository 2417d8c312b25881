#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qgen/rational.hpp"
#include "qgen/verify.hpp"

namespace qgen {

inline constexpr const char* kToolVersion = "0.1.0";

/// Parses the form grammar: "sphere" (needs dim from context) or
/// semicolon-separated triples "i,j,c" with 1-based i <= j and c an integer
/// or "num/den". Example: "1,1,1;1,2,1;2,2,1" is X1^2 + X1 X2 + X2^2.
RationalForm parse_form_spec(const std::string& spec, int dim);

/// Canonical spec string (triples in row-major order, zero terms omitted).
std::string form_spec_string(const RationalForm& q);

/// One emitted point set with header metadata, round-trippable through JSON
/// and CSV.
struct PointSetFile {
  std::string mode;  // "grid" or "field"
  int dim = 0;
  std::optional<std::uint64_t> n;  // requested grid bound (grid mode)
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  std::string version = kToolVersion;
  std::optional<RationalForm> form;
  std::vector<std::vector<std::int64_t>> points;
  std::optional<Certificate> certificate;
};

PointSetFile point_set_file(const GridConstruction& g, std::uint64_t seed,
                            const Certificate& cert);
PointSetFile point_set_file(const Construction& c, const RationalForm& form, std::uint64_t seed,
                            const Certificate& cert);

void write_json(std::ostream& os, const PointSetFile& f);
void write_csv(std::ostream& os, const PointSetFile& f);
std::string to_json_string(const PointSetFile& f);

/// Reads either format (JSON when the first non-space byte is '{'). Bare CSV
/// without header comments is accepted: the dimension is taken from the
/// column count and the mode defaults to "grid".
PointSetFile read_point_file(std::istream& is);
PointSetFile read_point_file_from_path(const std::string& path);

}  // namespace qgen
