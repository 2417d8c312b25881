#include "qgen/projective.hpp"

#include <string>

#include "fp_linalg.hpp"

namespace qgen {

namespace {

std::vector<std::uint64_t> residues(const ProjPoint& pt) {
  std::vector<std::uint64_t> v(pt.coords.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = pt.coords[i].residue();
  return v;
}

}  // namespace

ProjPoint normalize(std::vector<Fp> raw) {
  if (raw.empty()) throw InvalidInputError("normalize: empty coordinate vector");
  std::size_t lead = raw.size();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw[i].is_zero()) {
      lead = i;
      break;
    }
  }
  if (lead == raw.size()) {
    throw InvalidInputError("normalize: the all-zero vector is not a projective point");
  }
  Fp inv = raw[lead].inv();
  for (auto& c : raw) c = c * inv;
  return ProjPoint{std::move(raw)};
}

std::vector<ProjPoint> enumerate_projective_space(Prime p, int dim) {
  std::vector<ProjPoint> out;
  // Leading-one position first, then the free tail digits in lexicographic
  // order; total (p^(dim+1)-1)/(p-1) points.
  for (int lead = 0; lead <= dim; ++lead) {
    int free = dim - lead;
    std::vector<std::uint64_t> tail(free, 0);
    while (true) {
      std::vector<Fp> c;
      c.reserve(dim + 1);
      for (int i = 0; i < lead; ++i) c.emplace_back(p, 0);
      c.emplace_back(p, 1);
      for (int i = 0; i < free; ++i) c.emplace_back(p, tail[i]);
      out.push_back(ProjPoint{std::move(c)});
      int k = free - 1;
      while (k >= 0 && tail[k] == p.value() - 1) tail[k--] = 0;
      if (k < 0) break;
      ++tail[k];
    }
  }
  return out;
}

bool is_general_position(std::span<const ProjPoint> pts) {
  if (pts.empty()) return true;
  int cols = static_cast<int>(pts[0].coords.size());
  int rows = static_cast<int>(pts.size());
  if (rows > cols) {
    throw InvalidInputError("is_general_position: more points than the ambient dimension admits");
  }
  std::uint64_t p = pts[0].coords[0].modulus();
  detail::Mat m;
  m.reserve(static_cast<std::size_t>(rows) * cols);
  for (const auto& pt : pts) {
    for (const auto& c : pt.coords) m.push_back(c.residue());
  }
  return detail::fp_rank(std::move(m), rows, cols, p) == rows;
}

ProjTransform ProjTransform::from_matrix(Prime p, int dim, std::vector<std::uint64_t> entries) {
  int n = dim + 1;
  if (entries.size() != static_cast<std::size_t>(n) * n) {
    throw InvalidInputError("ProjTransform: wrong entry count");
  }
  for (auto& e : entries) e %= p.value();
  detail::Mat inv;
  if (!detail::fp_invert(entries, n, p.value(), inv)) {
    throw InvalidInputError("ProjTransform: matrix is singular");
  }
  return ProjTransform(p, dim, std::move(entries));
}

ProjTransform ProjTransform::identity(Prime p, int dim) {
  int n = dim + 1;
  std::vector<std::uint64_t> m(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] = 1;
  return ProjTransform(p, dim, std::move(m));
}

ProjPoint ProjTransform::apply(const ProjPoint& pt) const {
  int n = dim_ + 1;
  if (static_cast<int>(pt.coords.size()) != n) {
    throw InvalidInputError("ProjTransform::apply: dimension mismatch");
  }
  std::vector<Fp> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (int j = 0; j < n; ++j) {
      acc = add_mod(acc, mul_mod(entry(i, j), pt.coords[j].residue(), p_.value()), p_.value());
    }
    out.emplace_back(p_, acc);
  }
  return normalize(std::move(out));
}

ProjTransform ProjTransform::inverse() const {
  detail::Mat inv;
  detail::fp_invert(m_, dim_ + 1, p_.value(), inv);
  return ProjTransform(p_, dim_, std::move(inv));
}

ProjTransform transform_mapping_points(std::span<const ProjPoint> sources,
                                       std::span<const ProjPoint> targets) {
  if (sources.empty() || sources.size() != targets.size()) {
    throw InvalidInputError("transform_mapping_points: need equally many sources and targets");
  }
  int n = static_cast<int>(sources[0].coords.size());
  int d = n - 1;
  if (static_cast<int>(sources.size()) != d) {
    throw InvalidInputError("transform_mapping_points: expected exactly d points in P^d");
  }
  std::uint64_t p = sources[0].coords[0].modulus();
  Prime prime = Prime::checked(p);

  // Columns of the basis matrix: the d representatives extended by the first
  // standard basis vector outside their span.
  auto basis_matrix = [&](std::span<const ProjPoint> pts, const char* which) {
    detail::FpEchelon ech(n, p);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (static_cast<int>(pts[i].coords.size()) != n) {
        throw InvalidInputError("transform_mapping_points: mixed dimensions");
      }
      if (!ech.add_if_independent(residues(pts[i]))) {
        throw InvalidInputError(std::string("transform_mapping_points: ") + which + " point " +
                                std::to_string(i) + " lies in the span of points 0.." +
                                std::to_string(i - 1));
      }
    }
    int ext = -1;
    for (int k = 0; k < n; ++k) {
      std::vector<std::uint64_t> e(n, 0);
      e[k] = 1;
      if (!ech.in_span(e)) {
        ext = k;
        break;
      }
    }
    detail::Mat cols(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
      for (int jj = 0; jj < d; ++jj) {
        cols[static_cast<std::size_t>(i) * n + jj] = pts[jj].coords[i].residue();
      }
    }
    cols[static_cast<std::size_t>(ext) * n + d] = 1;
    return cols;
  };

  detail::Mat s = basis_matrix(sources, "source");
  detail::Mat t = basis_matrix(targets, "target");
  detail::Mat s_inv;
  detail::fp_invert(s, n, p, s_inv);
  detail::Mat m = detail::fp_matmul(t, s_inv, n, n, n, p);
  return ProjTransform::from_matrix(prime, d, std::move(m));
}

}  // namespace qgen
