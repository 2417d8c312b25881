#include "qgen/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <utility>

#include "fp_linalg.hpp"

namespace qgen {

namespace {

// ---------------------------------------------------------------------------
// modular arithmetic backends for the subset scanner

/// Barrett reduction for products below 2^62, p < 2^31.
struct BarrettMul {
  std::uint64_t p;
  std::uint64_t magic;
  explicit BarrettMul(std::uint64_t p_) : p(p_), magic(~std::uint64_t{0} / p_) {}
  std::uint64_t reduce(std::uint64_t x) const {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * magic) >> 64);
    std::uint64_t r = x - q * p;
    while (r >= p) r -= p;
    return r;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(a * b); }
};

struct WideMul {
  std::uint64_t p;
  explicit WideMul(std::uint64_t p_) : p(p_) {}
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
};

/// Row-echelon state for the combination walk over F_p. Pivot rows are
/// normalized to leading 1, so candidate reduction needs one multiply per
/// surviving column. Entries are reduced after every operation; valid for
/// any modulus the Mul policy accepts.
template <class Mul>
struct FieldOps {
  using Row = std::vector<std::uint64_t>;

  Mul m;
  std::uint64_t p;
  int k;
  std::vector<Row> piv;
  std::vector<int> lead;
  Row scratch;

  FieldOps(std::uint64_t p_, int k_)
      : m(p_), p(p_), k(k_), piv(k_, Row(k_, 0)), lead(k_, -1), scratch(k_, 0) {}

  int reduce_candidate(const Row& src, int depth, bool /*leaf*/) {
    scratch = src;
    for (int j = 0; j < depth; ++j) {
      std::uint64_t c = scratch[lead[j]];
      if (c == 0) continue;
      scratch[lead[j]] = 0;
      const Row& pj = piv[j];
      for (int t = lead[j] + 1; t < k; ++t) {
        if (pj[t] != 0) scratch[t] = sub_mod(scratch[t], m.mul(c, pj[t]), p);
      }
    }
    for (int t = 0; t < k; ++t) {
      if (scratch[t] != 0) return t;
    }
    return -1;
  }

  void push(int ld, int depth) {
    std::uint64_t inv = inv_mod(scratch[ld], p);
    scratch[ld] = 1;
    for (int t = ld + 1; t < k; ++t) {
      if (scratch[t] != 0) scratch[t] = m.mul(scratch[t], inv);
    }
    piv[depth].swap(scratch);
    lead[depth] = ld;
  }
};

/// Scanner hot path for p < 2^30: pivot rows stay reduced, candidate rows
/// accumulate lazily in 64 bits. Each pivot step reduces one leading
/// coefficient and adds (p - c) * pivot into the tail without reduction;
/// entries are bounded by p + (k-1) p^2 < 2^64, so nothing wraps.
struct LazyFieldOps {
  using Row = std::vector<std::uint64_t>;

  BarrettMul m;
  std::uint64_t p;
  int k;
  std::vector<Row> piv;
  std::vector<int> lead;
  Row scratch;

  LazyFieldOps(std::uint64_t p_, int k_)
      : m(p_), p(p_), k(k_), piv(k_, Row(k_, 0)), lead(k_, -1), scratch(k_, 0) {}

  int reduce_candidate(const Row& src, int depth, bool leaf) {
    std::uint64_t* r = scratch.data();
    for (int t = 0; t < k; ++t) r[t] = src[t];
    for (int j = 0; j < depth; ++j) {
      std::uint64_t c = m.reduce(r[lead[j]]);
      r[lead[j]] = 0;
      if (c == 0) continue;
      std::uint64_t mult = p - c;
      const std::uint64_t* pj = piv[j].data();
      for (int t = lead[j] + 1; t < k; ++t) r[t] += mult * pj[t];
    }
    if (leaf) {
      // only the zero / nonzero verdict is needed
      for (int t = 0; t < k; ++t) {
        if (m.reduce(r[t]) != 0) return t;
      }
      return -1;
    }
    int ld = -1;
    for (int t = 0; t < k; ++t) {
      r[t] = m.reduce(r[t]);
      if (ld < 0 && r[t] != 0) ld = t;
    }
    return ld;
  }

  void push(int ld, int depth) {
    std::uint64_t inv = inv_mod(scratch[ld], p);
    scratch[ld] = 1;
    for (int t = ld + 1; t < k; ++t) {
      if (scratch[t] != 0) scratch[t] = m.mul(scratch[t], inv);
    }
    piv[depth].swap(scratch);
    lead[depth] = ld;
  }
};

/// Fraction-free (Bareiss) echelon state over the integers: every entry
/// stays a minor of the input, so divisions are exact and growth is bounded.
/// The scratch row and temporaries are preallocated; steady-state reductions
/// do not allocate.
struct IntOps {
  using Row = std::vector<mpz_class>;

  int k;
  std::vector<Row> piv;
  std::vector<int> lead;
  std::vector<mpz_class> lv;  // leading value of the pivot adopted per depth
  Row scratch;
  mpz_class t1, cc;

  explicit IntOps(int k_) : k(k_), piv(k_, Row(k_)), lead(k_, -1), lv(k_), scratch(k_) {}

  int reduce_candidate(const Row& src, int depth, bool /*leaf*/) {
    for (int t = 0; t < k; ++t) mpz_set(scratch[t].get_mpz_t(), src[t].get_mpz_t());
    for (int j = 0; j < depth; ++j) {
      const mpz_class& prev = j == 0 ? one() : lv[j - 1];
      mpz_set(cc.get_mpz_t(), scratch[lead[j]].get_mpz_t());
      const Row& pj = piv[j];
      const mpz_class& scale = lv[j];
      for (int t = 0; t < k; ++t) {
        if (t == lead[j]) continue;
        // scratch[t] <- (scale * scratch[t] - cc * pj[t]) / prev, exactly
        mpz_mul(t1.get_mpz_t(), scale.get_mpz_t(), scratch[t].get_mpz_t());
        if (mpz_sgn(cc.get_mpz_t()) != 0 && mpz_sgn(pj[t].get_mpz_t()) != 0) {
          mpz_submul(t1.get_mpz_t(), cc.get_mpz_t(), pj[t].get_mpz_t());
        }
        if (prev != 1) mpz_divexact(t1.get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
        mpz_swap(scratch[t].get_mpz_t(), t1.get_mpz_t());
      }
      scratch[lead[j]] = 0;
    }
    for (int t = 0; t < k; ++t) {
      if (mpz_sgn(scratch[t].get_mpz_t()) != 0) return t;
    }
    return -1;
  }

  void push(int ld, int depth) {
    mpz_set(lv[depth].get_mpz_t(), scratch[ld].get_mpz_t());
    for (int t = 0; t < k; ++t) mpz_swap(piv[depth][t].get_mpz_t(), scratch[t].get_mpz_t());
    lead[depth] = ld;
  }

 private:
  static const mpz_class& one() {
    static const mpz_class v(1);
    return v;
  }
};

/// Bareiss over signed 128-bit integers. Only selected when the exact
/// Hadamard bound proves every intermediate (products of two (k-1)-minors,
/// and the final k-minor) stays below 2^126, so no operation can wrap.
struct Int128Ops {
  using I = __int128;
  using Row = std::vector<I>;

  int k;
  std::vector<Row> piv;
  std::vector<int> lead;
  std::vector<I> lv;
  Row scratch;

  explicit Int128Ops(int k_) : k(k_), piv(k_, Row(k_, 0)), lead(k_, -1), lv(k_, 0), scratch(k_, 0) {}

  int reduce_candidate(const Row& src, int depth, bool /*leaf*/) {
    I* r = scratch.data();
    for (int t = 0; t < k; ++t) r[t] = src[t];
    for (int j = 0; j < depth; ++j) {
      I prev = j == 0 ? I{1} : lv[j - 1];
      I cc = r[lead[j]];
      const I* pj = piv[j].data();
      I scale = lv[j];
      for (int t = 0; t < k; ++t) {
        if (t == lead[j]) continue;
        r[t] = (scale * r[t] - cc * pj[t]) / prev;  // exact division
      }
      r[lead[j]] = 0;
    }
    for (int t = 0; t < k; ++t) {
      if (r[t] != 0) return t;
    }
    return -1;
  }

  void push(int ld, int depth) {
    lv[depth] = scratch[ld];
    piv[depth].swap(scratch);
    lead[depth] = ld;
  }
};

// ---------------------------------------------------------------------------
// lexicographic combination walk with shared-prefix elimination

template <class Ops>
struct TaskScan {
  const std::vector<typename Ops::Row>& rows;
  int k;
  std::size_t n;
  Ops& ops;
  std::uint64_t leaves = 0;
  std::optional<std::vector<std::size_t>> violation;
  std::vector<std::size_t> prefix;

  /// Walks subsets extending `prefix` with indices in [start, stop);
  /// returns true as soon as a dependent subset is found. A candidate row
  /// that reduces to zero at depth < k-1 makes every completion dependent,
  /// and the lexicographically first completion is the consecutive one.
  bool walk(int depth, std::size_t start, std::size_t stop) {
    for (std::size_t idx = start; idx < stop && idx + (k - depth) <= n; ++idx) {
      int ld = ops.reduce_candidate(rows[idx], depth, depth == k - 1);
      if (ld < 0) {
        std::vector<std::size_t> v = prefix;
        v.push_back(idx);
        for (int t = 1; t < k - depth; ++t) v.push_back(idx + t);
        violation = std::move(v);
        ++leaves;
        return true;
      }
      if (depth == k - 1) {
        ++leaves;
        continue;
      }
      ops.push(ld, depth);
      prefix.push_back(idx);
      bool stop_now = walk(depth + 1, idx + 1, n);
      prefix.pop_back();
      if (stop_now) return true;
    }
    return false;
  }
};

struct ScanOutcome {
  std::optional<std::vector<std::size_t>> violation;
  std::uint64_t tested = 0;
};

/// Scans all k-subsets of rows, split across threads by first index. The
/// reported violation and the tested count are independent of the thread
/// count: only tasks preceding the winning one contribute.
template <class Ops, class MakeOps>
ScanOutcome scan_subsets(const std::vector<typename Ops::Row>& rows, int k, int threads,
                         const MakeOps& make_ops) {
  std::size_t n = rows.size();
  if (k <= 0 || n < static_cast<std::size_t>(k)) return {};
  std::size_t n_tasks = n - k + 1;

  std::vector<std::uint64_t> counts(n_tasks, 0);
  std::vector<std::optional<std::vector<std::size_t>>> viols(n_tasks);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{SIZE_MAX};

  auto worker = [&] {
    Ops ops = make_ops();
    while (true) {
      std::size_t t = next.fetch_add(1, std::memory_order_relaxed);
      if (t >= n_tasks) break;
      if (t > best.load(std::memory_order_relaxed)) continue;
      TaskScan<Ops> ts{rows, k, n, ops, 0, {}, {}};
      ts.walk(0, t, t + 1);
      counts[t] = ts.leaves;
      if (ts.violation) {
        viols[t] = std::move(ts.violation);
        std::size_t cur = best.load(std::memory_order_relaxed);
        while (t < cur && !best.compare_exchange_weak(cur, t)) {
        }
      }
    }
  };

  int nt = std::min<std::size_t>(std::max(threads, 1), n_tasks);
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ScanOutcome out;
  std::size_t win = n_tasks;
  for (std::size_t t = 0; t < n_tasks; ++t) {
    if (viols[t]) {
      win = t;
      break;
    }
  }
  for (std::size_t t = 0; t < n_tasks && t <= win; ++t) out.tested += counts[t];
  if (win < n_tasks) out.violation = viols[win];
  return out;
}

// ---------------------------------------------------------------------------
// row builders

std::vector<std::vector<std::uint64_t>> field_rows(const FieldPointSet& d,
                                                   const QuadraticForm* q) {
  int k = d.dim + 1 + (q ? 1 : 0);
  std::uint64_t p = d.p.value();
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(d.points.size());
  for (const auto& x : d.points) {
    if (static_cast<int>(x.size()) != d.dim) {
      throw InvalidInputError("verify: point dimension mismatch");
    }
    std::vector<std::uint64_t> r(k);
    r[0] = 1;
    for (int i = 0; i < d.dim; ++i) r[1 + i] = x[i] % p;
    if (q) r[k - 1] = q->evaluate_raw(x);
    rows.push_back(std::move(r));
  }
  return rows;
}

mpz_class evaluate_integer_form(const std::vector<mpz_class>& coeffs, int dim,
                                const std::vector<std::int64_t>& x) {
  mpz_class acc = 0, term;
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j, ++k) {
      if (coeffs[k] == 0) continue;
      term = coeffs[k] * x[i];
      term *= x[j];
      acc += term;
    }
  }
  return acc;
}

std::vector<std::vector<mpz_class>> grid_rows(const GridPointSet& d, const RationalForm* q) {
  int k = d.dim + 1 + (q ? 1 : 0);
  std::vector<mpz_class> coeffs;
  if (q) coeffs = q->integerized();
  std::vector<std::vector<mpz_class>> rows;
  rows.reserve(d.points.size());
  for (const auto& x : d.points) {
    if (static_cast<int>(x.size()) != d.dim) {
      throw InvalidInputError("verify: point dimension mismatch");
    }
    std::vector<mpz_class> r(k);
    r[0] = 1;
    for (int i = 0; i < d.dim; ++i) r[1 + i] = x[i];
    if (q) r[k - 1] = evaluate_integer_form(coeffs, d.dim, x);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// True when the 128-bit Bareiss path is provably overflow-free for these
/// rows. Bareiss intermediates are j x j minors; with per-column maxima
/// m_c, Hadamard gives |minor_j|^2 <= j^j * (product of the j largest
/// m_c)^2. The update forms differences of products of two (k-1)-minors,
/// so those squared bounds must stay below 2^126 with a factor-4 cushion,
/// and the final k-minor below 2^126 itself. Computed exactly in mpz.
bool int128_scan_safe(const std::vector<std::vector<mpz_class>>& rows, int k) {
  if (rows.empty()) return true;
  std::vector<mpz_class> colmax(k, 1);
  for (const auto& r : rows) {
    for (int c = 0; c < k; ++c) {
      mpz_class a = abs(r[c]);
      if (a > colmax[c]) colmax[c] = a;
    }
  }
  std::sort(colmax.begin(), colmax.end(), [](const mpz_class& a, const mpz_class& b) {
    return a > b;
  });
  mpz_class limit = mpz_class(1) << 126;
  auto minor_bound_sq = [&](int j) {  // j^j * (prod of j largest column maxima)^2
    mpz_class b;
    mpz_pow_ui(b.get_mpz_t(), mpz_class(j).get_mpz_t(), j);
    mpz_class prod = 1;
    for (int c = 0; c < j; ++c) prod *= colmax[c];
    return mpz_class(b * prod * prod);
  };
  if (4 * minor_bound_sq(k - 1) >= limit) return false;  // update products
  if (minor_bound_sq(k) >= limit * limit) return false;  // final minor
  return true;
}

std::vector<std::vector<__int128>> to_int128_rows(const std::vector<std::vector<mpz_class>>& rows) {
  std::vector<std::vector<__int128>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<__int128> row(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      // int128_scan_safe guarantees |entry| < 2^63 here
      row[i] = static_cast<__int128>(mpz_get_si(r[i].get_mpz_t()));
    }
    out.push_back(std::move(row));
  }
  return out;
}

ScanOutcome scan_grid(const std::vector<std::vector<mpz_class>>& rows, int k, int threads) {
  if (int128_scan_safe(rows, k)) {
    auto fast = to_int128_rows(rows);
    return scan_subsets<Int128Ops>(fast, k, threads, [&] { return Int128Ops(k); });
  }
  return scan_subsets<IntOps>(rows, k, threads, [&] { return IntOps(k); });
}

ScanOutcome scan_field(const std::vector<std::vector<std::uint64_t>>& rows, int k, int threads,
                       std::uint64_t p) {
  if (p < (std::uint64_t{1} << 30) && k <= 16) {
    return scan_subsets<LazyFieldOps>(rows, k, threads, [&] { return LazyFieldOps(p, k); });
  }
  if (p < (std::uint64_t{1} << 31)) {
    return scan_subsets<FieldOps<BarrettMul>>(rows, k, threads,
                                              [&] { return FieldOps<BarrettMul>(p, k); });
  }
  return scan_subsets<FieldOps<WideMul>>(rows, k, threads,
                                         [&] { return FieldOps<WideMul>(p, k); });
}

// ---------------------------------------------------------------------------
// exact small determinants for the incidence pass

std::uint64_t fp_det(std::vector<std::uint64_t> m, int n, std::uint64_t p) {
  std::uint64_t det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i) {
      if (m[static_cast<std::size_t>(i) * n + col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(m[static_cast<std::size_t>(piv) * n + j], m[static_cast<std::size_t>(col) * n + j]);
      }
      det = p - det;
    }
    std::uint64_t pv = m[static_cast<std::size_t>(col) * n + col];
    det = mul_mod(det, pv, p);
    std::uint64_t inv = inv_mod(pv, p);
    for (int i = col + 1; i < n; ++i) {
      std::uint64_t f = mul_mod(m[static_cast<std::size_t>(i) * n + col], inv, p);
      if (f == 0) continue;
      for (int j = col; j < n; ++j) {
        std::size_t ij = static_cast<std::size_t>(i) * n + j;
        m[ij] = sub_mod(m[ij], mul_mod(f, m[static_cast<std::size_t>(col) * n + j], p), p);
      }
    }
  }
  return det % p;
}

mpz_class mpz_det(std::vector<mpz_class> m, int n) {
  // Bareiss; exact, sign tracked through row swaps.
  int sign = 1;
  mpz_class prev = 1, t;
  for (int col = 0; col < n - 1; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i) {
      if (m[static_cast<std::size_t>(i) * n + col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        mpz_swap(m[static_cast<std::size_t>(piv) * n + j].get_mpz_t(),
                 m[static_cast<std::size_t>(col) * n + j].get_mpz_t());
      }
      sign = -sign;
    }
    const mpz_class& pv = m[static_cast<std::size_t>(col) * n + col];
    for (int i = col + 1; i < n; ++i) {
      for (int j = col + 1; j < n; ++j) {
        mpz_class& mij = m[static_cast<std::size_t>(i) * n + j];
        mpz_mul(t.get_mpz_t(), pv.get_mpz_t(), mij.get_mpz_t());
        mpz_submul(t.get_mpz_t(), m[static_cast<std::size_t>(i) * n + col].get_mpz_t(),
                   m[static_cast<std::size_t>(col) * n + j].get_mpz_t());
        if (prev != 1) mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        mpz_swap(mij.get_mpz_t(), t.get_mpz_t());
      }
      m[static_cast<std::size_t>(i) * n + col] = 0;
    }
    prev = pv;
  }
  mpz_class det = m[static_cast<std::size_t>(n - 1) * n + (n - 1)];
  return sign < 0 ? mpz_class(-det) : det;
}

// ---------------------------------------------------------------------------
// anchored incidence maxima

double binom_approx(std::size_t n, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / (i + 1);
  return r;
}

bool incidence_budget_ok(std::size_t n, int dim, const VerifyOptions& opt) {
  if (n > opt.incidence_point_limit) return false;
  double cost = 0;
  for (int k : {dim, dim + 1}) {
    double per = static_cast<double>(k + 1) * k * k + static_cast<double>(n) * (k + 2);
    cost += binom_approx(n, k) * per;
  }
  return cost <= static_cast<double>(opt.incidence_work_limit);
}

/// Iterates sorted k-subsets of [0, n); calls f on each.
template <class F>
void for_each_subset(std::size_t n, int k, F&& f) {
  if (n < static_cast<std::size_t>(k) || k <= 0) return;
  std::vector<std::size_t> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Max points on the hypersurface anchored by k-1 of them, via cofactor
/// normal vectors g (g . row = 0 for the anchored rows). For hyperplane
/// anchors any nonzero g spans; for quadric anchors the cofactor of the
/// trailing Q column is the affine (1, x) determinant, and a zero there
/// means the anchor determines a hyperplane rather than a Q-quadric, so the
/// anchor is skipped (`require_last_cofactor`).
int anchored_max_incidence_field(const std::vector<std::vector<std::uint64_t>>& rows,
                                 std::size_t n, int k, std::uint64_t p,
                                 bool require_last_cofactor) {
  int anchor = k - 1;
  int best = 0;
  for_each_subset(n, anchor, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::uint64_t> g(k, 0);
    bool nonzero = false;
    std::vector<std::uint64_t> minor(static_cast<std::size_t>(anchor) * anchor);
    for (int drop = 0; drop < k; ++drop) {
      std::size_t w = 0;
      for (int r = 0; r < anchor; ++r) {
        for (int c = 0; c < k; ++c) {
          if (c == drop) continue;
          minor[w++] = rows[idx[r]][c];
        }
      }
      std::uint64_t dv = fp_det(minor, anchor, p);
      if (drop % 2 == 1 && dv != 0) dv = p - dv;
      g[drop] = dv;
      nonzero = nonzero || dv != 0;
    }
    if (!nonzero) return;  // anchor does not span
    if (require_last_cofactor && g[k - 1] == 0) return;
    int count = 0;
    for (std::size_t y = 0; y < n; ++y) {
      std::uint64_t acc = 0;
      for (int c = 0; c < k; ++c) {
        if (g[c] != 0) acc = add_mod(acc, mul_mod(g[c], rows[y][c], p), p);
      }
      if (acc == 0) ++count;
    }
    if (count > best) best = count;
  });
  return best;
}

int anchored_max_incidence_grid(const std::vector<std::vector<mpz_class>>& rows, std::size_t n,
                                int k, bool require_last_cofactor) {
  int anchor = k - 1;
  int best = 0;
  for_each_subset(n, anchor, [&](const std::vector<std::size_t>& idx) {
    std::vector<mpz_class> g(k);
    bool nonzero = false;
    std::vector<mpz_class> minor(static_cast<std::size_t>(anchor) * anchor);
    for (int drop = 0; drop < k; ++drop) {
      std::size_t w = 0;
      for (int r = 0; r < anchor; ++r) {
        for (int c = 0; c < k; ++c) {
          if (c == drop) continue;
          minor[w++] = rows[idx[r]][c];
        }
      }
      mpz_class dv = mpz_det(minor, anchor);
      if (drop % 2 == 1) dv = -dv;
      g[drop] = dv;
      nonzero = nonzero || g[drop] != 0;
    }
    if (!nonzero) return;
    if (require_last_cofactor && g[k - 1] == 0) return;
    int count = 0;
    mpz_class acc;
    for (std::size_t y = 0; y < n; ++y) {
      acc = 0;
      for (int c = 0; c < k; ++c) {
        if (g[c] == 0) continue;
        mpz_addmul(acc.get_mpz_t(), g[c].get_mpz_t(), rows[y][c].get_mpz_t());
      }
      if (acc == 0) ++count;
    }
    if (count > best) best = count;
  });
  return best;
}

// ---------------------------------------------------------------------------

SubsetCheck to_subset_check(ScanOutcome o) {
  return SubsetCheck{std::move(o.violation), o.tested};
}

void require_hyperplane_pass(const SubsetCheck& h) {
  if (!h.pass()) {
    throw std::logic_error(
        "check_quadrics: hyperplane certification failed or missing; the bordered determinant "
        "dichotomy requires it");
  }
}

}  // namespace

FieldPointSet field_point_set(const Construction& c) {
  return FieldPointSet{c.p, c.dim, c.points};
}

GridPointSet grid_point_set(const GridConstruction& g) {
  return GridPointSet{g.dim, g.points};
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QGEN_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SubsetCheck check_hyperplanes(const FieldPointSet& d, const VerifyOptions& opt) {
  auto rows = field_rows(d, nullptr);
  return to_subset_check(scan_field(rows, d.dim + 1, resolve_threads(opt.threads), d.p.value()));
}

SubsetCheck check_hyperplanes(const GridPointSet& d, const VerifyOptions& opt) {
  auto rows = grid_rows(d, nullptr);
  return to_subset_check(scan_grid(rows, d.dim + 1, resolve_threads(opt.threads)));
}

SubsetCheck check_quadrics(const FieldPointSet& d, const QuadraticForm& q,
                           const SubsetCheck& hyperplanes, const VerifyOptions& opt) {
  require_hyperplane_pass(hyperplanes);
  if (q.dim() != d.dim || !(q.prime() == d.p)) {
    throw InvalidInputError("check_quadrics: form does not match the point set");
  }
  auto rows = field_rows(d, &q);
  return to_subset_check(scan_field(rows, d.dim + 2, resolve_threads(opt.threads), d.p.value()));
}

SubsetCheck check_quadrics(const GridPointSet& d, const RationalForm& q,
                           const SubsetCheck& hyperplanes, const VerifyOptions& opt) {
  require_hyperplane_pass(hyperplanes);
  if (q.dim() != d.dim) {
    throw InvalidInputError("check_quadrics: form does not match the point set");
  }
  auto rows = grid_rows(d, &q);
  return to_subset_check(scan_grid(rows, d.dim + 2, resolve_threads(opt.threads)));
}

namespace {

template <class PointSet, class HyperFn, class QuadFn, class IncidenceFn>
Certificate certify(const PointSet& d, const VerifyOptions& opt, HyperFn hyper, QuadFn quad,
                    IncidenceFn incidence) {
  Certificate cert;
  SubsetCheck h = hyper();
  cert.hyperplane_subsets_tested = h.subsets_tested;
  if (!h.pass()) {
    cert.status = Certificate::Status::hyperplane_violation;
    cert.violating_subset = *h.violation;
    cert.witness_determinant = "0";
  } else {
    SubsetCheck s = quad(h);
    cert.quadric_subsets_tested = s.subsets_tested;
    if (!s.pass()) {
      cert.status = Certificate::Status::quadric_violation;
      cert.violating_subset = *s.violation;
      cert.witness_determinant = "0";
    }
  }
  std::size_t n = d.points.size();
  if (incidence_budget_ok(n, d.dim, opt)) {
    auto [mh, mq] = incidence();
    // Any min(n, d) points lie on a common hyperplane, so that floor always
    // applies; the quadric floor min(n, d+1) needs affine independence and
    // is only valid once the hyperplane check has passed.
    cert.max_hyperplane_incidence = std::max(mh, static_cast<int>(std::min<std::size_t>(n, d.dim)));
    int floor_q = h.pass() ? static_cast<int>(std::min<std::size_t>(n, d.dim + 1)) : 0;
    cert.max_quadric_incidence = std::max(mq, floor_q);
  }
  return cert;
}

}  // namespace

Certificate is_q_generic(const FieldPointSet& d, const QuadraticForm& q,
                         const VerifyOptions& opt) {
  return certify(
      d, opt, [&] { return check_hyperplanes(d, opt); },
      [&](const SubsetCheck& h) { return check_quadrics(d, q, h, opt); },
      [&] {
        auto hrows = field_rows(d, nullptr);
        auto qrows = field_rows(d, &q);
        int mh =
            anchored_max_incidence_field(hrows, d.points.size(), d.dim + 1, d.p.value(), false);
        int mq =
            anchored_max_incidence_field(qrows, d.points.size(), d.dim + 2, d.p.value(), true);
        return std::pair<int, int>(mh, mq);
      });
}

Certificate is_q_generic(const GridPointSet& d, const RationalForm& q, const VerifyOptions& opt) {
  return certify(
      d, opt, [&] { return check_hyperplanes(d, opt); },
      [&](const SubsetCheck& h) { return check_quadrics(d, q, h, opt); },
      [&] {
        auto hrows = grid_rows(d, nullptr);
        auto qrows = grid_rows(d, &q);
        int mh = anchored_max_incidence_grid(hrows, d.points.size(), d.dim + 1, false);
        int mq = anchored_max_incidence_grid(qrows, d.points.size(), d.dim + 2, true);
        return std::pair<int, int>(mh, mq);
      });
}

const char* to_string(Certificate::Status s) {
  switch (s) {
    case Certificate::Status::pass:
      return "pass";
    case Certificate::Status::hyperplane_violation:
      return "hyperplane_violation";
    case Certificate::Status::quadric_violation:
      return "quadric_violation";
  }
  return "unknown";
}

std::vector<std::uint64_t> unique_quadric_through(std::span<const std::vector<std::uint64_t>> pts,
                                                  const QuadraticForm& q) {
  int d = q.dim();
  int n = d + 1;
  if (static_cast<int>(pts.size()) != n) {
    throw InvalidInputError("unique_quadric_through: need exactly d+1 points");
  }
  std::uint64_t p = q.prime().value();
  detail::Mat a(static_cast<std::size_t>(n) * n);
  std::vector<std::uint64_t> b(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(pts[i].size()) != d) {
      throw InvalidInputError("unique_quadric_through: point dimension mismatch");
    }
    a[static_cast<std::size_t>(i) * n] = 1;
    for (int j = 0; j < d; ++j) a[static_cast<std::size_t>(i) * n + 1 + j] = pts[i][j] % p;
    std::uint64_t qv = q.evaluate_raw(pts[i]);
    b[i] = qv == 0 ? 0 : p - qv;
  }
  std::vector<std::uint64_t> x;
  if (!detail::fp_solve(std::move(a), std::move(b), n, p, x)) {
    throw InvalidInputError("unique_quadric_through: points are affinely dependent");
  }
  return x;
}

std::vector<mpq_class> unique_quadric_through(std::span<const std::vector<std::int64_t>> pts,
                                              const RationalForm& q) {
  int d = q.dim();
  int n = d + 1;
  if (static_cast<int>(pts.size()) != n) {
    throw InvalidInputError("unique_quadric_through: need exactly d+1 points");
  }
  // Exact Gaussian elimination over the rationals on [A | b], b_i = -Q(P_i).
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(pts[i].size()) != d) {
      throw InvalidInputError("unique_quadric_through: point dimension mismatch");
    }
    m[i][0] = 1;
    for (int j = 0; j < d; ++j) m[i][1 + j] = mpq_class(pts[i][j]);
    std::vector<mpq_class> v(d);
    for (int j = 0; j < d; ++j) v[j] = mpq_class(pts[i][j]);
    m[i][n] = -q.evaluate(v);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i) {
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) {
      throw InvalidInputError("unique_quadric_through: points are affinely dependent");
    }
    std::swap(m[col], m[piv]);
    mpq_class inv = 1 / m[col][col];
    for (int j = col; j <= n; ++j) m[col][j] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      mpq_class f = m[i][col];
      for (int j = col; j <= n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  std::vector<mpq_class> x(n);
  for (int i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

}  // namespace qgen
