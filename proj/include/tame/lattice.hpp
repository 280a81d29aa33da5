#pragma once

// Exact arithmetic on finitely generated abelian groups: Smith normal form,
// cokernels, coinvariants and vectors of prime-to-p fractions modulo 1.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tame/int_matrix.hpp"

namespace tame {

struct SnfResult {
  IntMatrix U, D, V;
  /// Diagonal of D (length min(rows, cols)): non-negative, divisibility chain, zeros trail.
  IntVector invariant_factors;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < invariant_factors.size() && invariant_factors[r] != 0) ++r;
    return r;
  }
};

/// U * A * V = D with U, V unimodular. Pivot is always the entry of smallest
/// absolute value, first in row-major order, so the output is reproducible.
inline SnfResult smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) fail(ErrorKind::DimensionMismatch, "smith_normal_form of an empty matrix");
  IntMatrix d = a, u = IntMatrix::identity(m), v = IntMatrix::identity(n);
  const std::size_t k = std::min(m, n);
  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      // smallest nonzero pivot in the trailing block
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (pi == m || abs(d(i, j)) < abs(d(pi, pj)))) pi = i, pj = j;
      if (pi == m) break;
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold an offending row into row t and retry
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      d.add_row(t, bad, 1);
      u.add_row(t, bad, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  IntVector factors(k);
  for (std::size_t i = 0; i < k; ++i) factors[i] = d(i, i);
  return {std::move(u), std::move(d), std::move(v), std::move(factors)};
}

/// Z^m / M Z^n written as (+) Z/d_i (+) Z^free_rank.
struct FiniteAbelianPresentation {
  /// Factors > 1 only, in divisibility order.
  IntVector invariant_factors;
  std::size_t free_rank = 0;
  /// Rows map ambient coordinates to presentation coordinates: torsion rows first, then free rows.
  IntMatrix basis_change;
  /// Columns lift presentation generators back to the ambient lattice (basis_change * section = I).
  IntMatrix section;

  std::size_t torsion_count() const { return invariant_factors.size(); }

  /// Order of the group; zero when the group is infinite.
  Int order() const {
    if (free_rank > 0) return 0;
    Int o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
  }

  /// Rows of basis_change that project onto the torsion-free quotient.
  IntMatrix free_projection() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < free_rank; ++i) idx.push_back(torsion_count() + i);
    return basis_change.select_rows(idx);
  }

  IntMatrix free_section() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < free_rank; ++i) idx.push_back(torsion_count() + i);
    return section.select_cols(idx);
  }

  /// Canonical coordinates of an ambient vector: torsion parts reduced into [0, d_i).
  IntVector coordinates(const IntVector& x) const {
    IntVector y = basis_change * x;
    for (std::size_t i = 0; i < torsion_count(); ++i) y[i] = mod(y[i], invariant_factors[i]);
    return y;
  }
};

/// Structure of Z^rows / M Z^cols.
inline FiniteAbelianPresentation cokernel_structure(const IntMatrix& m) {
  const SnfResult snf = smith_normal_form(m);
  const IntMatrix u_inv = inverse_unimodular(snf.U);
  FiniteAbelianPresentation out;
  std::vector<std::size_t> torsion_rows, free_rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Int d = i < snf.invariant_factors.size() ? snf.invariant_factors[i] : Int(0);
    if (d == 0)
      free_rows.push_back(i);
    else if (d != 1) {
      torsion_rows.push_back(i);
      out.invariant_factors.push_back(d);
    }
  }
  out.free_rank = free_rows.size();
  std::vector<std::size_t> rows = torsion_rows;
  rows.insert(rows.end(), free_rows.begin(), free_rows.end());
  out.basis_change = snf.U.select_rows(rows);
  out.section = u_inv.select_cols(rows);
  return out;
}

/// Multiplicative order of an integer matrix, or nullopt past `bound`.
inline std::optional<unsigned> matrix_order(const IntMatrix& a, unsigned bound = 10000) {
  const IntMatrix id = IntMatrix::identity(a.rows());
  IntMatrix p = a;
  for (unsigned k = 1; k <= bound; ++k) {
    if (p == id) return k;
    p = p * a;
  }
  return std::nullopt;
}

/// X / (1 - theta) X for X = Z^rank.
inline FiniteAbelianPresentation coinvariants(std::size_t rank, const IntMatrix& theta, unsigned order_bound = 10000) {
  if (theta.rows() != rank || theta.cols() != rank) fail(ErrorKind::DimensionMismatch, "theta must be rank x rank");
  if (rank == 0) return {};
  if (abs(theta.determinant()) != 1) fail(ErrorKind::NonInvertible, "theta is not invertible over Z");
  if (!matrix_order(theta, order_bound)) fail(ErrorKind::InfiniteOrder, "theta has order above the configured bound");
  return cokernel_structure(IntMatrix::identity(rank) - theta);
}

/// Basis (as columns) of {x : A x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  const SnfResult snf = smith_normal_form(a);
  std::vector<std::size_t> idx;
  for (std::size_t j = snf.rank(); j < a.cols(); ++j) idx.push_back(j);
  return snf.V.select_cols(idx);
}

/// Some integer solution of A x = b, if one exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.size()) fail(ErrorKind::DimensionMismatch, "solve_integer shape");
  if (a.cols() == 0) return is_zero(b) ? std::optional<IntVector>(IntVector{}) : std::nullopt;
  if (a.rows() == 0) return IntVector(a.cols());
  const SnfResult snf = smith_normal_form(a);
  const IntVector ub = snf.U * b;
  IntVector y(a.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    const Int d = i < snf.invariant_factors.size() ? snf.invariant_factors[i] : Int(0);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % d != 0) return std::nullopt;
      y[i] = ub[i] / d;
    }
  }
  return snf.V * y;
}

/// True when b lies in the column span A Z^k.
inline bool in_lattice(const IntMatrix& a, const IntVector& b) { return solve_integer(a, b).has_value(); }

/// Canonical representative of x + L, where L is spanned by the columns of
/// `basis`: coordinates are reduced from the last one backwards against an
/// echelon basis whose pivots sit on the trailing nonzero coordinate.
inline IntVector reduce_modulo_lattice(IntVector x, const IntMatrix& basis) {
  std::vector<IntVector> pool;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    IntVector c = basis.col(j);
    if (!is_zero(c)) pool.push_back(std::move(c));
  }
  const std::size_t n = x.size();
  for (std::size_t c = n; c-- > 0;) {
    std::vector<IntVector> active, rest;
    for (auto& b : pool) (b[c] != 0 ? active : rest).push_back(std::move(b));
    pool = std::move(rest);
    if (active.empty()) continue;
    // Euclid on coordinate c
    for (;;) {
      std::sort(active.begin(), active.end(), [c](const IntVector& a, const IntVector& b) { return abs(a[c]) < abs(b[c]); });
      for (std::size_t i = 1; i < active.size(); ++i) {
        Int q = active[i][c] / active[0][c];
        active[i] = active[i] - scale(q, active[0]);
      }
      std::vector<IntVector> keep{active[0]};
      for (std::size_t i = 1; i < active.size(); ++i) {
        if (active[i][c] != 0)
          keep.push_back(std::move(active[i]));
        else if (!is_zero(active[i]))
          pool.push_back(std::move(active[i]));
      }
      active = std::move(keep);
      if (active.size() == 1) break;
    }
    IntVector piv = active[0];
    if (piv[c] < 0) piv = -piv;
    x = x - scale(floor_div(x[c], piv[c]), piv);
  }
  return x;
}

/// Element of Z^dim tensor Q_{p'}/Z: reduced fractions in [0, 1) with denominators prime to p.
class TorsionVector {
 public:
  TorsionVector() = default;
  TorsionVector(RationalVector coords, Int p) : coords_(std::move(coords)), p_(std::move(p)) {
    for (auto& c : coords_) {
      c = frac(c);
      if (p_ > 1 && denominator(c) % p_ == 0)
        fail(ErrorKind::PDivisibleDeterminant, "denominator of " + to_string(c) + " is divisible by p = " + p_.str());
    }
  }

  static TorsionVector zero(std::size_t dim, const Int& p) { return TorsionVector(RationalVector(dim), p); }

  std::size_t dim() const noexcept { return coords_.size(); }
  const RationalVector& coords() const noexcept { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const Int& p() const noexcept { return p_; }

  /// lcm of denominators.
  Int level() const {
    Int l = 1;
    for (const auto& c : coords_) l = lcm(l, denominator(c));
    return l;
  }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
  }

  friend bool operator==(const TorsionVector& a, const TorsionVector& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const TorsionVector& a, const TorsionVector& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? ", " : "") + to_string(coords_[i]);
    return s + ")";
  }

 private:
  RationalVector coords_;
  Int p_ = 0;
};

inline RationalVector to_rational(const IntVector& v) { return RationalVector(v.begin(), v.end()); }

/// The v in [0,1)^n with M v - mu integral.
inline TorsionVector torsion_solve(const IntMatrix& m, const IntVector& mu, const Int& p) {
  if (!m.is_square()) fail(ErrorKind::DimensionMismatch, "torsion_solve needs a square matrix");
  const Int det = m.determinant();
  if (det == 0) fail(ErrorKind::SingularMatrix, "torsion_solve: det M = 0");
  if (det % p == 0) fail(ErrorKind::PDivisibleDeterminant, "torsion_solve: p divides det M = " + det.str());
  return TorsionVector(solve_rational(m, to_rational(mu)), p);
}

/// Apply an integer matrix to a torsion vector and reduce mod 1.
inline TorsionVector apply(const IntMatrix& m, const TorsionVector& v) { return TorsionVector(m * v.coords(), v.p()); }

}  // namespace tame
