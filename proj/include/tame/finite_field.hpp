#pragma once

// Table-based arithmetic in F_q and small dense matrices over it.
// Elements are integers in [0, q): base-p digits are the coefficients of a
// polynomial in the generator, reduced by a primitive polynomial.

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tame/errors.hpp"

namespace tame::ff {

using Elem = std::uint32_t;

class FiniteField {
 public:
  /// Largest field built with full log tables.
  static constexpr unsigned max_order = 1u << 16;

  explicit FiniteField(unsigned q) : q_(q) {
    if (q < 2 || q > max_order) fail(ErrorKind::BadParams, "field order " + std::to_string(q) + " out of range");
    p_ = 2;
    while (q % p_ != 0) ++p_;
    unsigned rest = q;
    while (rest % p_ == 0) {
      rest /= p_;
      ++degree_;
    }
    if (rest != 1) fail(ErrorKind::BadParams, std::to_string(q) + " is not a prime power");
    find_primitive_polynomial();
  }

  unsigned order() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return degree_; }
  /// Coefficients c_0..c_{k-1} of x^k = sum c_i x^i.
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem generator() const noexcept { return exp_[1]; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem out = 0, place = 1;
    for (unsigned i = 0; i < degree_; ++i) {
      out += ((a % p_ + b % p_) % p_) * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return out;
  }

  Elem neg(Elem a) const {
    if (p_ == 2) return a;
    Elem out = 0, place = 1;
    for (unsigned i = 0; i < degree_; ++i) {
      out += ((p_ - a % p_) % p_) * place;
      a /= p_;
      place *= p_;
    }
    return out;
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }

  Elem inv(Elem a) const {
    if (a == 0) fail(ErrorKind::SingularMatrix, "inverse of zero in F_" + std::to_string(q_));
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1))) % (q_ - 1)];
  }

  /// Discrete log to the generator; a must be nonzero.
  unsigned log(Elem a) const {
    if (a == 0) fail(ErrorKind::BadParams, "log of zero");
    return log_[a];
  }

  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

  /// Multiplicative order of a nonzero element.
  unsigned element_order(Elem a) const {
    unsigned l = log(a);
    unsigned g = std::gcd(l, q_ - 1);
    return (q_ - 1) / g;
  }

  /// Elements with a^m = 1, ordered by discrete log.
  std::vector<Elem> roots_of_unity(unsigned m) const {
    if (m == 0 || (q_ - 1) % m != 0)
      fail(ErrorKind::TorsionUnavailable, std::to_string(m) + " does not divide " + std::to_string(q_ - 1));
    std::vector<Elem> out;
    for (unsigned i = 0; i < m; ++i) out.push_back(exp_[i * ((q_ - 1) / m)]);
    return out;
  }

  /// Prime-field element from an integer.
  Elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }

  /// a -> a^(p^j).
  Elem frobenius(Elem a, unsigned j) const {
    std::uint64_t e = 1;
    for (unsigned i = 0; i < j % degree_; ++i) e *= p_;
    return pow(a, e);
  }

  bool operator==(const FiniteField& o) const { return q_ == o.q_ && modulus_ == o.modulus_; }

 private:
  void find_primitive_polynomial() {
    if (degree_ == 1) {
      // smallest primitive root mod p
      for (unsigned g = (p_ == 2 ? 1 : 2); g < p_; ++g)
        if (build_tables({g})) return;
      fail(ErrorKind::BadParams, "no primitive root");
    }
    const unsigned count = q_;
    for (unsigned code = 0; code < count; ++code) {
      std::vector<unsigned> c(degree_);
      unsigned rest = code;
      for (auto& x : c) {
        x = rest % p_;
        rest /= p_;
      }
      if (c[0] == 0) continue;
      if (build_tables(c)) return;
    }
    fail(ErrorKind::BadParams, "no primitive polynomial found");
  }

  /// Multiplication by x in the digit representation, using x^k = sum c_i x^i.
  Elem times_x(Elem a, const std::vector<unsigned>& c) const {
    std::vector<unsigned> d(degree_);
    for (unsigned i = 0; i < degree_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    const unsigned top = d[degree_ - 1];
    for (unsigned i = degree_; i-- > 1;) d[i] = d[i - 1];
    d[0] = 0;
    for (unsigned i = 0; i < degree_; ++i) d[i] = (d[i] + top * c[i]) % p_;
    Elem out = 0, place = 1;
    for (unsigned i = 0; i < degree_; ++i) {
      out += d[i] * place;
      place *= p_;
    }
    return out;
  }

  bool build_tables(const std::vector<unsigned>& c) {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    std::vector<bool> seen(q_, false);
    Elem cur = 1;
    for (unsigned k = 0; k < q_ - 1; ++k) {
      if (seen[cur]) return false;
      seen[cur] = true;
      exp_[k] = cur;
      log_[cur] = k;
      cur = degree_ == 1 ? static_cast<Elem>((static_cast<std::uint64_t>(cur) * c[0]) % p_) : times_x(cur, c);
    }
    if (cur != 1) return false;
    modulus_ = c;
    return true;
  }

  unsigned q_ = 0;
  unsigned p_ = 0;
  unsigned degree_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<Elem> exp_;
  std::vector<unsigned> log_;
};

/// Field embedding F_small -> F_big, determined by a root of the small
/// field's defining polynomial.
class Embedding {
 public:
  Embedding(const FiniteField& small, const FiniteField& big) {
    if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0)
      fail(ErrorKind::BadParams, "no embedding F_" + std::to_string(small.order()) + " -> F_" + std::to_string(big.order()));
    const unsigned k = small.degree();
    if (k == 1) {
      root_ = 1;
    } else {
      bool found = false;
      for (Elem b = 1; b < big.order() && !found; ++b) {
        // x^k - sum c_i x^i at b
        Elem val = big.pow(b, k);
        Elem pw = 1;
        for (unsigned i = 0; i < k; ++i) {
          val = big.sub(val, big.mul(big.from_int(small.modulus()[i]), pw));
          pw = big.mul(pw, b);
        }
        if (val == 0) {
          root_ = b;
          found = true;
        }
      }
      if (!found) fail(ErrorKind::BadParams, "embedding root not found");
    }
    table_.resize(small.order());
    for (Elem a = 0; a < small.order(); ++a) {
      Elem rest = a, out = 0, pw = 1;
      for (unsigned i = 0; i < k; ++i) {
        out = big.add(out, big.mul(big.from_int(rest % small.characteristic()), pw));
        rest /= small.characteristic();
        pw = big.mul(pw, root_);
      }
      table_[a] = out;
    }
  }

  Elem operator()(Elem a) const { return table_.at(a); }

 private:
  Elem root_ = 1;
  std::vector<Elem> table_;
};

/// Dense n x n matrix over a field held elsewhere.
struct Matrix {
  unsigned n = 0;
  std::vector<Elem> a;

  Matrix() = default;
  explicit Matrix(unsigned size) : n(size), a(size * size, 0) {}
  Matrix(unsigned size, std::vector<Elem> entries) : n(size), a(std::move(entries)) {
    if (a.size() != n * n) fail(ErrorKind::DimensionMismatch, "matrix entries");
  }

  static Matrix identity(unsigned size) {
    Matrix m(size);
    for (unsigned i = 0; i < size; ++i) m(i, i) = 1;
    return m;
  }

  Elem& operator()(unsigned i, unsigned j) { return a[i * n + j]; }
  Elem operator()(unsigned i, unsigned j) const { return a[i * n + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix&, const Matrix&) = default;
};

inline Matrix mul(const FiniteField& f, const Matrix& x, const Matrix& y) {
  Matrix out(x.n);
  for (unsigned i = 0; i < x.n; ++i)
    for (unsigned k = 0; k < x.n; ++k) {
      const Elem xik = x(i, k);
      if (xik == 0) continue;
      for (unsigned j = 0; j < x.n; ++j) out(i, j) = f.add(out(i, j), f.mul(xik, y(k, j)));
    }
  return out;
}

inline Matrix transpose(const Matrix& x) {
  Matrix out(x.n);
  for (unsigned i = 0; i < x.n; ++i)
    for (unsigned j = 0; j < x.n; ++j) out(j, i) = x(i, j);
  return out;
}

inline Elem det(const FiniteField& f, Matrix x) {
  Elem d = 1;
  const unsigned n = x.n;
  for (unsigned c = 0; c < n; ++c) {
    unsigned piv = c;
    while (piv < n && x(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (unsigned j = 0; j < n; ++j) std::swap(x(piv, j), x(c, j));
      d = f.neg(d);
    }
    d = f.mul(d, x(c, c));
    const Elem inv = f.inv(x(c, c));
    for (unsigned i = c + 1; i < n; ++i) {
      const Elem factor = f.mul(x(i, c), inv);
      if (factor == 0) continue;
      for (unsigned j = c; j < n; ++j) x(i, j) = f.sub(x(i, j), f.mul(factor, x(c, j)));
    }
  }
  return d;
}

inline std::optional<Matrix> inverse(const FiniteField& f, Matrix x) {
  const unsigned n = x.n;
  Matrix out = Matrix::identity(n);
  for (unsigned c = 0; c < n; ++c) {
    unsigned piv = c;
    while (piv < n && x(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    for (unsigned j = 0; j < n; ++j) {
      std::swap(x(piv, j), x(c, j));
      std::swap(out(piv, j), out(c, j));
    }
    const Elem inv = f.inv(x(c, c));
    for (unsigned j = 0; j < n; ++j) {
      x(c, j) = f.mul(x(c, j), inv);
      out(c, j) = f.mul(out(c, j), inv);
    }
    for (unsigned i = 0; i < n; ++i) {
      if (i == c || x(i, c) == 0) continue;
      const Elem factor = x(i, c);
      for (unsigned j = 0; j < n; ++j) {
        x(i, j) = f.sub(x(i, j), f.mul(factor, x(c, j)));
        out(i, j) = f.sub(out(i, j), f.mul(factor, out(c, j)));
      }
    }
  }
  return out;
}

inline Matrix inverse_or_throw(const FiniteField& f, const Matrix& x) {
  auto inv = inverse(f, x);
  if (!inv) fail(ErrorKind::SingularMatrix, "matrix is not invertible");
  return *inv;
}

inline Matrix power(const FiniteField& f, Matrix x, std::uint64_t k) {
  Matrix out = Matrix::identity(x.n);
  while (k > 0) {
    if (k & 1) out = mul(f, out, x);
    x = mul(f, x, x);
    k >>= 1;
  }
  return out;
}

inline Matrix scalar(unsigned n, Elem c) {
  Matrix m(n);
  for (unsigned i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

inline Matrix diagonal(const std::vector<Elem>& d) {
  Matrix m(static_cast<unsigned>(d.size()));
  for (unsigned i = 0; i < m.n; ++i) m(i, i) = d[i];
  return m;
}

inline bool is_diagonal(const Matrix& x) {
  for (unsigned i = 0; i < x.n; ++i)
    for (unsigned j = 0; j < x.n; ++j)
      if (i != j && x(i, j) != 0) return false;
  return true;
}

/// c * I for some nonzero c.
inline bool is_scalar(const Matrix& x) {
  if (!is_diagonal(x) || x(0, 0) == 0) return false;
  for (unsigned i = 1; i < x.n; ++i)
    if (x(i, i) != x(0, 0)) return false;
  return true;
}

inline Matrix map_entries(const Matrix& x, const auto& fn) {
  Matrix out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = fn(x.a[i]);
  return out;
}

/// Multiplicative order of an invertible matrix, up to the bound.
inline std::optional<std::uint64_t> matrix_order(const FiniteField& f, const Matrix& x, std::uint64_t bound = 1u << 20) {
  const Matrix id = Matrix::identity(x.n);
  Matrix cur = x;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    if (cur == id) return k;
    cur = mul(f, cur, x);
  }
  return std::nullopt;
}

/// |GL_n(F_q)|.
inline std::uint64_t general_linear_order(unsigned n, unsigned q) {
  std::uint64_t qn = 1;
  for (unsigned i = 0; i < n; ++i) qn *= q;
  std::uint64_t out = 1, qi = 1;
  for (unsigned i = 0; i < n; ++i) {
    out *= qn - qi;
    qi *= q;
  }
  return out;
}

/// Every invertible n x n matrix, in lexicographic order of entries.
inline std::vector<Matrix> general_linear_group(const FiniteField& f, unsigned n) {
  std::vector<Matrix> out;
  out.reserve(general_linear_order(n, f.order()));
  Matrix m(n);
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  for (;;) {
    if (det(f, m) != 0) out.push_back(m);
    std::size_t i = cells;
    while (i-- > 0) {
      if (++m.a[i] < f.order()) break;
      m.a[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

inline std::string to_string(const Matrix& x) {
  std::string s = "[";
  for (unsigned i = 0; i < x.n; ++i) {
    s += i ? "; " : "";
    for (unsigned j = 0; j < x.n; ++j) s += (j ? " " : "") + std::to_string(x(i, j));
  }
  return s + "]";
}

}  // namespace tame::ff
