#pragma once

// Brute-force oracles over small finite matrix groups. Nothing here uses the
// lattice parametrizations; the verification suites compare the two sides.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "tame/finite_field.hpp"
#include "tame/finite_tori.hpp"
#include "tame/twisted_classes.hpp"

namespace tame::oracle {

using ff::Elem;
using ff::FiniteField;
using ff::Matrix;

/// Group automorphism theta used for twisted conjugation s ~ h s theta(h)^{-1}.
struct TwistSpec {
  enum class Kind { Inner, TransposeInverse };
  Kind kind = Kind::Inner;
  /// theta(h) = M h M^{-1} or M h^{-T} M^{-1}.
  Matrix matrix;
  unsigned order = 1;

  static TwistSpec trivial(unsigned n) { return {Kind::Inner, Matrix::identity(n), 1}; }

  /// theta(h) = J h^{-T} J^{-1} with J antidiagonal of alternating sign.
  static TwistSpec transpose_inverse(const FiniteField& f, unsigned n) {
    Matrix j(n);
    for (unsigned i = 0; i < n; ++i) j(i, n - 1 - i) = i % 2 == 0 ? f.one() : f.neg(f.one());
    return {Kind::TransposeInverse, j, 2};
  }

  std::string describe() const {
    return (kind == Kind::Inner ? "inner-by" : "transpose-inverse-then-conjugate") + std::string("(") + ff::to_string(matrix) + ")";
  }
};

inline Matrix apply_twist(const FiniteField& f, const TwistSpec& tw, const Matrix& h, const Matrix& m_inv) {
  Matrix x = h;
  if (tw.kind == TwistSpec::Kind::TransposeInverse) x = ff::transpose(ff::inverse_or_throw(f, h));
  return ff::mul(f, ff::mul(f, tw.matrix, x), m_inv);
}

/// Partition of the diagonal m-torsion elements diag(z^e_1, ..., z^e_n),
/// z = generator^((q-1)/m), into twisted conjugacy classes.
struct TwistedPartition {
  unsigned n = 0;
  unsigned q_field = 0;
  unsigned m = 1;
  /// Exponent tuples, in lexicographic order.
  std::vector<std::vector<unsigned>> tuples;
  /// Class id per tuple; ids are numbered by first appearance.
  std::vector<std::size_t> block;

  std::size_t class_count() const { return block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1; }

  /// Blocks as sorted index lists, sorted.
  std::vector<std::vector<std::size_t>> blocks() const {
    std::vector<std::vector<std::size_t>> out(class_count());
    for (std::size_t i = 0; i < block.size(); ++i) out[block[i]].push_back(i);
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  }
};

inline std::vector<std::vector<unsigned>> exponent_tuples(unsigned n, unsigned m) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> e(n, 0);
  for (;;) {
    out.push_back(e);
    std::size_t i = n;
    while (i-- > 0) {
      if (++e[i] < m) break;
      e[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace detail

inline TwistedPartition brute_twisted_classes(unsigned n, unsigned q_field, unsigned m, const TwistSpec& tw) {
  if (n == 0 || n > 3) fail(ErrorKind::BadParams, "oracle supports 1 <= n <= 3");
  if (m == 0 || (q_field - 1) % m != 0)
    fail(ErrorKind::TorsionUnavailable, std::to_string(m) + " does not divide q - 1 = " + std::to_string(q_field - 1));
  if (tw.matrix.n != n) fail(ErrorKind::DimensionMismatch, "twist matrix has the wrong size");
  if (tw.kind == TwistSpec::Kind::TransposeInverse && tw.order % 2 != 0)
    fail(ErrorKind::BadParams, "a transpose-inverse twist has even order");
  if (ff::general_linear_order(n, q_field) > 10'000'000) fail(ErrorKind::SearchSpaceExceeded, "group is too large");
  const FiniteField f(q_field);
  const Matrix m_inv = ff::inverse_or_throw(f, tw.matrix);
  const unsigned step = (q_field - 1) / m;

  TwistedPartition out;
  out.n = n;
  out.q_field = q_field;
  out.m = m;
  out.tuples = detail::exponent_tuples(n, m);
  std::map<std::vector<unsigned>, std::size_t> index;
  std::vector<Matrix> elems;
  for (std::size_t i = 0; i < out.tuples.size(); ++i) {
    index.emplace(out.tuples[i], i);
    std::vector<Elem> d;
    for (unsigned e : out.tuples[i]) d.push_back(f.exp(static_cast<std::uint64_t>(e) * step));
    elems.push_back(ff::diagonal(d));
  }
  const std::vector<Matrix> group = ff::general_linear_group(f, n);

  const unsigned workers = std::max(1u, std::min<unsigned>(thread_count(), static_cast<unsigned>(group.size())));
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges(workers);
  auto work = [&](unsigned id) {
    detail::UnionFind local(elems.size());
    for (std::size_t g = id; g < group.size(); g += workers) {
      const Matrix& h = group[g];
      const Matrix right = ff::inverse_or_throw(f, apply_twist(f, tw, h, m_inv));
      for (std::size_t s = 0; s < elems.size(); ++s) {
        const Matrix img = ff::mul(f, ff::mul(f, h, elems[s]), right);
        if (!ff::is_diagonal(img)) continue;
        std::vector<unsigned> e(n);
        bool torsion = true;
        for (unsigned i = 0; i < n && torsion; ++i) {
          const unsigned l = f.log(img(i, i));
          if (l % step != 0) torsion = false;
          e[i] = l / step;
        }
        if (torsion) local.unite(s, index.at(e));
      }
    }
    for (std::size_t s = 0; s < elems.size(); ++s)
      if (local.find(s) != s) edges[id].emplace_back(s, local.find(s));
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  detail::UnionFind uf(elems.size());
  for (const auto& list : edges)
    for (auto [a, b] : list) uf.unite(a, b);
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t s = 0; s < elems.size(); ++s) {
    auto [it, fresh] = ids.emplace(uf.find(s), ids.size());
    out.block.push_back(it->second);
  }
  return out;
}

/// sigma(g) = M psi(g) M^{-1}, psi = (absolute Frobenius)^j, optionally followed by transpose-inverse.
struct SigmaAction {
  Matrix matrix;
  unsigned frobenius_power = 0;
  bool transpose_inverse = false;

  static SigmaAction inner(Matrix m) { return {std::move(m), 0, false}; }

  std::string describe() const {
    std::string s = "inner(" + ff::to_string(matrix) + ")";
    if (frobenius_power) s += " o frob^" + std::to_string(frobenius_power);
    if (transpose_inverse) s += " o transpose-inverse";
    return s;
  }
};

inline Matrix apply_sigma(const FiniteField& f, const SigmaAction& s, const Matrix& m_inv, const Matrix& g) {
  Matrix x = g;
  if (s.frobenius_power) x = ff::map_entries(x, [&](Elem a) { return f.frobenius(a, s.frobenius_power); });
  if (s.transpose_inverse) x = ff::transpose(ff::inverse_or_throw(f, x));
  return ff::mul(f, ff::mul(f, s.matrix, x), m_inv);
}

struct CommonTorusResult {
  bool found = false;
  /// Extension degree where the torus was found.
  unsigned k = 0;
  /// Regular semisimple element over F_{q^k} whose centralizer is the torus.
  Matrix generator;
  std::uint64_t tori_tested = 0;
  std::string descriptor;
};

namespace detail {

using Poly = std::vector<Elem>;  // ascending coefficients

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(const FiniteField& f, Poly a, const Poly& b) {
  trim(a);
  const Elem lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const Elem c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    trim(a);
  }
  return a;
}

inline Poly poly_gcd(const FiniteField& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// det(x I - g) for n <= 3.
inline Poly characteristic_polynomial(const FiniteField& f, const Matrix& g) {
  const unsigned n = g.n;
  Elem tr = 0;
  for (unsigned i = 0; i < n; ++i) tr = f.add(tr, g(i, i));
  if (n == 1) return {f.neg(g(0, 0)), 1};
  const Elem d = ff::det(f, g);
  if (n == 2) return {d, f.neg(tr), 1};
  Elem c2 = 0;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) c2 = f.add(c2, f.sub(f.mul(g(i, i), g(j, j)), f.mul(g(i, j), g(j, i))));
  if (n == 3) return {f.neg(d), c2, f.neg(tr), 1};
  fail(ErrorKind::BadParams, "characteristic polynomial supports n <= 3");
}

inline Poly derivative(const FiniteField& f, const Poly& a) {
  Poly out;
  for (std::size_t i = 1; i < a.size(); ++i) {
    Elem c = 0;
    for (std::size_t k = 0; k < i; ++k) c = f.add(c, a[i]);
    out.push_back(c);
  }
  trim(out);
  return out;
}

/// Invertible with squarefree characteristic polynomial.
inline bool regular_semisimple(const FiniteField& f, const Matrix& g) {
  if (ff::det(f, g) == 0) return false;
  const Poly chi = characteristic_polynomial(f, g);
  const Poly d = derivative(f, chi);
  if (d.empty()) return false;
  return poly_gcd(f, chi, d).size() == 1;
}

/// Row-reduced basis of span{I, g, ..., g^{n-1}}; identifies the centralizer torus.
inline std::vector<Elem> algebra_key(const FiniteField& f, const Matrix& g) {
  const unsigned n = g.n;
  const unsigned len = n * n;
  std::vector<std::vector<Elem>> rows;
  Matrix pw = Matrix::identity(n);
  for (unsigned i = 0; i < n; ++i) {
    rows.push_back(pw.a);
    pw = ff::mul(f, pw, g);
  }
  unsigned r = 0;
  for (unsigned c = 0; c < len && r < rows.size(); ++c) {
    unsigned piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const Elem inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (unsigned i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Elem factor = rows[i][c];
      for (unsigned j = 0; j < len; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
    }
    ++r;
  }
  std::vector<Elem> key;
  for (const auto& row : rows) key.insert(key.end(), row.begin(), row.end());
  return key;
}

inline bool commute(const FiniteField& f, const Matrix& a, const Matrix& b) { return ff::mul(f, a, b) == ff::mul(f, b, a); }

}  // namespace detail

/// sigma tau sigma^{-1} = tau^q.
inline bool satisfies_metacyclic_relation(const FiniteField& f, const SigmaAction& sigma, const Matrix& tau, std::uint64_t q) {
  const Matrix m_inv = ff::inverse_or_throw(f, sigma.matrix);
  return apply_sigma(f, sigma, m_inv, tau) == ff::power(f, tau, q);
}

/// Looks for a maximal torus of GL_n over F_{q^k}, k <= k_max, stable under
/// conjugation by tau and under sigma. Not finding one is inconclusive.
inline CommonTorusResult search_common_torus(unsigned n, unsigned q_field, const SigmaAction& sigma, const Matrix& tau,
                                             unsigned k_max, std::optional<std::uint64_t> q_relation = std::nullopt) {
  if (n == 0 || n > 3) fail(ErrorKind::BadParams, "oracle supports 1 <= n <= 3");
  if (sigma.matrix.n != n || tau.n != n) fail(ErrorKind::DimensionMismatch, "sigma and tau must be n x n");
  const FiniteField base(q_field);
  if (ff::det(base, tau) == 0 || ff::det(base, sigma.matrix) == 0) fail(ErrorKind::HypothesisViolation, "sigma and tau must be invertible");
  const auto order = ff::matrix_order(base, tau);
  if (!order || *order % base.characteristic() == 0)
    fail(ErrorKind::HypothesisViolation, "tau has order divisible by p");
  if (!satisfies_metacyclic_relation(base, sigma, tau, q_relation.value_or(q_field)))
    fail(ErrorKind::HypothesisViolation, "sigma tau sigma^-1 != tau^q");

  CommonTorusResult res;
  std::uint64_t big_q = 1;
  for (unsigned k = 1; k <= k_max; ++k) {
    big_q *= q_field;
    if (big_q > FiniteField::max_order) break;
    std::uint64_t cells = 1;
    for (unsigned i = 0; i < n * n; ++i) {
      cells *= big_q;
      if (cells > 100'000'000) break;
    }
    if (cells > 100'000'000) break;
    const FiniteField big(static_cast<unsigned>(big_q));
    const ff::Embedding emb(base, big);
    auto lift = [&](const Matrix& x) { return ff::map_entries(x, [&](Elem a) { return emb(a); }); };
    const Matrix tau_big = lift(tau);
    const Matrix tau_inv = ff::inverse_or_throw(big, tau_big);
    SigmaAction sigma_big{lift(sigma.matrix), sigma.frobenius_power, sigma.transpose_inverse};
    const Matrix sigma_inv = ff::inverse_or_throw(big, sigma_big.matrix);
    std::set<std::vector<Elem>> seen;
    Matrix g(n);
    for (;;) {
      if (detail::regular_semisimple(big, g)) {
        auto key = detail::algebra_key(big, g);
        if (seen.insert(std::move(key)).second) {
          ++res.tori_tested;
          const Matrix t_img = ff::mul(big, ff::mul(big, tau_big, g), tau_inv);
          if (detail::commute(big, g, t_img) && detail::commute(big, g, apply_sigma(big, sigma_big, sigma_inv, g))) {
            res.found = true;
            res.k = k;
            res.generator = g;
            res.descriptor = "centralizer of " + ff::to_string(g) + " over F_" + std::to_string(big_q);
            return res;
          }
        }
      }
      std::size_t i = g.a.size();
      while (i-- > 0) {
        if (++g.a[i] < big_q) break;
        g.a[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  res.descriptor = "inconclusive up to k = " + std::to_string(k_max);
  return res;
}

struct MetacyclicPair {
  SigmaAction sigma;
  Matrix tau;
  std::string construction;
};

/// Pairs satisfying the hypothesis by construction: tau lies in a torus T
/// defined over F_q (split diagonal or the centralizer of an elliptic element)
/// and sigma normalizes T and satisfies the relation exactly.
inline std::vector<MetacyclicPair> sample_metacyclic_pairs(unsigned q_field, std::size_t count, std::uint64_t seed) {
  const FiniteField f(q_field);
  const unsigned n = 2;
  const std::vector<Matrix> group = ff::general_linear_group(f, n);
  // elliptic element: companion matrix of an irreducible quadratic
  std::optional<Matrix> elliptic;
  for (const auto& g : group) {
    if (g(0, 0) != 0 || g(1, 0) != f.one()) continue;
    const detail::Poly chi = detail::characteristic_polynomial(f, g);
    bool has_root = false;
    for (Elem x = 0; x < q_field && !has_root; ++x) {
      Elem v = f.add(f.add(chi[0], f.mul(chi[1], x)), f.mul(x, x));
      has_root = v == 0;
    }
    if (!has_root) {
      elliptic = g;
      break;
    }
  }
  struct Family {
    std::string name;
    std::vector<Matrix> torus;
    std::vector<Matrix> normalizer;
  };
  std::vector<Family> families;
  for (int split = 1; split >= 0; --split) {
    if (!split && !elliptic) continue;
    Family fam;
    fam.name = split ? "split" : "elliptic";
    const Matrix xi = split ? ff::diagonal({f.one(), f.generator()}) : *elliptic;
    for (const auto& g : group) {
      if (split ? ff::is_diagonal(g) : detail::commute(f, g, xi)) fam.torus.push_back(g);
      const Matrix conj = ff::mul(f, ff::mul(f, g, xi), ff::inverse_or_throw(f, g));
      if (detail::commute(f, conj, xi)) fam.normalizer.push_back(g);
    }
    families.push_back(std::move(fam));
  }
  std::mt19937_64 rng(seed);
  std::vector<MetacyclicPair> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 100000 * (count + 1)) fail(ErrorKind::HypothesisViolation, "could not sample enough pairs");
    const Family& fam = families[rng() % families.size()];
    const Matrix& tau = fam.torus[rng() % fam.torus.size()];
    const Matrix& sig = fam.normalizer[rng() % fam.normalizer.size()];
    SigmaAction sigma = SigmaAction::inner(sig);
    if (!satisfies_metacyclic_relation(f, sigma, tau, q_field)) continue;
    out.push_back({std::move(sigma), tau, fam.name});
  }
  return out;
}

namespace detail {

__extension__ typedef __int128 Wide;

inline long long mulmod(long long a, long long b, long long m) { return static_cast<long long>(static_cast<Wide>(a) * b % m); }

inline long long inverse_mod_prime(long long a, long long l) {
  long long out = 1, base = a % l, e = l - 2;
  while (e > 0) {
    if (e & 1) out = mulmod(out, base, l);
    base = mulmod(base, base, l);
    e >>= 1;
  }
  return out;
}

/// Every t in F_l^r with A t = b, by row reduction over the prime field.
inline std::vector<std::vector<long long>> affine_solutions(std::vector<long long> a, std::vector<long long> b, std::size_t r,
                                                           long long l, std::uint64_t cap) {
  for (auto& x : a) x = ((x % l) + l) % l;
  for (auto& x : b) x = ((x % l) + l) % l;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < r && row < r; ++c) {
    std::size_t piv = row;
    while (piv < r && a[piv * r + c] == 0) ++piv;
    if (piv == r) continue;
    for (std::size_t j = 0; j < r; ++j) std::swap(a[piv * r + j], a[row * r + j]);
    std::swap(b[piv], b[row]);
    const long long inv = inverse_mod_prime(a[row * r + c], l);
    for (std::size_t j = 0; j < r; ++j) a[row * r + j] = mulmod(a[row * r + j], inv, l);
    b[row] = mulmod(b[row], inv, l);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || a[i * r + c] == 0) continue;
      const long long f = a[i * r + c];
      for (std::size_t j = 0; j < r; ++j) a[i * r + j] = ((a[i * r + j] - mulmod(f, a[row * r + j], l)) % l + l) % l;
      b[i] = ((b[i] - mulmod(f, b[row], l)) % l + l) % l;
    }
    pivots.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < r; ++i)
    if (b[i] != 0) return {};
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < r; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.push_back(c);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (count > cap / static_cast<std::uint64_t>(l)) fail(ErrorKind::SearchSpaceExceeded, "kernel modulo " + std::to_string(l) + " is too large");
    count *= static_cast<std::uint64_t>(l);
  }
  std::vector<std::vector<long long>> out;
  std::vector<long long> digits(free.size(), 0);
  for (;;) {
    std::vector<long long> t(r, 0);
    for (std::size_t i = 0; i < free.size(); ++i) t[free[i]] = digits[i];
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      long long v = b[i];
      for (std::size_t k = 0; k < free.size(); ++k) v = ((v - mulmod(a[i * r + free[k]], digits[k], l)) % l + l) % l;
      t[pivots[i]] = v;
    }
    out.push_back(std::move(t));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == l) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

/// Number of y in (Z/l^k)^r with A y = 0 mod l^k, listing solutions one l-adic digit at a time.
inline std::uint64_t local_kernel_size(const std::vector<long long>& a, std::size_t r, long long l, unsigned k, std::uint64_t cap) {
  std::vector<std::vector<long long>> sols{std::vector<long long>(r, 0)};
  long long lj = 1;
  for (unsigned j = 0; j < k; ++j) {
    std::vector<std::vector<long long>> next;
    for (const auto& y : sols) {
      std::vector<long long> rhs(r);
      for (std::size_t i = 0; i < r; ++i) {
        Wide s = 0;
        for (std::size_t c = 0; c < r; ++c) s += static_cast<Wide>(a[i * r + c]) * y[c];
        rhs[i] = static_cast<long long>((-(s / lj)) % l);
      }
      for (const auto& t : affine_solutions(a, rhs, r, l, cap)) {
        std::vector<long long> z = y;
        for (std::size_t c = 0; c < r; ++c) z[c] += lj * t[c];
        next.push_back(std::move(z));
        if (next.size() > cap) fail(ErrorKind::SearchSpaceExceeded, "too many fixed points to list");
      }
    }
    sols = std::move(next);
    lj *= l;
  }
  return sols.size();
}

/// Prime factorization by trial division.
inline std::vector<std::pair<long long, unsigned>> factor(long long d) {
  std::vector<std::pair<long long, unsigned>> out;
  for (long long l = 2; l * l <= d; ++l) {
    if (d % l) continue;
    unsigned k = 0;
    while (d % l == 0) {
      d /= l;
      ++k;
    }
    out.emplace_back(l, k);
  }
  if (d > 1) out.emplace_back(d, 1);
  return out;
}

}  // namespace detail

/// Fixed points of q^n pi^{-n} on X tensor Q_{p'}/Z, counted on the grid (1/D)Z^r / Z^r
/// with D = q^{n ord(pi)} - 1, which contains all of them. Small grids are scanned
/// point by point; larger ones are split over the prime powers of D and the
/// fixed points modulo each are listed digit by digit.
inline std::uint64_t brute_point_count(const FiniteFieldTorus& t, unsigned n, std::uint64_t bound = 10'000'000) {
  if (n == 0) fail(ErrorKind::BadParams, "n must be positive");
  const std::size_t r = t.rank;
  if (r > 3) fail(ErrorKind::BadParams, "oracle supports rank <= 3");
  if (r == 0) return 1;
  const auto ord = matrix_order(t.pi);
  if (!ord) fail(ErrorKind::InfiniteOrder, "pi has infinite order");
  const long long qn = to_i64(pow(t.q, n));
  const Int big_d = pow(t.q, n * *ord) - 1;
  Int space = pow(big_d, static_cast<unsigned>(r));
  const long long d = to_i64(big_d);
  const IntMatrix m = IntMatrix::scalar(r, Int(qn)) - t.pi.power(n);
  if (space > bound) {
    std::vector<long long> exact(r * r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) exact[i * r + j] = to_i64(m(i, j));
    std::uint64_t count = 1;
    for (auto [l, k] : detail::factor(d)) {
      count *= detail::local_kernel_size(exact, r, l, k, bound);
      if (count > bound) fail(ErrorKind::SearchSpaceExceeded, "more than " + std::to_string(bound) + " fixed points");
    }
    return count;
  }
  std::vector<long long> a(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a[i * r + j] = to_i64(mod(m(i, j), Int(d)));
  const std::uint64_t total = static_cast<std::uint64_t>(to_i64(space));
  const unsigned workers = std::max(1u, std::min<unsigned>(thread_count(), static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
  std::vector<std::uint64_t> counts(workers, 0);
  auto work = [&](unsigned id) {
    std::vector<long long> y(r);
    for (std::uint64_t idx = id; idx < total; idx += workers) {
      std::uint64_t rest = idx;
      for (std::size_t k = 0; k < r; ++k) {
        y[k] = static_cast<long long>(rest % static_cast<std::uint64_t>(d));
        rest /= static_cast<std::uint64_t>(d);
      }
      bool fixed = true;
      for (std::size_t i = 0; i < r && fixed; ++i) {
        detail::Wide s = 0;
        for (std::size_t j = 0; j < r; ++j) s += static_cast<detail::Wide>(a[i * r + j]) * y[j];
        fixed = s % d == 0;
      }
      if (fixed) ++counts[id];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& th : pool) th.join();
  }
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

}  // namespace tame::oracle
