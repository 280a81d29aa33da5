#pragma once

// Based root data, Weyl groups, pinned automorphisms and the tame Galois
// datum (frobenius, inertia) that defines a quasi-split tame group.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tame/lattice.hpp"

namespace tame {

/// (X^*, roots, X_*, coroots) with a chosen base. X^* and X_* are both Z^rank,
/// paired by the dot product.
struct BasedRootDatum {
  std::size_t rank = 0;
  std::vector<IntVector> roots;
  std::vector<IntVector> coroots;
  std::vector<std::size_t> simple;

  std::size_t semisimple_rank() const { return simple.size(); }
  const IntVector& simple_root(std::size_t i) const { return roots[simple[i]]; }
  const IntVector& simple_coroot(std::size_t i) const { return coroots[simple[i]]; }

  std::optional<std::size_t> find_root(const IntVector& v) const {
    auto it = std::find(roots.begin(), roots.end(), v);
    if (it == roots.end()) return std::nullopt;
    return static_cast<std::size_t>(it - roots.begin());
  }

  /// s_alpha on X^*: x -> x - <x, alpha^vee> alpha.
  IntMatrix reflection(std::size_t root) const {
    IntMatrix m = IntMatrix::identity(rank);
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) m(i, j) -= roots[root][i] * coroots[root][j];
    return m;
  }

  IntMatrix simple_reflection(std::size_t i) const { return reflection(simple[i]); }

  /// C(i, j) = <alpha_j, alpha_i^vee>.
  IntMatrix cartan_matrix() const {
    const std::size_t s = simple.size();
    IntMatrix c(s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) c(i, j) = dot(simple_root(j), simple_coroot(i));
    return c;
  }

  /// Columns are the simple roots.
  IntMatrix simple_root_matrix() const {
    std::vector<IntVector> cols;
    for (std::size_t i = 0; i < simple.size(); ++i) cols.push_back(simple_root(i));
    return IntMatrix::from_columns(cols, rank);
  }

  /// Rows are the simple coroots; multiplying a weight gives its pairings.
  IntMatrix simple_coroot_pairing() const {
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < simple.size(); ++i) rows.push_back(simple_coroot(i));
    return IntMatrix::from_rows(rows, rank);
  }

  /// Coefficients of a root in the simple roots.
  std::optional<IntVector> simple_coefficients(const IntVector& beta) const {
    if (simple.empty()) return std::nullopt;
    return solve_integer(simple_root_matrix(), beta);
  }

  bool is_positive(std::size_t root) const {
    auto c = simple_coefficients(roots[root]);
    return c && std::all_of(c->begin(), c->end(), [](const Int& x) { return x >= 0; });
  }

  /// Basis (columns) of X^0 = { x in X^* : <x, alpha^vee> = 0 for all roots }.
  IntMatrix orthogonal_lattice() const {
    if (simple.empty()) return IntMatrix::identity(rank);
    return integer_kernel(simple_coroot_pairing());
  }

  /// Simply connected datum in the weight basis from a Cartan matrix C(i,j) = <alpha_j, alpha_i^vee>.
  static BasedRootDatum from_cartan(const IntMatrix& cartan);

  friend bool operator==(const BasedRootDatum&, const BasedRootDatum&) = default;
};

inline BasedRootDatum BasedRootDatum::from_cartan(const IntMatrix& cartan) {
  const std::size_t s = cartan.rows();
  BasedRootDatum d;
  d.rank = s;
  for (std::size_t j = 0; j < s; ++j) {
    d.roots.push_back(cartan.col(j));
    IntVector e(s);
    e[j] = 1;
    d.coroots.push_back(e);
    d.simple.push_back(j);
  }
  // close under simple reflections
  for (std::size_t k = 0; k < d.roots.size(); ++k) {
    for (std::size_t i = 0; i < s; ++i) {
      const IntVector& a = d.roots[i];
      const IntVector& av = d.coroots[i];
      IntVector beta = d.roots[k] - scale(dot(d.roots[k], av), a);
      IntVector betav = d.coroots[k] - scale(dot(a, d.coroots[k]), av);
      if (!d.find_root(beta)) {
        d.roots.push_back(std::move(beta));
        d.coroots.push_back(std::move(betav));
      }
      if (d.roots.size() > 10000) fail(ErrorKind::BadPairing, "Cartan matrix does not define a finite root system");
    }
  }
  return d;
}

inline BasedRootDatum dual(const BasedRootDatum& d) {
  BasedRootDatum out = d;
  std::swap(out.roots, out.coroots);
  return out;
}

inline BasedRootDatum torus_datum(std::size_t rank) {
  BasedRootDatum d;
  d.rank = rank;
  return d;
}

inline BasedRootDatum gl_datum(std::size_t n) {
  BasedRootDatum d;
  d.rank = n;
  auto e = [n](std::size_t i, std::size_t j) {
    IntVector v(n);
    v[i] = 1;
    v[j] = -1;
    return v;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d.roots.push_back(e(i, i + 1));
    d.coroots.push_back(e(i, i + 1));
    d.simple.push_back(d.roots.size() - 1);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && j != i + 1) {
        d.roots.push_back(e(i, j));
        d.coroots.push_back(e(i, j));
      }
  return d;
}

/// Cartan matrix of type A_{n}.
inline IntMatrix cartan_a(std::size_t n) {
  IntMatrix c = IntMatrix::scalar(n, 2);
  for (std::size_t i = 0; i + 1 < n; ++i) c(i, i + 1) = c(i + 1, i) = -1;
  return c;
}

inline BasedRootDatum direct_sum(const BasedRootDatum& a, const BasedRootDatum& b) {
  BasedRootDatum d;
  d.rank = a.rank + b.rank;
  auto embed = [&](const IntVector& v, std::size_t offset) {
    IntVector out(d.rank);
    for (std::size_t i = 0; i < v.size(); ++i) out[offset + i] = v[i];
    return out;
  };
  for (std::size_t i : a.simple) d.simple.push_back(i);
  for (std::size_t i : b.simple) d.simple.push_back(a.roots.size() + i);
  for (std::size_t i = 0; i < a.roots.size(); ++i) {
    d.roots.push_back(embed(a.roots[i], 0));
    d.coroots.push_back(embed(a.coroots[i], 0));
  }
  for (std::size_t i = 0; i < b.roots.size(); ++i) {
    d.roots.push_back(embed(b.roots[i], a.rank));
    d.coroots.push_back(embed(b.coroots[i], a.rank));
  }
  return d;
}

/// Lattice automorphism of X^* preserving the based root datum.
struct PinnedAutomorphism {
  IntMatrix matrix;
  /// matrix * (simple root i) = simple root simple_permutation[i].
  std::vector<std::size_t> simple_permutation;

  /// Induced action on X_* (inverse transpose).
  IntMatrix coaction() const { return inverse_unimodular(matrix).transpose(); }

  friend bool operator==(const PinnedAutomorphism&, const PinnedAutomorphism&) = default;
};

/// Empty optional when `m` does not preserve the pinning.
inline std::optional<PinnedAutomorphism> try_pin(const BasedRootDatum& d, const IntMatrix& m) {
  if (m.rows() != d.rank || m.cols() != d.rank) return std::nullopt;
  if (d.rank > 0 && abs(m.determinant()) != 1) return std::nullopt;
  PinnedAutomorphism a{m, {}};
  const IntMatrix co = d.rank > 0 ? a.coaction() : IntMatrix();
  for (std::size_t i = 0; i < d.simple.size(); ++i) {
    IntVector img = m * d.simple_root(i);
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < d.simple.size(); ++j)
      if (d.simple_root(j) == img) hit = j;
    if (!hit || co * d.simple_coroot(i) != d.simple_coroot(*hit)) return std::nullopt;
    a.simple_permutation.push_back(*hit);
  }
  for (std::size_t r = 0; r < d.roots.size(); ++r) {
    auto img = d.find_root(m * d.roots[r]);
    if (!img || co * d.coroots[r] != d.coroots[*img]) return std::nullopt;
  }
  return a;
}

inline PinnedAutomorphism pin(const BasedRootDatum& d, const IntMatrix& m) {
  auto a = try_pin(d, m);
  if (!a) fail(ErrorKind::NotPinned, "matrix " + m.str() + " does not permute the simple roots");
  return *a;
}

/// Combinatorial shell of a quasi-split tame group: root datum of G (so X^* is
/// X_* of the dual torus) with the images of Frobenius and of a tame inertia
/// generator acting on it.
struct TameGroupSpec {
  std::string name;
  BasedRootDatum datum;
  PinnedAutomorphism frobenius;
  PinnedAutomorphism inertia;
  Int p = 0;
  Int q = 0;
  unsigned e = 1;

  std::size_t rank() const { return datum.rank; }
  friend bool operator==(const TameGroupSpec&, const TameGroupSpec&) = default;
};

/// Words use 1-based simple reflection labels (s1, s2, ...).
using WeylWord = std::vector<unsigned>;

inline std::string word_string(const WeylWord& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " s" : "s") + std::to_string(w[i]);
  return s;
}

/// Parses "s1 s2", "s1s2", "1 2" or "e"/"" for the identity.
inline WeylWord parse_word(const std::string& text) {
  WeylWord w;
  std::string digits;
  auto flush = [&] {
    if (!digits.empty()) w.push_back(static_cast<unsigned>(std::stoul(digits)));
    digits.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)))
      digits += c;
    else if (c == 's' || c == ' ' || c == ',' || c == '*' || c == '.')
      flush();
    else if (c == 'e' && text.size() == 1)
      ;
    else
      fail(ErrorKind::BadParams, "cannot parse Weyl word '" + text + "'");
  }
  flush();
  for (unsigned i : w)
    if (i == 0) fail(ErrorKind::BadParams, "simple reflections are numbered from 1");
  return w;
}

/// Finite group of matrices on X^*, ordered by (word length, lexicographic word).
class WeylGroup {
 public:
  WeylGroup() = default;

  std::size_t order() const noexcept { return elements_.size(); }
  const IntMatrix& element(std::size_t i) const { return elements_[i]; }
  const WeylWord& word(std::size_t i) const { return words_[i]; }
  const std::vector<IntMatrix>& elements() const noexcept { return elements_; }

  std::optional<std::size_t> find(const IntMatrix& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const IntMatrix& m) const {
    auto i = find(m);
    if (!i) fail(ErrorKind::BadParams, "matrix is not an element of this Weyl group: " + m.str());
    return *i;
  }

  /// Index of the element with the longest word.
  std::size_t longest() const {
    std::size_t best = 0;
    for (std::size_t i = 0; i < order(); ++i)
      if (words_[i].size() > words_[best].size()) best = i;
    return best;
  }

  void add(IntMatrix m, WeylWord w) {
    index_.emplace(m, elements_.size());
    elements_.push_back(std::move(m));
    words_.push_back(std::move(w));
  }

 private:
  std::vector<IntMatrix> elements_;
  std::vector<WeylWord> words_;
  std::map<IntMatrix, std::size_t> index_;
};

/// Breadth-first generation by right multiplication with simple reflections;
/// the first word reaching an element is its shortlex-minimal reduced word.
inline WeylGroup weyl_group(const BasedRootDatum& d, std::size_t bound = 1000000) {
  WeylGroup w;
  w.add(IntMatrix::identity(d.rank), {});
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < d.semisimple_rank(); ++i) gens.push_back(d.simple_reflection(i));
  for (std::size_t k = 0; k < w.order(); ++k) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      IntMatrix m = w.element(k) * gens[g];
      if (w.find(m)) continue;
      WeylWord word = w.word(k);
      word.push_back(static_cast<unsigned>(g + 1));
      w.add(std::move(m), std::move(word));
      if (w.order() > bound) fail(ErrorKind::Explosion, "Weyl group exceeds " + std::to_string(bound) + " elements");
    }
  }
  return w;
}

/// Matrix of a word in simple reflections.
inline IntMatrix word_matrix(const BasedRootDatum& d, const WeylWord& word) {
  IntMatrix m = IntMatrix::identity(d.rank);
  for (unsigned s : word) {
    if (s == 0 || s > d.semisimple_rank()) fail(ErrorKind::BadParams, "no simple reflection s" + std::to_string(s));
    m = m * d.simple_reflection(s - 1);
  }
  return m;
}

/// { w : a w a^{-1} = w }, in the parent's canonical order.
inline WeylGroup fixed_weyl_subgroup(const WeylGroup& full, const PinnedAutomorphism& a) {
  const IntMatrix a_inv = inverse_unimodular(a.matrix);
  WeylGroup sub;
  for (std::size_t i = 0; i < full.order(); ++i)
    if (a.matrix * full.element(i) * a_inv == full.element(i)) sub.add(full.element(i), full.word(i));
  return sub;
}

inline WeylGroup fixed_weyl_subgroup(const BasedRootDatum& d, const PinnedAutomorphism& a) {
  return fixed_weyl_subgroup(weyl_group(d), a);
}

/// Checks every invariant of the datum and of the Galois pair; throws on the first failure.
inline void validate(const TameGroupSpec& spec) {
  const BasedRootDatum& d = spec.datum;
  if (d.roots.size() != d.coroots.size()) fail(ErrorKind::BadPairing, "roots and coroots are not aligned");
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    if (d.roots[i].size() != d.rank || d.coroots[i].size() != d.rank)
      fail(ErrorKind::BadPairing, "root " + std::to_string(i) + " has the wrong dimension");
    if (dot(d.roots[i], d.coroots[i]) != 2)
      fail(ErrorKind::BadPairing, "<alpha, alpha^vee> != 2 for root " + to_string(d.roots[i]));
  }
  for (std::size_t s : d.simple)
    if (s >= d.roots.size()) fail(ErrorKind::BadPairing, "simple index out of range");
  for (std::size_t i = 0; i < d.roots.size(); ++i)
    for (std::size_t j = 0; j < d.roots.size(); ++j) {
      IntVector img = d.roots[j] - scale(dot(d.roots[j], d.coroots[i]), d.roots[i]);
      IntVector coimg = d.coroots[j] - scale(dot(d.roots[i], d.coroots[j]), d.coroots[i]);
      auto k = d.find_root(img);
      if (!k || d.coroots[*k] != coimg) fail(ErrorKind::BadPairing, "reflections do not permute the roots");
    }
  if (!d.simple.empty() && smith_normal_form(d.simple_root_matrix()).rank() != d.simple.size())
    fail(ErrorKind::BadPairing, "simple roots are linearly dependent");
  for (const auto& beta : d.roots) {
    auto c = d.simple_coefficients(beta);
    if (!c) fail(ErrorKind::BadPairing, "root " + to_string(beta) + " is not an integral combination of simple roots");
    bool pos = std::all_of(c->begin(), c->end(), [](const Int& x) { return x >= 0; });
    bool neg = std::all_of(c->begin(), c->end(), [](const Int& x) { return x <= 0; });
    if (!pos && !neg) fail(ErrorKind::BadPairing, "root " + to_string(beta) + " has mixed-sign coefficients");
  }
  weyl_group(d);

  for (const auto* a : {&spec.frobenius, &spec.inertia}) {
    auto pinned = try_pin(d, a->matrix);
    if (!pinned) fail(ErrorKind::NotPinned, "automorphism " + a->matrix.str() + " does not preserve the pinning");
    if (!matrix_order(a->matrix)) fail(ErrorKind::NotPinned, "automorphism has infinite order");
  }

  if (!is_prime(spec.p)) fail(ErrorKind::BadParams, "p = " + spec.p.str() + " is not prime");
  if (!is_power_of(spec.q, spec.p)) fail(ErrorKind::BadParams, "q = " + spec.q.str() + " is not a power of p");
  const unsigned theta_order = d.rank == 0 ? 1 : *matrix_order(spec.inertia.matrix);
  if (theta_order != spec.e)
    fail(ErrorKind::BadParams, "e = " + std::to_string(spec.e) + " but inertia has order " + std::to_string(theta_order));
  if (gcd(Int(spec.e), spec.p) != 1)
    fail(ErrorKind::WildRamification, "gcd(e, p) = gcd(" + std::to_string(spec.e) + ", " + spec.p.str() + ") != 1");

  if (d.rank > 0) {
    const IntMatrix& s = spec.frobenius.matrix;
    const IntMatrix& t = spec.inertia.matrix;
    const unsigned qmod = static_cast<unsigned>(spec.q % theta_order);
    if (s * t * inverse_unimodular(s) != t.power(qmod))
      fail(ErrorKind::MetacyclicViolation, "frobenius * inertia * frobenius^-1 != inertia^q");
  }
}

/// Parameters for the built-in catalog.
struct CatalogParams {
  unsigned n = 2;
  Int q = 3;
  unsigned f = 1;
  bool ramified = false;
};

inline std::vector<std::string> catalog_names() { return {"gl", "sl", "sp4", "u", "res-gl", "res-sl"}; }

/// x -> -w0 x on the GL_n lattice: (a_1, ..., a_n) -> (-a_n, ..., -a_1).
inline IntMatrix unitary_flip(std::size_t n) {
  IntMatrix j(n, n);
  for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = -1;
  return j;
}

/// Permutes f blocks of size b cyclically: block k goes to block k+1.
inline IntMatrix block_cycle(std::size_t b, std::size_t f) {
  IntMatrix m(b * f, b * f);
  for (std::size_t k = 0; k < f; ++k)
    for (std::size_t i = 0; i < b; ++i) m(((k + 1) % f) * b + i, k * b + i) = 1;
  return m;
}

inline TameGroupSpec catalog(const std::string& name, const CatalogParams& params) {
  if (params.q < 2) fail(ErrorKind::BadParams, "q must be at least 2");
  const Int p = smallest_prime_factor(params.q);
  if (!is_power_of(params.q, p)) fail(ErrorKind::BadParams, "q = " + params.q.str() + " is not a prime power");
  const std::size_t n = params.n;
  TameGroupSpec spec;
  spec.p = p;
  spec.q = params.q;
  IntMatrix frob, inertia;
  std::ostringstream label;
  if (name == "gl") {
    if (n < 1) fail(ErrorKind::BadParams, "gl needs n >= 1");
    spec.datum = gl_datum(n);
    label << "GL" << n;
  } else if (name == "sl") {
    if (n < 2) fail(ErrorKind::BadParams, "sl needs n >= 2");
    spec.datum = BasedRootDatum::from_cartan(cartan_a(n - 1));
    label << "SL" << n;
  } else if (name == "sp4") {
    spec.datum = BasedRootDatum::from_cartan(IntMatrix{{2, -2}, {-1, 2}});
    label << "Sp4";
  } else if (name == "u") {
    if (n < 2) fail(ErrorKind::BadParams, "u needs n >= 2");
    spec.datum = gl_datum(n);
    (params.ramified ? inertia : frob) = unitary_flip(n);
    label << "U" << n << (params.ramified ? "-ramified" : "-unramified");
  } else if (name == "res-gl" || name == "res-sl") {
    if (params.f < 1) fail(ErrorKind::BadParams, "f must be at least 1");
    const bool sl = name == "res-sl";
    if (n < (sl ? 2u : 1u)) fail(ErrorKind::BadParams, "block size too small");
    BasedRootDatum block = sl ? BasedRootDatum::from_cartan(cartan_a(n - 1)) : gl_datum(n);
    BasedRootDatum d = block;
    for (unsigned k = 1; k < params.f; ++k) d = direct_sum(d, block);
    spec.datum = d;
    frob = block_cycle(block.rank, params.f);
    label << "Res" << params.f << (sl ? "SL" : "GL") << n;
  } else {
    fail(ErrorKind::UnknownGroup, "unknown catalog group '" + name + "'");
  }
  const std::size_t r = spec.datum.rank;
  if (frob.rows() == 0) frob = IntMatrix::identity(r);
  if (inertia.rows() == 0) inertia = IntMatrix::identity(r);
  spec.frobenius = pin(spec.datum, frob);
  spec.inertia = pin(spec.datum, inertia);
  spec.e = r == 0 ? 1 : *matrix_order(inertia);
  label << "(q=" << params.q << ")";
  spec.name = label.str();
  validate(spec);
  return spec;
}

}  // namespace tame
