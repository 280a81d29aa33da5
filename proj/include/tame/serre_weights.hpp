#pragma once

// Serre-weight combinatorics on the reductive quotient: restricted boxes,
// reduction into X_r, regularity, the reflection operator R and the
// symbolic weight recipe attached to a tame inertial type.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tame/dl_correspondence.hpp"

namespace tame {

struct SerreWeight {
  IntVector lambda;
  unsigned r = 1;
  bool regular = false;

  friend bool operator==(const SerreWeight&, const SerreWeight&) = default;
};

enum class Fiber { Generic, Special };

/// Data of the reductive quotient needed by every weight computation.
struct SerreContext {
  InertialFrame frame;
  /// Frobenius on X^*(T_bar).
  IntMatrix pi;
  Int p;
  /// q = p^r_default.
  unsigned r_default = 1;
  IntMatrix w0;
  /// Rows are simple coroots of the quotient.
  IntMatrix pairing;
  /// Columns span X^0.
  IntMatrix x0;
  bool simply_connected = false;
  /// Fundamental weights, reduced modulo X^0; empty unless simply_connected.
  std::vector<IntVector> fundamental;

  const BasedRootDatum& datum() const { return frame.quotient; }
  std::size_t rank() const { return frame.tf_rank(); }
  std::size_t simple_count() const { return datum().semisimple_rank(); }
  IntVector pairings(const IntVector& lambda) const { return pairing * lambda; }
};

inline SerreContext make_serre_context(const InertialFrame& fr) {
  SerreContext c;
  c.frame = fr;
  c.pi = fr.frobenius_tf;
  c.p = fr.p();
  Int q = fr.q();
  unsigned r = 0;
  while (q > 1) {
    q /= c.p;
    ++r;
  }
  c.r_default = std::max(1u, r);
  c.w0 = fr.tf_rank() == 0 ? IntMatrix() : fr.weyl_tf[fr.longest_weyl()];
  c.pairing = fr.quotient.simple_coroot_pairing();
  c.x0 = fr.quotient.orthogonal_lattice();
  const std::size_t s = fr.quotient.semisimple_rank();
  if (s == 0) {
    c.simply_connected = true;
    return c;
  }
  const SnfResult snf = smith_normal_form(c.pairing);
  c.simply_connected = snf.rank() == s && std::all_of(snf.invariant_factors.begin(), snf.invariant_factors.begin() + s,
                                                      [](const Int& d) { return d == 1; });
  if (c.simply_connected) {
    for (std::size_t i = 0; i < s; ++i) {
      IntVector e(s);
      e[i] = 1;
      c.fundamental.push_back(reduce_modulo_lattice(*solve_integer(c.pairing, e), c.x0));
    }
  }
  return c;
}

inline SerreContext make_serre_context(const TameGroupSpec& spec) { return make_serre_context(make_frame(spec)); }

namespace detail {

inline IntMatrix stack(const std::vector<IntMatrix>& blocks, std::size_t cols) {
  std::vector<IntVector> rows;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.rows(); ++i) rows.push_back(b.row(i));
  return IntMatrix::from_rows(rows, cols);
}

inline IntVector ones_then_zeros(std::size_t ones, std::size_t total) {
  IntVector v(total);
  for (std::size_t i = 0; i < ones; ++i) v[i] = 1;
  return v;
}

}  // namespace detail

/// Frobenius-fixed eta with <eta, alpha^vee> = 1 on every simple coroot.
/// Special fiber: on the quotient datum. Generic fiber: on the full datum,
/// fixed by frobenius and inertia, then restricted to X^*(T_bar).
/// The representative is reduced against the solution lattice from the last coordinate.
inline IntVector twisting_element(const SerreContext& c, Fiber which) {
  const InertialFrame& fr = c.frame;
  if (which == Fiber::Special) {
    const std::size_t f = c.rank();
    const IntMatrix m = detail::stack({c.pairing, c.pi - IntMatrix::identity(f)}, f);
    auto sol = solve_integer(m, detail::ones_then_zeros(c.pairing.rows(), m.rows()));
    if (!sol) fail(ErrorKind::NoTwistingElement, "no Frobenius-fixed twisting element on the reductive quotient");
    return reduce_modulo_lattice(*sol, integer_kernel(m));
  }
  const TameGroupSpec& spec = fr.spec;
  const std::size_t n = spec.rank();
  const IntMatrix id = IntMatrix::identity(n);
  const IntMatrix full = spec.datum.simple_coroot_pairing();
  const IntMatrix m = detail::stack({full, spec.frobenius.matrix - id, spec.inertia.matrix - id}, n);
  auto sol = solve_integer(m, detail::ones_then_zeros(full.rows(), m.rows()));
  if (!sol) fail(ErrorKind::NoTwistingElement, "no Galois-fixed twisting element for " + spec.name);
  return reduce_modulo_lattice(fr.projection * *sol, fr.projection * integer_kernel(m));
}

inline IntVector twisting_element(const TameGroupSpec& spec, Fiber which) {
  return twisting_element(make_serre_context(spec), which);
}

/// Pairings in [0, p^r) on every simple coroot.
inline bool in_restricted_box(const SerreContext& c, const IntVector& lambda, unsigned r) {
  const Int bound = pow(c.p, r);
  for (const auto& n : c.pairings(lambda))
    if (n < 0 || n >= bound) return false;
  return true;
}

/// Pairings in [0, p - 1); only defined for r = 1.
inline bool is_regular_weight(const SerreContext& c, const IntVector& lambda) {
  for (const auto& n : c.pairings(lambda))
    if (n < 0 || n >= c.p - 1) return false;
  return true;
}

inline SerreWeight make_weight(const SerreContext& c, IntVector lambda, unsigned r) {
  if (lambda.size() != c.rank()) fail(ErrorKind::DimensionMismatch, "weight has the wrong dimension");
  if (!in_restricted_box(c, lambda, r)) fail(ErrorKind::BadParams, to_string(lambda) + " is not p^r-restricted");
  const bool reg = r == 1 && is_regular_weight(c, lambda);
  return {std::move(lambda), r, reg};
}

/// (p^r - pi) x.
inline IntVector frobenius_shift(const SerreContext& c, unsigned r, const IntVector& x) {
  return scale(pow(c.p, r), x) - c.pi * x;
}

/// Element of X_r congruent to lambda modulo (p^r - pi) X^*.
inline SerreWeight restricted_representative(const SerreContext& c, IntVector lambda, unsigned r) {
  if (!c.simply_connected) fail(ErrorKind::NotSimplyConnected, "derived subgroup of the reductive quotient is not simply connected");
  if (r == 0) fail(ErrorKind::BadParams, "restriction exponent must be positive");
  if (lambda.size() != c.rank()) fail(ErrorKind::DimensionMismatch, "weight has the wrong dimension");
  const std::size_t s = c.simple_count();
  if (s == 0) return make_weight(c, std::move(lambda), r);
  const Int pr = pow(c.p, r);
  IntVector rho(c.rank());
  for (const auto& w : c.fundamental) rho = rho + w;
  // dominance: each step raises every pairing by p^r - 1
  Int low = 0;
  for (const auto& n : c.pairings(lambda)) low = std::min(low, n);
  if (low < 0) {
    const Int steps = floor_div(-low + pr - 2, pr - 1);
    lambda = lambda + scale(steps, frobenius_shift(c, r, rho));
  }
  for (;;) {
    const IntVector n = c.pairings(lambda);
    std::size_t beta = s;
    for (std::size_t i = 0; i < s; ++i)
      if (n[i] >= pr) {
        beta = i;
        break;
      }
    if (beta == s) break;
    const Int carry = n[beta] / pr;
    lambda = lambda - scale(carry, frobenius_shift(c, r, c.fundamental[beta]));
  }
  return make_weight(c, std::move(lambda), r);
}

/// a - b in (p^r - pi) X^0.
inline bool weights_equivalent(const SerreContext& c, const SerreWeight& a, const SerreWeight& b) {
  if (a.r != b.r) fail(ErrorKind::BadParams, "weights have different restriction exponents");
  const IntVector diff = a.lambda - b.lambda;
  if (is_zero(diff)) return true;
  if (c.x0.cols() == 0) return false;
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < c.x0.cols(); ++j) cols.push_back(frobenius_shift(c, a.r, c.x0.col(j)));
  return in_lattice(IntMatrix::from_columns(cols, c.rank()), diff);
}

inline bool is_regular(const SerreContext& c, const SerreWeight& s) {
  if (s.r != 1) fail(ErrorKind::BadParams, "regularity is defined for r = 1");
  return is_regular_weight(c, s.lambda);
}

/// w . lambda = w(lambda + eta) - eta.
inline IntVector dot_action(const IntMatrix& w, const IntVector& eta, const IntVector& lambda) {
  return w * (lambda + eta) - eta;
}

/// L(mu) -> L(w0 . (mu - p eta)), reduced back into X_1.
inline SerreWeight herzig_R(const SerreContext& c, const SerreWeight& s) {
  if (!is_regular(c, s)) fail(ErrorKind::NotRegular, to_string(s.lambda) + " is not regular");
  const IntVector eta = twisting_element(c, Fiber::Special);
  const IntVector shifted = dot_action(c.w0, eta, s.lambda - scale(c.p, eta));
  return restricted_representative(c, shifted, s.r);
}

/// Representatives of X_r / (p^r - pi) X^0: every pairing vector in [0, p^r)^S
/// combined with every class of X^0 / (p^r - pi) X^0.
inline std::vector<SerreWeight> restricted_box(const SerreContext& c, unsigned r) {
  if (!c.simply_connected) fail(ErrorKind::NotSimplyConnected, "derived subgroup of the reductive quotient is not simply connected");
  const std::size_t s = c.simple_count();
  const Int pr = pow(c.p, r);
  std::vector<IntVector> central{IntVector(c.rank())};
  const std::size_t k = c.x0.cols();
  if (k > 0) {
    // pi restricted to X^0 in the basis x0
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < k; ++j) cols.push_back(*solve_integer(c.x0, c.pi * c.x0.col(j)));
    const IntMatrix pi0 = IntMatrix::from_columns(cols, k);
    const FiniteAbelianPresentation coker = cokernel_structure(IntMatrix::scalar(k, pr) - pi0);
    if (coker.free_rank != 0) fail(ErrorKind::SingularMatrix, "p^r - pi is singular on X^0");
    central.clear();
    const std::size_t t = coker.torsion_count();
    IntVector digits(t);
    for (;;) {
      central.push_back(c.x0 * (coker.section * digits));
      std::size_t i = 0;
      while (i < t && ++digits[i] == coker.invariant_factors[i]) digits[i++] = 0;
      if (i == t) break;
    }
  }
  std::vector<SerreWeight> out;
  IntVector n(s);
  for (;;) {
    IntVector base(c.rank());
    for (std::size_t i = 0; i < s; ++i) base = base + scale(n[i], c.fundamental[i]);
    for (const auto& z : central) out.push_back(make_weight(c, base + z, r));
    std::size_t i = 0;
    while (i < s && ++n[i] == pr) n[i++] = 0;
    if (i == s) break;
  }
  return out;
}

inline std::vector<SerreWeight> regular_box(const SerreContext& c) {
  std::vector<SerreWeight> out;
  for (auto& w : restricted_box(c, 1))
    if (w.regular) out.push_back(std::move(w));
  return out;
}

/// Evaluates the Jordan-Holder slot: given a presentation of DL^{-1}(tau) and
/// the twist weight, returns the constituents of the reduced induction.
using JordanHolderOracle = std::function<std::vector<SerreWeight>(const HerzigPresentation&, const IntVector&)>;

struct RecipeExpression {
  DLPacket dl_part;
  /// w0 (eta_special - eta_generic) in X^*(T_bar).
  IntVector twist_weight;
  std::string jh_hook = "jordan_holder";
  std::vector<std::string> tags;

  bool has_tag(const std::string& t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }
};

inline RecipeExpression serre_recipe(const SerreContext& c, const TameInertialType& t) {
  if (!c.simply_connected) fail(ErrorKind::NotSimplyConnected, "derived subgroup of the reductive quotient is not simply connected");
  const IntVector generic = twisting_element(c, Fiber::Generic);
  const IntVector special = twisting_element(c, Fiber::Special);
  RecipeExpression out;
  out.dl_part = dl_inverse(c.frame, t);
  out.twist_weight = c.rank() == 0 ? IntVector{} : c.w0 * (special - generic);
  if (is_zero(out.twist_weight)) out.tags.push_back("GHS-degenerate");
  if (c.frame.spec.e > 1) out.tags.push_back("ramified");
  return out;
}

/// Applies R to every regular constituent the oracle reports, in oracle order.
inline std::vector<SerreWeight> evaluate_recipe(const SerreContext& c, const RecipeExpression& expr,
                                                const JordanHolderOracle& oracle) {
  std::vector<SerreWeight> out;
  for (const auto& hp : expr.dl_part.presentations)
    for (const auto& w : oracle(hp, expr.twist_weight))
      if (w.r == 1 && is_regular(c, w)) out.push_back(herzig_R(c, w));
  return out;
}

}  // namespace tame
