#pragma once

// Tori over finite fields as (lattice, finite-order automorphism, q).
// Characters are stored through their avatar in X (x) Q_{p'}/Z, which is
// independent of the F_q-structure.

#include <string>

#include "tame/lattice.hpp"

namespace tame {

/// `pi` is the Frobenius twist on the character lattice; point counts use
/// |det(q^n - pi^n)|, which is the same for pi and its inverse transpose.
struct FiniteFieldTorus {
  std::size_t rank = 0;
  IntMatrix pi;
  Int q = 0;
  Int p = 0;

  static FiniteFieldTorus make(IntMatrix pi, const Int& q) {
    if (!pi.is_square()) fail(ErrorKind::DimensionMismatch, "torus automorphism must be square");
    if (!matrix_order(pi)) fail(ErrorKind::InfiniteOrder, "torus automorphism has infinite order");
    const Int p = smallest_prime_factor(q);
    if (q < 2 || !is_power_of(q, p)) fail(ErrorKind::BadParams, "q = " + q.str() + " is not a prime power");
    const std::size_t r = pi.rows();
    return {r, std::move(pi), q, p};
  }

  /// q^n - pi^n.
  IntMatrix frobenius_minus(unsigned n) const {
    return IntMatrix::scalar(rank, pow(q, n)) - pi.power(n);
  }

  friend bool operator==(const FiniteFieldTorus&, const FiniteFieldTorus&) = default;
};

struct TorusCharacter {
  FiniteFieldTorus torus;
  /// Canonical representative (q - pi) * avatar of the class of mu.
  IntVector mu;
  TorsionVector avatar;
};

/// |T(F_{q^n})| = |det(q^n - pi^n)|.
inline Int point_count(const FiniteFieldTorus& t, unsigned n) {
  if (n < 1) fail(ErrorKind::BadParams, "point_count needs n >= 1");
  if (t.rank == 0) return 1;
  return abs(t.frobenius_minus(n).determinant());
}

/// X^* / (q - pi) X^*.
inline FiniteAbelianPresentation character_group(const FiniteFieldTorus& t) {
  if (t.rank == 0) return {};
  return cokernel_structure(t.frobenius_minus(1));
}

inline TorusCharacter make_character(const FiniteFieldTorus& t, const IntVector& mu) {
  if (mu.size() != t.rank) fail(ErrorKind::DimensionMismatch, "character has the wrong dimension");
  const IntMatrix m = t.frobenius_minus(1);
  TorsionVector avatar = torsion_solve(m, mu, t.p);
  RationalVector back = m * avatar.coords();
  IntVector canon(t.rank);
  for (std::size_t i = 0; i < t.rank; ++i) canon[i] = numerator(back[i]);
  return {t, std::move(canon), std::move(avatar)};
}

/// Pullback along the norm F_{q^n} -> F_q: same avatar, Frobenius data (q^n, pi^n).
inline TorusCharacter inflate_character(const TorusCharacter& c, unsigned n) {
  if (n < 1) fail(ErrorKind::BadParams, "inflation degree must be >= 1");
  FiniteFieldTorus big{c.torus.rank, c.torus.pi.power(n), pow(c.torus.q, n), c.torus.p};
  RationalVector mu = big.frobenius_minus(1) * c.avatar.coords();
  IntVector out(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!is_integer(mu[i])) fail(ErrorKind::IntegralityFailure, "inflated character is not integral");
    out[i] = numerator(mu[i]);
  }
  return {std::move(big), std::move(out), c.avatar};
}

/// Equal as characters of X_*(T), i.e. equal avatars.
inline bool characters_equivalent(const TorusCharacter& a, const TorusCharacter& b) {
  if (a.torus.rank != b.torus.rank || a.torus.p != b.torus.p)
    fail(ErrorKind::RankMismatch, "characters live on different lattices");
  return a.avatar == b.avatar;
}

}  // namespace tame
