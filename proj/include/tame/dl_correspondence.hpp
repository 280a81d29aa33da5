#pragma once

// Deligne-Lusztig correspondence between presentations (w, mu) of inertial
// Deligne-Lusztig data and tame inertial types, plus niveau and the search
// for a Hodge cocharacter whose Galois translates are all regular.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tame/twisted_classes.hpp"

namespace tame {

/// (w, mu): w indexes InertialFrame::omega_theta, mu lies in X^*(T_bar) = X_{theta,tf}.
struct HerzigPresentation {
  std::size_t w = 0;
  IntVector mu;

  friend bool operator==(const HerzigPresentation&, const HerzigPresentation&) = default;
};

struct DLPacket {
  TameInertialType type;
  /// One presentation per rational class of witnesses, ordered by witness.
  std::vector<HerzigPresentation> presentations;
};

/// F_w = frobenius o w on X_{theta,tf}.
inline IntMatrix twisted_frobenius(const InertialFrame& fr, std::size_t w) {
  if (w >= fr.weyl_tf.size()) fail(ErrorKind::BadParams, "Weyl element index out of range");
  return fr.frobenius_tf * fr.weyl_tf[w];
}

/// q - F_w.
inline IntMatrix dl_matrix(const InertialFrame& fr, std::size_t w) {
  return IntMatrix::scalar(fr.tf_rank(), fr.q()) - twisted_frobenius(fr, w);
}

/// Index in omega_theta of a word, or BadParams if the word is not theta-fixed.
inline std::size_t weyl_index(const InertialFrame& fr, const WeylWord& word) {
  const IntMatrix m = word_matrix(fr.spec.datum, word);
  auto i = fr.omega_theta.find(m);
  if (!i) fail(ErrorKind::BadParams, "Weyl element " + word_string(word) + " is not fixed by inertia");
  return *i;
}

/// Avatar v with (q - F_w) v = mu, before taking the orbit minimum.
inline TorsionVector dl_avatar(const InertialFrame& fr, const HerzigPresentation& hp) {
  if (hp.mu.size() != fr.tf_rank()) fail(ErrorKind::DimensionMismatch, "mu has the wrong dimension");
  return torsion_solve(dl_matrix(fr, hp.w), hp.mu, fr.p());
}

inline TwistedClass dl_forward(const InertialFrame& fr, const HerzigPresentation& hp) {
  return canonicalize_tf(fr, dl_avatar(fr, hp));
}

/// Canonical representative of mu modulo (q - F_w) X: (q - F_w) applied to the avatar in [0,1)^f.
inline IntVector normalize_mu(const InertialFrame& fr, std::size_t w, const IntVector& mu) {
  HerzigPresentation hp{w, mu};
  RationalVector back = dl_matrix(fr, w) * dl_avatar(fr, hp).coords();
  IntVector out(back.size());
  for (std::size_t i = 0; i < back.size(); ++i) out[i] = numerator(back[i]);
  return out;
}

/// w -> frobenius^{-1} u frobenius w u^{-1}, the action of a stabilizer element u on witnesses.
inline std::size_t twist_witness(const InertialFrame& fr, std::size_t u, std::size_t w) {
  const IntMatrix& s = fr.spec.frobenius.matrix;
  const IntMatrix um = fr.omega_theta.element(u);
  const IntMatrix m = inverse_unimodular(s) * um * s * fr.omega_theta.element(w) * inverse_unimodular(um);
  return fr.omega_theta.index_of(m);
}

/// Witnesses grouped into rational classes: w ~ frobenius^{-1} u frobenius w u^{-1}
/// for u in the stabilizer of rep. Returns the least witness of each class.
inline std::vector<std::size_t> witness_class_representatives(const InertialFrame& fr, const TameInertialType& t) {
  std::vector<std::size_t> stab;
  for (std::size_t u = 0; u < fr.weyl_tf.size(); ++u)
    if (apply(fr.weyl_tf[u], t.cls.rep) == t.cls.rep) stab.push_back(u);
  std::set<std::size_t> remaining(t.rational_witnesses.begin(), t.rational_witnesses.end());
  std::vector<std::size_t> reps;
  while (!remaining.empty()) {
    const std::size_t w = *remaining.begin();
    reps.push_back(w);
    for (std::size_t u : stab) remaining.erase(twist_witness(fr, u, w));
    remaining.erase(w);
  }
  return reps;
}

inline DLPacket dl_inverse(const InertialFrame& fr, const TameInertialType& t) {
  if (t.rational_witnesses.empty()) fail(ErrorKind::BadParams, "type has no rational witness");
  DLPacket packet{t, {}};
  for (std::size_t w : witness_class_representatives(fr, t)) {
    RationalVector mu = dl_matrix(fr, w) * t.cls.rep.coords();
    IntVector imu(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (!is_integer(mu[i]))
        fail(ErrorKind::IntegralityFailure, "(q - F_w) rep is not integral for w = " + word_string(fr.omega_theta.word(w)));
      imu[i] = numerator(mu[i]);
    }
    packet.presentations.push_back({w, std::move(imu)});
  }
  return packet;
}

/// Every class reached by dl_forward from some (w, mu) whose avatar has level dividing m.
inline std::vector<TwistedClass> enumerate_dl_classes(const InertialFrame& fr, const Int& m) {
  if (gcd(m, fr.p()) != 1) fail(ErrorKind::LevelNotCoprime, "level " + m.str() + " is not prime to p");
  std::set<TwistedClass> out;
  const std::size_t f = fr.tf_rank();
  for (std::size_t w = 0; w < fr.weyl_tf.size(); ++w) {
    if (f == 0) {
      out.insert({TorsionVector::zero(0, fr.p()), 1});
      continue;
    }
    const FiniteAbelianPresentation coker = cokernel_structure(dl_matrix(fr, w));
    const std::size_t t = coker.torsion_count();
    IntVector digits(t);
    for (;;) {
      HerzigPresentation hp{w, coker.section * digits};
      TwistedClass c = dl_forward(fr, hp);
      if (m % c.level == 0) out.insert(std::move(c));
      std::size_t k = 0;
      while (k < t && ++digits[k] == coker.invariant_factors[k]) digits[k++] = 0;
      if (k == t) break;
    }
  }
  return {out.begin(), out.end()};
}

/// Least m >= 1 such that F_w^m permutes the simple roots of the reductive quotient.
inline unsigned niveau(const InertialFrame& fr, const HerzigPresentation& hp) {
  const IntMatrix fw = twisted_frobenius(fr, hp.w);
  const BasedRootDatum& qd = fr.quotient;
  std::vector<IntVector> simple;
  for (std::size_t i = 0; i < qd.simple.size(); ++i) simple.push_back(qd.simple_root(i));
  std::sort(simple.begin(), simple.end());
  IntMatrix power = fw;
  for (unsigned m = 1; m <= 100000; ++m) {
    std::vector<IntVector> img;
    for (const auto& a : simple) img.push_back(power * a);
    std::sort(img.begin(), img.end());
    if (img == simple) return m;
    power = power * fw;
  }
  fail(ErrorKind::InfiniteOrder, "twisted Frobenius does not return to the base");
}

/// Finite group generated by the frobenius and inertia matrices.
inline std::vector<IntMatrix> galois_image(const TameGroupSpec& spec) {
  std::vector<IntMatrix> group{IntMatrix::identity(spec.rank())};
  std::set<IntMatrix> seen(group.begin(), group.end());
  for (std::size_t k = 0; k < group.size(); ++k)
    for (const IntMatrix* g : {&spec.frobenius.matrix, &spec.inertia.matrix}) {
      IntMatrix m = group[k] * *g;
      if (seen.insert(m).second) group.push_back(std::move(m));
    }
  return group;
}

/// True when <g x, alpha^vee> != 0 for every coroot of the datum and every Galois translate g.
inline bool is_galois_regular(const TameGroupSpec& spec, const IntVector& x) {
  for (const auto& g : galois_image(spec)) {
    const IntVector gx = g * x;
    for (const auto& co : spec.datum.coroots)
      if (dot(gx, co) == 0) return false;
  }
  return true;
}

/// First x in X_*(T^) = X^*(T), swept by increasing max-norm and then
/// lexicographically, whose Galois translates avoid every root hyperplane
/// of the dual group.
inline IntVector regular_hodge_cocharacter(const TameGroupSpec& spec) {
  const std::size_t n = spec.rank();
  if (n == 0) return {};
  const auto group = galois_image(spec);
  std::vector<IntVector> hyperplanes;
  for (const auto& g : group)
    for (const auto& co : spec.datum.coroots) hyperplanes.push_back(g.transpose() * co);
  for (long long radius = 0;; ++radius) {
    IntVector x(n, Int(-radius));
    for (;;) {
      bool on_shell = std::any_of(x.begin(), x.end(), [&](const Int& c) { return abs(c) == radius; });
      if (on_shell && std::none_of(hyperplanes.begin(), hyperplanes.end(), [&](const IntVector& h) { return dot(h, x) == 0; }))
        return x;
      std::size_t k = n;
      while (k-- > 0) {
        if (x[k] < radius) {
          ++x[k];
          for (std::size_t j = k + 1; j < n; ++j) x[j] = -radius;
          break;
        }
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
}

}  // namespace tame
