#pragma once

// Inertia-twisted semisimple classes of the dual group, parametrized by
// (X_*(T^)_{theta,tf} (x) Q_{p'}/Z) / Omega^theta, and tame inertial types
// (the classes stable under the twisted q-Frobenius).

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "tame/root_datum.hpp"

namespace tame {

/// Worker count for partitioned enumerations; TAME_PARAMS_THREADS caps it.
inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TAME_PARAMS_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Everything about a spec that lives on the torsion-free coinvariant
/// lattice X_{theta,tf} = X^*(T)_{theta,tf}, which is also the character
/// lattice of the reductive quotient's torus.
struct InertialFrame {
  TameGroupSpec spec;
  FiniteAbelianPresentation coinvariant;
  /// f x n: ambient X^* onto X_{theta,tf}.
  IntMatrix projection;
  /// n x f with projection * section = I.
  IntMatrix section;
  WeylGroup omega;
  WeylGroup omega_theta;
  /// Action of omega_theta.element(i) on X_{theta,tf}.
  std::vector<IntMatrix> weyl_tf;
  IntMatrix frobenius_tf;
  IntMatrix frobenius_inv_tf;
  /// Root datum of the reductive quotient, in X_{theta,tf} coordinates.
  BasedRootDatum quotient;

  std::size_t tf_rank() const { return projection.rows(); }
  const Int& p() const { return spec.p; }
  const Int& q() const { return spec.q; }

  /// Conjugates an ambient matrix commuting with theta down to X_{theta,tf}.
  IntMatrix induce(const IntMatrix& ambient) const { return projection * ambient * section; }

  TorsionVector project(const TorsionVector& ambient) const {
    if (ambient.dim() != spec.rank())
      fail(ErrorKind::DimensionMismatch, "expected a vector of dimension " + std::to_string(spec.rank()));
    return apply(projection, ambient);
  }

  std::size_t longest_weyl() const { return omega_theta.longest(); }
};

namespace detail {

/// Restricted roots of the reductive quotient: one per theta-orbit of roots,
/// coroot = image of the orbit sum of coroots, root rescaled so the pairing is 2.
inline BasedRootDatum quotient_datum(const BasedRootDatum& d, const IntMatrix& theta, const IntMatrix& proj,
                                     const IntMatrix& sect) {
  BasedRootDatum out;
  out.rank = proj.rows();
  const IntMatrix sect_t = sect.transpose();
  std::vector<std::size_t> orbit_of(d.roots.size(), d.roots.size());
  auto restricted = [&](std::size_t r) -> std::pair<IntVector, IntVector> {
    IntVector co(d.rank);
    std::vector<std::size_t> seen;
    std::size_t cur = r;
    do {
      seen.push_back(cur);
      co = co + d.coroots[cur];
      cur = *d.find_root(theta * d.roots[cur]);
    } while (cur != r);
    IntVector bar = proj * d.roots[r];
    IntVector cobar = sect_t * co;
    Int k = dot(bar, cobar);
    if (k == 1)
      bar = scale(2, bar);
    else if (k != 2)
      fail(ErrorKind::BadPairing, "restricted root " + to_string(bar) + " pairs to " + k.str() + " with its coroot");
    return {bar, cobar};
  };
  for (std::size_t i = 0; i < d.simple.size(); ++i) {
    auto [root, coroot] = restricted(d.simple[i]);
    if (out.find_root(root)) continue;
    out.roots.push_back(root);
    out.coroots.push_back(coroot);
    out.simple.push_back(out.roots.size() - 1);
  }
  for (std::size_t r = 0; r < d.roots.size(); ++r) {
    auto [root, coroot] = restricted(r);
    if (out.find_root(root)) continue;
    out.roots.push_back(root);
    out.coroots.push_back(coroot);
  }
  return out;
}

}  // namespace detail

inline InertialFrame make_frame(const TameGroupSpec& spec) {
  InertialFrame fr;
  fr.spec = spec;
  const std::size_t n = spec.rank();
  fr.coinvariant = coinvariants(n, spec.inertia.matrix);
  fr.projection = fr.coinvariant.free_projection();
  fr.section = fr.coinvariant.free_section();
  if (n == 0) {
    fr.projection = IntMatrix(0, 0);
    fr.section = IntMatrix(0, 0);
  }
  fr.omega = weyl_group(spec.datum);
  fr.omega_theta = fixed_weyl_subgroup(fr.omega, spec.inertia);
  for (const auto& w : fr.omega_theta.elements()) fr.weyl_tf.push_back(fr.induce(w));
  fr.frobenius_tf = fr.induce(spec.frobenius.matrix);
  fr.frobenius_inv_tf = n == 0 ? IntMatrix() : fr.induce(inverse_unimodular(spec.frobenius.matrix));
  fr.quotient = detail::quotient_datum(spec.datum, spec.inertia.matrix, fr.projection, fr.section);
  return fr;
}

/// An Omega^theta-orbit in X_{theta,tf} (x) Q_{p'}/Z, keyed by its lexicographically least member.
struct TwistedClass {
  TorsionVector rep;
  Int level = 1;

  friend bool operator==(const TwistedClass& a, const TwistedClass& b) { return a.rep == b.rep; }
  friend bool operator<(const TwistedClass& a, const TwistedClass& b) { return a.rep < b.rep; }
};

/// A Frobenius-stable class together with every Weyl element realizing the stability.
struct TameInertialType {
  TwistedClass cls;
  /// Indices into InertialFrame::omega_theta.
  std::vector<std::size_t> rational_witnesses;
};

/// Minimal element of the Omega^theta-orbit of a vector already in tf coordinates.
inline TwistedClass canonicalize_tf(const InertialFrame& fr, const TorsionVector& u) {
  if (u.dim() != fr.tf_rank()) fail(ErrorKind::DimensionMismatch, "class representative has the wrong dimension");
  TorsionVector best = u;
  for (const auto& w : fr.weyl_tf) {
    TorsionVector img = apply(w, u);
    if (img < best) best = std::move(img);
  }
  Int level = best.level();
  return {std::move(best), std::move(level)};
}

/// Projects an ambient vector of X^* (x) Q_{p'}/Z to the coinvariants and takes the orbit minimum.
inline TwistedClass canonicalize(const InertialFrame& fr, const TorsionVector& v) {
  return canonicalize_tf(fr, fr.project(v));
}

inline TwistedClass canonicalize(const TameGroupSpec& spec, const TorsionVector& v) {
  return canonicalize(make_frame(spec), v);
}

/// q * frobenius^{-1} on tf coordinates, before taking the orbit minimum.
inline TorsionVector frobenius_vector(const InertialFrame& fr, const TorsionVector& u) {
  return apply(fr.q() * fr.frobenius_inv_tf, u);
}

inline TwistedClass frobenius_image(const InertialFrame& fr, const TwistedClass& c) {
  return canonicalize_tf(fr, frobenius_vector(fr, c.rep));
}

/// All w in Omega^theta with q * frobenius^{-1}(rep) = w(rep) mod the lattice.
inline std::vector<std::size_t> rational_witnesses(const InertialFrame& fr, const TwistedClass& c) {
  const TorsionVector target = frobenius_vector(fr, c.rep);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fr.weyl_tf.size(); ++i)
    if (apply(fr.weyl_tf[i], c.rep) == target) out.push_back(i);
  return out;
}

inline std::vector<std::size_t> is_rational(const InertialFrame& fr, const TwistedClass& c) {
  return rational_witnesses(fr, c);
}

/// Every class in (1/m)-torsion, in canonical order. Partitioned across threads.
inline std::vector<TwistedClass> enumerate_twisted_classes(const InertialFrame& fr, const Int& m) {
  if (m < 1) fail(ErrorKind::BadParams, "level must be positive");
  if (gcd(m, fr.p()) != 1) fail(ErrorKind::LevelNotCoprime, "level " + m.str() + " is not prime to p = " + fr.p().str());
  const std::size_t f = fr.tf_rank();
  if (f == 0) return {TwistedClass{TorsionVector::zero(0, fr.p()), 1}};
  const std::uint64_t mm = static_cast<std::uint64_t>(to_i64(m));
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < f; ++i) {
    if (total > 50'000'000 / mm) fail(ErrorKind::Explosion, "torsion grid is too large");
    total *= mm;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(thread_count(), total));
  std::vector<std::set<TwistedClass>> partial(workers);
  auto work = [&](unsigned id) {
    for (std::uint64_t idx = id; idx < total; idx += workers) {
      RationalVector coords(f);
      std::uint64_t rest = idx;
      for (std::size_t k = f; k-- > 0;) {
        coords[k] = Rational(Int(rest % mm), m);
        rest /= mm;
      }
      partial[id].insert(canonicalize_tf(fr, TorsionVector(std::move(coords), fr.p())));
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  std::set<TwistedClass> merged;
  for (auto& s : partial) merged.insert(s.begin(), s.end());
  return {merged.begin(), merged.end()};
}

/// Frobenius-stable classes whose level divides m.
inline std::vector<TameInertialType> enumerate_tame_types(const InertialFrame& fr, const Int& m) {
  std::vector<TameInertialType> out;
  for (auto& c : enumerate_twisted_classes(fr, m)) {
    auto w = rational_witnesses(fr, c);
    if (!w.empty()) out.push_back({std::move(c), std::move(w)});
  }
  return out;
}

inline std::vector<TameInertialType> enumerate_tame_types(const TameGroupSpec& spec, const Int& m) {
  return enumerate_tame_types(make_frame(spec), m);
}

/// Builds a type from a class, or throws when the class is not Frobenius-stable.
inline TameInertialType make_tame_type(const InertialFrame& fr, const TwistedClass& c) {
  auto w = rational_witnesses(fr, c);
  if (w.empty()) fail(ErrorKind::BadParams, "class " + c.rep.str() + " is not Frobenius-stable");
  return {c, std::move(w)};
}

}  // namespace tame
