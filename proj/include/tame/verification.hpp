#pragma once

// Oracle-versus-parametrization suites. Each returns a Report; the CLI and
// the acceptance binary share them.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tame/oracle_bench.hpp"
#include "tame/report.hpp"

namespace tame {

/// GL_n with trivial or unitary-flip inertia, built without validation so
/// that characteristic 2 is allowed (only the coinvariant geometry matters).
inline TameGroupSpec twisted_comparison_spec(unsigned n, unsigned q_field, bool transpose_inverse) {
  TameGroupSpec spec;
  spec.datum = gl_datum(n);
  spec.q = q_field;
  spec.p = smallest_prime_factor(Int(q_field));
  spec.frobenius = pin(spec.datum, IntMatrix::identity(n));
  spec.inertia = pin(spec.datum, transpose_inverse ? unitary_flip(n) : IntMatrix::identity(n));
  spec.e = transpose_inverse ? 2 : 1;
  spec.name = std::string("GL") + std::to_string(n) + (transpose_inverse ? "-flip" : "") + "(q=" + std::to_string(q_field) + ")";
  return spec;
}

/// Partition of the exponent tuples by the canonical class of (e_1/m, ..., e_n/m).
inline std::vector<std::vector<std::size_t>> canonical_fibers(const InertialFrame& fr,
                                                              const std::vector<std::vector<unsigned>>& tuples, unsigned m) {
  std::map<TwistedClass, std::vector<std::size_t>> fibers;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    RationalVector v;
    for (unsigned e : tuples[i]) v.emplace_back(Int(e), Int(m));
    fibers[canonicalize(fr, TorsionVector(std::move(v), fr.p()))].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [cls, idx] : fibers) out.push_back(std::move(idx));
  std::sort(out.begin(), out.end());
  return out;
}

inline Report verify_twisted(const std::vector<unsigned>& q_fields, unsigned n = 2) {
  Stopwatch clock;
  Report rep;
  rep.config["suite"] = "twisted";
  rep.config["n"] = n;
  rep.config["q_fields"] = q_fields;
  for (unsigned q : q_fields) {
    const oracle::FiniteField f(q);
    for (bool flip : {false, true}) {
      const oracle::TwistSpec tw = flip ? oracle::TwistSpec::transpose_inverse(f, n) : oracle::TwistSpec::trivial(n);
      const InertialFrame fr = make_frame(twisted_comparison_spec(n, q, flip));
      for (unsigned m = 1; m <= q - 1; ++m) {
        if ((q - 1) % m != 0) continue;
        const oracle::TwistedPartition brute = oracle::brute_twisted_classes(n, q, m, tw);
        const auto lhs = brute.blocks();
        const auto rhs = canonical_fibers(fr, brute.tuples, m);
        Json r;
        r["q_field"] = q;
        r["theta"] = flip ? "transpose-inverse" : "trivial";
        r["m"] = m;
        r["oracle_classes"] = lhs.size();
        r["parametrized_classes"] = rhs.size();
        r["match"] = lhs == rhs;
        if (lhs != rhs) rep.mismatches.push_back(r);
        rep.results.push_back(std::move(r));
      }
    }
  }
  rep.elapsed_ms = clock.elapsed_ms();
  return rep;
}

struct TorusCase {
  IntMatrix pi;
  Int q;
  unsigned n = 1;
};

/// Finite-order automorphisms of Z^r, r <= 3, paired with q^n <= 27.
inline std::vector<TorusCase> torus_ladder() {
  std::vector<IntMatrix> autos = {
      IntMatrix{{1}},
      IntMatrix{{-1}},
      IntMatrix::identity(2),
      IntMatrix::scalar(2, -1),
      IntMatrix{{0, 1}, {1, 0}},
      IntMatrix{{0, -1}, {-1, 0}},
      IntMatrix{{0, -1}, {1, -1}},
      IntMatrix{{0, -1}, {1, 0}},
      IntMatrix{{1, -1}, {1, 0}},
      IntMatrix::identity(3),
      IntMatrix::scalar(3, -1),
      IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},
      IntMatrix{{0, 0, -1}, {-1, 0, 0}, {0, -1, 0}},
      IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}},
      IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}},
      IntMatrix{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}},
  };
  std::vector<TorusCase> out;
  for (const auto& pi : autos)
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27})
      for (unsigned n = 1; pow(Int(q), n) <= 27; ++n) out.push_back({pi, q, n});
  return out;
}

/// Determinant formula against brute enumeration. Cases outside the
/// oracle's search space or above the determinant cap are listed as skipped.
inline Report verify_tori(const Int& det_cap = 10000, std::uint64_t search_cap = 10'000'000) {
  Stopwatch clock;
  Report rep;
  rep.config["suite"] = "tori";
  rep.config["det_cap"] = to_i64(det_cap);
  rep.config["search_cap"] = search_cap;
  std::size_t compared = 0, skipped = 0;
  for (const auto& c : torus_ladder()) {
    const FiniteFieldTorus t = FiniteFieldTorus::make(c.pi, c.q);
    const Int formula = point_count(t, c.n);
    Json r;
    r["pi"] = to_json(c.pi);
    r["q"] = to_i64(c.q);
    r["n"] = c.n;
    r["formula"] = to_i64(formula);
    if (formula > det_cap) {
      r["skipped"] = "determinant above cap";
      ++skipped;
      rep.results.push_back(std::move(r));
      continue;
    }
    try {
      const std::uint64_t brute = oracle::brute_point_count(t, c.n, search_cap);
      r["oracle"] = brute;
      r["match"] = Int(brute) == formula;
      ++compared;
      if (Int(brute) != formula) rep.mismatches.push_back(r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SearchSpaceExceeded) throw;
      r["skipped"] = "search space";
      ++skipped;
    }
    rep.results.push_back(std::move(r));
  }
  rep.config["compared"] = compared;
  rep.config["skipped"] = skipped;
  rep.elapsed_ms = clock.elapsed_ms();
  return rep;
}

/// Searches for a common torus on sampled pairs. Inconclusive runs are
/// recorded in the results but never counted as mismatches.
inline Report verify_metacyclic(const std::vector<unsigned>& q_fields, std::size_t pairs_per_field, unsigned k_max,
                                std::uint64_t seed) {
  Stopwatch clock;
  Report rep;
  rep.config["suite"] = "metacyclic";
  rep.config["q_fields"] = q_fields;
  rep.config["pairs_per_field"] = pairs_per_field;
  rep.config["k_max"] = k_max;
  rep.config["seed"] = seed;
  std::size_t found = 0, inconclusive = 0;
  for (unsigned q : q_fields) {
    for (const auto& pair : oracle::sample_metacyclic_pairs(q, pairs_per_field, seed + q)) {
      const auto res = oracle::search_common_torus(2, q, pair.sigma, pair.tau, k_max);
      Json r;
      r["q_field"] = q;
      r["construction"] = pair.construction;
      r["sigma"] = pair.sigma.describe();
      r["tau"] = ff::to_string(pair.tau);
      r["found"] = res.found;
      r["k"] = res.k;
      r["tori_tested"] = res.tori_tested;
      r["torus"] = res.descriptor;
      (res.found ? found : inconclusive)++;
      rep.results.push_back(std::move(r));
    }
  }
  rep.config["found"] = found;
  rep.config["inconclusive"] = inconclusive;
  rep.elapsed_ms = clock.elapsed_ms();
  return rep;
}

}  // namespace tame
