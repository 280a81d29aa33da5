#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tame/lattice.hpp"

using namespace tame;

namespace {

void expect_snf_contract(const IntMatrix& a) {
  const SnfResult r = smith_normal_form(a);
  ASSERT_EQ(r.U * a * r.V, r.D) << a.str();
  EXPECT_EQ(abs(oracle_ref::leibniz_det(r.U)), 1);
  EXPECT_EQ(abs(oracle_ref::leibniz_det(r.V)), 1);
  for (std::size_t i = 0; i < r.D.rows(); ++i)
    for (std::size_t j = 0; j < r.D.cols(); ++j)
      if (i != j) {
        EXPECT_EQ(r.D(i, j), 0);
      }
  const auto& f = r.invariant_factors;
  bool seen_zero = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_GE(f[i], 0);
    if (f[i] == 0) {
      seen_zero = true;
    } else {
      EXPECT_FALSE(seen_zero) << "zeros must trail";
    }
    if (i + 1 < f.size() && f[i] != 0 && f[i + 1] != 0) {
      EXPECT_EQ(f[i + 1] % f[i], 0);
    }
  }
}

}  // namespace

TEST(SmithNormalForm, CartanA2) {
  const IntMatrix a{{2, -1}, {-1, 2}};
  const SnfResult r = smith_normal_form(a);
  EXPECT_EQ(r.invariant_factors, (IntVector{1, 3}));
  expect_snf_contract(a);
}

TEST(SmithNormalForm, IdentityAndZero) {
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(2)).invariant_factors, (IntVector{1, 1}));
  const SnfResult z = smith_normal_form(IntMatrix(2, 2));
  EXPECT_EQ(z.rank(), 0u);
  const auto coker = cokernel_structure(IntMatrix(2, 2));
  EXPECT_TRUE(coker.invariant_factors.empty());
  EXPECT_EQ(coker.free_rank, 2u);
}

TEST(SmithNormalForm, RandomMatricesSatisfyContract) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    expect_snf_contract(oracle_ref::random_matrix(rng, rows, cols, -9, 9));
  }
}

TEST(SmithNormalForm, LargeEntriesStayExact) {
  IntMatrix a{{1, 0}, {0, 1}};
  a(0, 0) = pow(Int(3), 80) - 1;
  a(1, 1) = pow(Int(3), 40) - 1;
  expect_snf_contract(a);
  EXPECT_EQ(cokernel_structure(a).order(), a(0, 0) * a(1, 1));
}

TEST(Determinant, MatchesLeibniz) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const IntMatrix a = oracle_ref::random_matrix(rng, n, n, -9, 9);
    EXPECT_EQ(a.determinant(), oracle_ref::leibniz_det(a)) << a.str();
  }
}

TEST(Cokernel, Examples) {
  auto two = cokernel_structure(IntMatrix::scalar(2, 2));
  EXPECT_EQ(two.invariant_factors, (IntVector{2, 2}));
  EXPECT_EQ(two.free_rank, 0u);
  auto swap = cokernel_structure(IntMatrix{{2, -1}, {-1, 2}});
  EXPECT_EQ(swap.invariant_factors, (IntVector{3}));
  auto four = cokernel_structure(IntMatrix{{4}});
  EXPECT_EQ(four.invariant_factors, (IntVector{4}));
}

TEST(Cokernel, OrderIsAbsoluteDeterminant) {
  std::mt19937_64 rng(99);
  int checked = 0;
  while (checked < 150) {
    const std::size_t n = 1 + rng() % 4;
    const IntMatrix m = oracle_ref::random_matrix(rng, n, n, -6, 6);
    const Int d = oracle_ref::leibniz_det(m);
    if (d == 0) continue;
    const auto c = cokernel_structure(m);
    EXPECT_EQ(c.free_rank, 0u);
    EXPECT_EQ(c.order(), abs(d));
    ++checked;
  }
}

TEST(Cokernel, CoordinatesRespectTheQuotient) {
  const IntMatrix m{{2, 1}, {0, 3}};
  const auto c = cokernel_structure(m);
  // images of M's columns are zero in the quotient
  for (std::size_t j = 0; j < 2; ++j) {
    IntVector x = c.coordinates(m.col(j));
    for (std::size_t i = 0; i < c.invariant_factors.size(); ++i) EXPECT_EQ(mod(x[i], c.invariant_factors[i]), 0);
  }
}

TEST(Coinvariants, Examples) {
  auto swap = coinvariants(2, IntMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(swap.free_rank, 1u);
  EXPECT_TRUE(swap.invariant_factors.empty());
  auto neg = coinvariants(1, IntMatrix{{-1}});
  EXPECT_EQ(neg.free_rank, 0u);
  EXPECT_EQ(neg.invariant_factors, (IntVector{2}));
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(coinvariants(n, IntMatrix::identity(n)).free_rank, n);
}

TEST(Coinvariants, Errors) {
  try {
    coinvariants(2, IntMatrix{{2, 0}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonInvertible);
  }
  try {
    coinvariants(2, IntMatrix{{1, 1}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InfiniteOrder);
  }
}

TEST(Coinvariants, FreeRankIsFixedSpaceDimension) {
  // signed permutation matrices of size 3: 1-eigenspace dimension by rational rank
  std::vector<std::size_t> perm{0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      IntMatrix t(3, 3);
      for (std::size_t i = 0; i < 3; ++i) t(perm[i], i) = (signs >> i) & 1 ? -1 : 1;
      const IntMatrix fixed = t - IntMatrix::identity(3);
      const std::size_t expected = 3 - smith_normal_form(fixed).rank();
      EXPECT_EQ(coinvariants(3, t).free_rank, expected);
      // independent count: eigenvalue-1 multiplicity over Q equals number of cycles with even negative count
      std::vector<bool> done(3, false);
      std::size_t cycles = 0;
      for (std::size_t s = 0; s < 3; ++s) {
        if (done[s]) continue;
        int neg = 0;
        std::size_t cur = s;
        do {
          done[cur] = true;
          if ((signs >> cur) & 1) ++neg;
          cur = perm[cur];
        } while (cur != s);
        if (neg % 2 == 0) ++cycles;
      }
      EXPECT_EQ(expected, cycles);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(TorsionSolve, Examples) {
  EXPECT_EQ(torsion_solve(IntMatrix{{2}}, {1}, 3), TorsionVector({Rational(1, 2)}, 3));
  EXPECT_EQ(torsion_solve(IntMatrix{{2, -1}, {-1, 2}}, {0, 1}, 2), TorsionVector({Rational(1, 3), Rational(2, 3)}, 2));
  EXPECT_TRUE(torsion_solve(IntMatrix{{4}}, {0}, 3).is_zero());
}

TEST(TorsionSolve, Errors) {
  try {
    torsion_solve(IntMatrix{{1, 1}, {1, 1}}, {0, 0}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularMatrix);
  }
  try {
    torsion_solve(IntMatrix{{3}}, {1}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PDivisibleDeterminant);
  }
}

TEST(TorsionSolve, AgreesWithEnumeration) {
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 60) {
    const std::size_t n = 1 + rng() % 2;
    const IntMatrix m = oracle_ref::random_matrix(rng, n, n, -4, 4);
    const Int d = oracle_ref::leibniz_det(m);
    if (d == 0 || abs(d) > 40 || d % 7 == 0) continue;
    const IntVector mu = oracle_ref::random_matrix(rng, n, 1, -5, 5).col(0);
    const auto brute = oracle_ref::brute_torsion_solutions(m, mu, static_cast<long long>(abs(d)));
    ASSERT_EQ(brute.size(), 1u);
    EXPECT_EQ(torsion_solve(m, mu, 7).coords(), brute.front());
    ++checked;
  }
}

TEST(TorsionVector, CanonicalCoordinates) {
  const TorsionVector v({Rational(7, 3), Rational(-1, 4), Rational(2, 1)}, 5);
  EXPECT_EQ(v[0], Rational(1, 3));
  EXPECT_EQ(v[1], Rational(3, 4));
  EXPECT_EQ(v[2], 0);
  EXPECT_EQ(v.level(), 12);
  EXPECT_THROW(TorsionVector({Rational(1, 10)}, 5), Error);
}

TEST(IntegerSolve, MatchesBoxSearch) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    const IntMatrix a = oracle_ref::random_matrix(rng, 2, 2, -3, 3);
    const IntVector b = oracle_ref::random_matrix(rng, 2, 1, -4, 4).col(0);
    const auto ours = solve_integer(a, b);
    if (ours) {
      EXPECT_EQ(a * *ours, b);
    }
    // when det is a unit any solution is inside a small box
    if (abs(a.determinant()) == 1) {
      const auto brute = oracle_ref::brute_integer_solution(a, b, 40);
      EXPECT_EQ(ours.has_value(), brute.has_value());
    }
    if (!ours && a.determinant() != 0) {
      // no integer solution means the rational one is not integral
      const RationalVector x = solve_rational(a, to_rational(b));
      EXPECT_FALSE(std::all_of(x.begin(), x.end(), [](const Rational& r) { return is_integer(r); }));
    }
  }
}

TEST(IntegerKernel, AnnihilatesAndIsSaturated) {
  const IntMatrix a{{1, -1, 0}, {0, 1, -1}};
  const IntMatrix k = integer_kernel(a);
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_TRUE((a * k).is_zero());
  EXPECT_TRUE(in_lattice(k, IntVector{1, 1, 1}));
}

TEST(ReduceModuloLattice, CanonicalOnCosets) {
  const IntMatrix basis{{1}, {1}};
  EXPECT_EQ(reduce_modulo_lattice({3, 2}, basis), (IntVector{1, 0}));
  EXPECT_EQ(reduce_modulo_lattice({-5, -6}, basis), (IntVector{1, 0}));
  std::mt19937_64 rng(3);
  const IntMatrix l{{2, 1}, {0, 3}};
  for (int trial = 0; trial < 50; ++trial) {
    const IntVector x = oracle_ref::random_matrix(rng, 2, 1, -20, 20).col(0);
    const IntVector shift = l * oracle_ref::random_matrix(rng, 2, 1, -5, 5).col(0);
    const IntVector r = reduce_modulo_lattice(x, l);
    EXPECT_TRUE(in_lattice(l, x - r));
    EXPECT_EQ(reduce_modulo_lattice(x + shift, l), r);
  }
}

TEST(MatrixOrder, SmallCases) {
  EXPECT_EQ(matrix_order(IntMatrix{{0, -1}, {1, -1}}), 3u);
  EXPECT_EQ(matrix_order(IntMatrix{{1, -1}, {1, 0}}), 6u);
  EXPECT_FALSE(matrix_order(IntMatrix{{1, 1}, {0, 1}}).has_value());
}

TEST(Rationals, Parsing) {
  EXPECT_EQ(parse_rational("3/8"), Rational(3, 8));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_THROW(parse_rational("x/2"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}
