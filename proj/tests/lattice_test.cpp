#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace torbun;
using oracle::brute_force_index;
using oracle::is_diagonal_chain;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t cols = rows.begin()->size();
  IntMatrix m(rows.size(), cols);
  std::size_t i = 0;
  for (auto& r : rows) {
    std::size_t j = 0;
    for (auto x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

}  // namespace

TEST(SmithNormalForm, Identity) {
  auto f = smith_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(f.S, IntMatrix::identity(2));
  EXPECT_EQ(f.U, IntMatrix::identity(2));
  EXPECT_EQ(f.V, IntMatrix::identity(2));
}

TEST(SmithNormalForm, SmallExample) {
  auto a = mat({{1, 0}, {1, 2}});
  auto f = smith_normal_form(a);
  EXPECT_EQ(f.S, mat({{1, 0}, {0, 2}}));
  EXPECT_EQ(f.U * a * f.V, f.S);
}

TEST(SmithNormalForm, Zero) {
  auto f = smith_normal_form(IntMatrix(2, 2));
  EXPECT_EQ(f.S, IntMatrix(2, 2));
  EXPECT_EQ(f.U * IntMatrix(2, 2) * f.V, f.S);
}

TEST(SmithNormalForm, RandomMatricesSatisfyInvariants) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 4), entry(-6, 6);
  for (int trial = 0; trial < 500; ++trial) {
    IntMatrix a(dim(rng), dim(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    auto f = smith_normal_form(a);
    ASSERT_EQ(f.U * a * f.V, f.S);
    ASSERT_EQ(abs_value(determinant(f.U)), 1);
    ASSERT_EQ(abs_value(determinant(f.V)), 1);
    ASSERT_TRUE(is_diagonal_chain(f.S));
    ASSERT_EQ(f.rank(), rank(a));
  }
}

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive(LatticeVector{2, 4}), (LatticeVector{1, 2}));
  EXPECT_EQ(primitive(LatticeVector{1, 0}), (LatticeVector{1, 0}));
  EXPECT_EQ(primitive(LatticeVector{-3, -6, -9}), (LatticeVector{-1, -2, -3}));
  try {
    primitive(LatticeVector{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVector);
  }
}

TEST(Saturation, Examples) {
  EXPECT_EQ(saturation(Sublattice(2, {LatticeVector{2, 0}})), Sublattice(2, {LatticeVector{1, 0}}));
  EXPECT_EQ(saturation(Sublattice(2, {LatticeVector{1, 1}, LatticeVector{1, -1}})), Sublattice::full(2));
  Sublattice l(2, {LatticeVector{1, 2}});
  EXPECT_EQ(saturation(l), l);
}

TEST(LatticeIndex, Examples) {
  std::vector<LatticeVector> std_basis{{1, 0}, {0, 1}};
  EXPECT_EQ(lattice_index(2, std_basis), LatticeIndex::finite(1));
  std::vector<LatticeVector> g{{1, 0}, {1, 2}};
  EXPECT_EQ(lattice_index(2, g), LatticeIndex::finite(2));
  EXPECT_EQ(brute_force_index(g), 2);
  std::vector<LatticeVector> line{{1, 1}};
  EXPECT_TRUE(lattice_index(2, line).is_infinite());
}

TEST(LatticeIndex, AgreesWithCosetCount) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 3;
    std::vector<LatticeVector> g(n, LatticeVector(n));
    for (auto& v : g)
      for (std::size_t i = 0; i < n; ++i) v[i] = entry(rng);
    auto idx = lattice_index(n, g);
    Integer d = abs_value(determinant(IntMatrix::from_columns(g, n)));
    if (d == 0) {
      EXPECT_TRUE(idx.is_infinite());
      continue;
    }
    if (d > 12) continue;
    EXPECT_EQ(idx.value(), brute_force_index(g));
  }
}

TEST(QuotientMap, Examples) {
  auto q = quotient_map(Sublattice(2, {LatticeVector{1, 0}}));
  ASSERT_EQ(q.target_rank(), 1u);
  EXPECT_EQ(abs_value(q(LatticeVector{0, 1})[0]), 1);
  EXPECT_EQ(q(LatticeVector{1, 0})[0], 0);

  auto d = quotient_map(Sublattice(2, {LatticeVector{1, 1}}));
  EXPECT_EQ(d(LatticeVector{1, 1})[0], 0);
  Integer image = d(LatticeVector{1, 0})[0];
  EXPECT_EQ(abs_value(image), 1);
  EXPECT_EQ(d(LatticeVector{0, 1})[0], -image);  // x1 - x2 up to sign

  auto full = quotient_map(Sublattice::full(3));
  EXPECT_EQ(full.target_rank(), 0u);

  try {
    quotient_map(Sublattice(2, {LatticeVector{2, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSaturated);
  }
}

TEST(PerpBasis, Examples) {
  EXPECT_EQ(perp_basis(Sublattice(2, {LatticeVector{1, 1}})), (std::vector<LatticeVector>{{1, -1}}));
  EXPECT_EQ(perp_basis(Sublattice(3)), (std::vector<LatticeVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_TRUE(perp_basis(Sublattice::full(2)).empty());
}

TEST(NormalGenerator, Examples) {
  Sublattice diag(2, {LatticeVector{1, 1}});
  EXPECT_EQ(normal_generator(diag, Sublattice::full(2), LatticeVector{1, 0}), (LatticeVector{1, 0}));
  EXPECT_EQ(normal_generator(diag, Sublattice::full(2), LatticeVector{0, 1}), (LatticeVector{0, 1}));
  EXPECT_EQ(normal_generator(Sublattice(2), Sublattice(2, {LatticeVector{1, 0}}), LatticeVector{1, 0}),
            (LatticeVector{1, 0}));
  try {
    normal_generator(Sublattice(2), Sublattice::full(2), LatticeVector{1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCodimOne);
  }
}

TEST(NormalGenerator, LiftsWhenWitnessIsNotAGenerator) {
  Sublattice diag(2, {LatticeVector{1, 1}});
  LatticeVector n = normal_generator(diag, Sublattice::full(2), LatticeVector{3, 1});
  auto q = quotient_map(diag);
  EXPECT_EQ(abs_value(q(n)[0]), 1);
  EXPECT_GT(q(n)[0] * q(LatticeVector{3, 1})[0], 0);
}

TEST(LatticeProperties, RandomSublattices) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + trial % 4;
    std::size_t k = rng() % (n + 1);
    std::vector<LatticeVector> g(k, LatticeVector(n));
    for (auto& v : g)
      for (std::size_t i = 0; i < n; ++i) v[i] = entry(rng);
    Sublattice l(n, g);
    Sublattice sat = saturation(l);
    ASSERT_EQ(saturation(sat), sat);
    ASSERT_TRUE(is_saturated(sat));
    ASSERT_EQ(sat.rank(), l.rank());
    for (const auto& b : l.basis()) ASSERT_TRUE(sat.contains(b));

    // Double perp closure.
    auto p = perp_basis(l);
    ASSERT_EQ(p.size(), n - l.rank());
    ASSERT_EQ(Sublattice(n, perp_basis(Sublattice(n, p))), sat);

    // Index of L inside its saturation equals the product of the SNF diagonal.
    if (l.rank() > 0) {
      SmithForm f = smith_normal_form(IntMatrix::from_rows(l.basis(), n));
      Integer prod = 1;
      for (const auto& d : f.diagonal()) prod *= d;
      std::vector<LatticeVector> coords;
      SmithForm fs = smith_normal_form(IntMatrix::from_rows(sat.basis(), n));
      Integer sat_prod = 1;
      for (const auto& d : fs.diagonal()) sat_prod *= d;
      ASSERT_EQ(sat_prod, 1);
      if (l.rank() == n) {
        ASSERT_EQ(lattice_index(l).value(), prod);
        ASSERT_EQ(lattice_index(sat).value(), 1);
      }
    }

    {
      auto q = quotient_map(sat);
      for (const auto& b : sat.basis()) ASSERT_TRUE(q(b).is_zero());
      auto sq = smith_normal_form(q.projection);
      for (const auto& d : sq.diagonal()) ASSERT_EQ(d, 1);
      ASSERT_EQ(q.projection * q.section, IntMatrix::identity(n - sat.rank()));
    }
  }
}
