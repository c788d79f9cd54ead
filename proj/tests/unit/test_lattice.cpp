#include <gtest/gtest.h>

#include <random>

#include "ek3/lattice.hpp"
#include "ek3/root_type.hpp"

using namespace ek3;

namespace {

IntMatrix make(std::initializer_list<std::initializer_list<long long>> rows) {
  IntMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (auto v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix diagonal(const std::vector<BigInt>& d, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

// naive box count of vectors with -x^T g x == 2
std::uint64_t brute_roots(const IntegralLattice& lat, int box) {
  const std::size_t n = lat.rank();
  std::vector<long long> x(n, -box);
  std::uint64_t count = 0;
  while (true) {
    BigInt v = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v += lat.gram()(i, j) * x[i] * x[j];
    if (v == -2) ++count;
    std::size_t k = 0;
    while (k < n && ++x[k] > box) x[k++] = -box;
    if (k == n) break;
  }
  return count;
}

}  // namespace

TEST(SmithNormalForm, Identity) {
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(2)).divisors, (std::vector<BigInt>{1, 1}));
}

TEST(SmithNormalForm, Diagonal) {
  EXPECT_EQ(smith_normal_form(make({{2, 0}, {0, 2}})).divisors, (std::vector<BigInt>{2, 2}));
}

TEST(SmithNormalForm, A2) {
  EXPECT_EQ(smith_normal_form(make({{-2, 1}, {1, -2}})).divisors, (std::vector<BigInt>{1, 3}));
}

TEST(SmithNormalForm, RandomMatricesSatisfyIdentity) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-9, 9), dim(1, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
    IntMatrix g(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) g(i, j) = entry(rng);
    const auto snf = smith_normal_form(g);
    ASSERT_EQ(snf.left * g * snf.right, diagonal(snf.divisors, r, c));
    ASSERT_EQ(abs(determinant(snf.left)), 1);
    ASSERT_EQ(abs(determinant(snf.right)), 1);
    for (std::size_t i = 0; i < snf.divisors.size(); ++i) {
      ASSERT_GE(snf.divisors[i], 0);
      if (i + 1 < snf.divisors.size() && snf.divisors[i] != 0)
        ASSERT_EQ(snf.divisors[i + 1] % snf.divisors[i], 0);
      if (snf.divisors[i] == 0 && i + 1 < snf.divisors.size())
        ASSERT_EQ(snf.divisors[i + 1], 0);
    }
  }
}

TEST(DualBasis, A1) {
  const auto d = dual_basis(IntegralLattice(make({{-2}})));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0][0], Rational(-1, 2));
}

TEST(DualBasis, A2DenominatorsDivideThree) {
  const IntegralLattice a2(make({{-2, 1}, {1, -2}}));
  const auto d = dual_basis(a2);
  EXPECT_EQ(d[0], (RationalVector{Rational(-2, 3), Rational(-1, 3)}));
  EXPECT_EQ(d[1], (RationalVector{Rational(-1, 3), Rational(-2, 3)}));
}

TEST(DualBasis, UnimodularIsIntegral) {
  for (const auto& v : dual_basis(gram_of(RootType::parse("E8"))))
    for (const auto& x : v) EXPECT_TRUE(is_integer(x));
}

TEST(DualBasis, PairingIsKronecker) {
  const auto lat = gram_of(RootType::parse("A2+D5+E7"));
  const auto dual = dual_basis(lat);
  for (std::size_t i = 0; i < lat.rank(); ++i)
    for (std::size_t j = 0; j < lat.rank(); ++j) {
      RationalVector e(lat.rank());
      e[j] = 1;
      EXPECT_EQ(lat.pairing(dual[i], e), Rational(i == j ? 1 : 0));
    }
}

TEST(DualBasis, Degenerate) {
  EXPECT_THROW(dual_basis(IntegralLattice(make({{2, 2}, {2, 2}}))), LatticeError);
}

TEST(CountRoots, Examples) {
  EXPECT_EQ(count_roots(gram_of(RootType::parse("A1"))), 2u);
  EXPECT_EQ(count_roots(gram_of(RootType::parse("E8"))), 240u);
  EXPECT_EQ(count_roots(gram_of(RootType::parse("6A3"))), 72u);
}

TEST(CountRoots, AgreesWithBoxEnumeration) {
  for (const char* s : {"A1", "A2", "A3", "D4", "A1+A2", "2A2", "A4"}) {
    const auto lat = gram_of(RootType::parse(s));
    EXPECT_EQ(count_roots(lat), brute_roots(lat, 3)) << s;
  }
}

TEST(CountRoots, RejectsIndefinite) {
  EXPECT_THROW(count_roots(IntegralLattice(make({{0, 1}, {1, 0}}))), LatticeError);
  EXPECT_THROW(count_roots(IntegralLattice(make({{2}}))), LatticeError);
}

TEST(Overlattice, EmptyGenerators) {
  const auto lat = gram_of(RootType::parse("A2+A1"));
  const auto m = build_overlattice(lat, {});
  EXPECT_EQ(m.index, 1);
  EXPECT_EQ(m.lattice.determinant(), lat.determinant());
}

TEST(Overlattice, D8WithSpinorGivesE8) {
  const auto lat = gram_of(RootType::parse("D8"));
  // the D8 spinor class: half the sum of the tips' fundamental weights, found
  // by scanning dual-basis combinations for an isotropic class of order 2
  const auto dual = dual_basis(lat);
  bool found = false;
  for (std::size_t i = 0; i < dual.size() && !found; ++i) {
    const Rational q = lat.norm(dual[i]);
    if (!is_integer(q) || mod_floor(boost::multiprecision::numerator(q), 2) != 0) continue;
    bool in_lattice = true;
    for (const auto& x : dual[i]) in_lattice = in_lattice && is_integer(x);
    if (in_lattice) continue;
    const RationalVector g[] = {dual[i]};
    const auto m = build_overlattice(lat, g);
    EXPECT_EQ(abs(m.lattice.determinant()), 1);
    EXPECT_EQ(count_roots(m.lattice), 240u);
    EXPECT_EQ(m.index, 2);
    found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Overlattice, NonIsotropicRejected) {
  const auto lat = gram_of(RootType::parse("A1"));
  const RationalVector g[] = {{Rational(1, 2)}};
  EXPECT_THROW(build_overlattice(lat, g), LatticeError);
}

TEST(GramIo, RoundTrip) {
  const auto lat = gram_of(RootType::parse("A2+D4"));
  std::stringstream ss;
  write_gram(ss, lat);
  EXPECT_EQ(read_gram(ss), lat);
}

TEST(Lattice, RejectsOddDiagonal) {
  EXPECT_THROW(IntegralLattice(make({{1}})), LatticeError);
  EXPECT_THROW(IntegralLattice(make({{2, 1}, {0, 2}})), LatticeError);
}
