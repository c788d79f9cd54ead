#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ek3/disc_form.hpp"
#include "ek3/root_type.hpp"

using namespace ek3;

namespace {

DiscriminantForm form_of(const char* sigma) {
  return discriminant_form(gram_of(RootType::parse(sigma)));
}

DiscriminantForm cyclic(std::int64_t n, Rational q) {
  RatMatrix b(1, 1);
  return DiscriminantForm({n}, {q}, b);
}

std::vector<Element> all_elements(const DiscriminantForm& df) {
  std::vector<Element> out{Element(df.num_generators(), 0)};
  for (std::size_t i = 0; i < df.num_generators(); ++i) {
    std::vector<Element> next;
    for (const auto& e : out)
      for (std::int64_t k = 0; k < df.orders()[i]; ++k) {
        auto f = e;
        f[i] = k;
        next.push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

Element reduce(const DiscriminantForm& df, Element e) {
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = ((e[i] % df.orders()[i]) + df.orders()[i]) % df.orders()[i];
  return e;
}

Element add(const DiscriminantForm& df, const Element& x, const Element& y) {
  Element z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return reduce(df, z);
}

// Exhaustive isomorphism test: every assignment of generator images that
// defines a bijective homomorphism preserving q on all elements.
bool brute_isomorphic(const DiscriminantForm& f, const DiscriminantForm& g, bool negate) {
  if (f.order() != g.order()) return false;
  const auto src = all_elements(f);
  const auto dst = all_elements(g);
  const std::size_t k = f.num_generators();
  std::vector<std::size_t> choice(k, 0);
  while (true) {
    bool hom = true;
    for (std::size_t i = 0; i < k && hom; ++i) {
      Element m(g.num_generators(), 0);
      for (std::int64_t t = 0; t < f.orders()[i]; ++t) m = add(g, m, dst[choice[i]]);
      hom = m == Element(g.num_generators(), 0);
    }
    if (hom) {
      std::set<Element> image;
      bool ok = true;
      for (const auto& x : src) {
        Element y(g.num_generators(), 0);
        for (std::size_t i = 0; i < k; ++i)
          for (std::int64_t t = 0; t < x[i]; ++t) y = add(g, y, dst[choice[i]]);
        image.insert(y);
        Rational qy = g.q_of(y);
        if (negate) qy = reduce_mod(-qy, Rational(2));
        if (qy != f.q_of(x)) {
          ok = false;
          break;
        }
      }
      if (ok && image.size() == dst.size()) return true;
    }
    std::size_t i = 0;
    while (i < k && ++choice[i] == dst.size()) choice[i++] = 0;
    if (i == k) return false;
  }
}

IntegralLattice random_root_sublattice(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_dist(1, 6);
  const int n = n_dist(rng);
  const auto types = enumerate_rank(n);
  const auto& s = types[std::uniform_int_distribution<std::size_t>(0, types.size() - 1)(rng)];
  const IntMatrix c = gram_of(s).gram();
  std::uniform_int_distribution<int> entry(-2, 2);
  while (true) {
    IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = entry(rng) + (i == j ? 1 : 0);
    if (determinant(m) == 0) continue;
    return IntegralLattice(m.transposed() * c * m);
  }
}

}  // namespace

TEST(DiscriminantForm, E8Trivial) {
  const auto df = form_of("E8");
  EXPECT_EQ(df.num_generators(), 0u);
  EXPECT_EQ(df.order(), 1);
}

TEST(DiscriminantForm, A1) {
  const auto df = form_of("A1");
  ASSERT_EQ(df.orders(), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(df.q(0), Rational(3, 2));
}

TEST(DiscriminantForm, A2) {
  const auto df = form_of("A2");
  ASSERT_EQ(df.orders(), (std::vector<std::int64_t>{3}));
  EXPECT_EQ(df.q(0), Rational(4, 3));
}

TEST(DiscriminantForm, OrderMatchesDeterminant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto lat = random_root_sublattice(rng);
    ASSERT_EQ(BigInt(discriminant_form(lat).order()), abs(lat.determinant()));
  }
}

TEST(DiscriminantForm, QuadraticAndBilinearCompatible) {
  // all pairs on small groups, random pairs on larger ones
  std::mt19937_64 rng(5);
  for (const char* s : {"A1", "A2+A3", "D4+A1", "2A1+4A4", "D5+E6", "A7", "2A3+A2"}) {
    const auto df = form_of(s);
    ASSERT_LE(df.order(), 10000);
    const auto els = all_elements(df);
    auto check = [&](const Element& x, const Element& y) {
      const Rational lhs = reduce_mod(df.q_of(add(df, x, y)) - df.q_of(x) - df.q_of(y), Rational(2));
      ASSERT_EQ(lhs, reduce_mod(2 * df.b_of(x, y), Rational(2))) << s;
    };
    if (els.size() <= 200) {
      for (const auto& x : els)
        for (const auto& y : els) check(x, y);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
      for (int t = 0; t < 20000; ++t) check(els[pick(rng)], els[pick(rng)]);
    }
  }
}

TEST(DiscriminantForm, CarriersRepresentTheForm) {
  const auto lat = gram_of(RootType::parse("A3+D5"));
  const auto df = discriminant_form(lat);
  for (std::size_t i = 0; i < df.num_generators(); ++i) {
    EXPECT_EQ(reduce_mod(lat.norm(df.carriers()[i]), Rational(2)), df.q(i));
    RationalVector m = df.carriers()[i];
    for (auto& x : m) x *= df.orders()[i];
    for (const auto& x : m) EXPECT_TRUE(is_integer(x));
  }
}

TEST(DiscriminantForm, InvariantFactors) {
  EXPECT_EQ(form_of("6A3").invariant_factors(), (std::vector<std::int64_t>(6, 4)));
  EXPECT_EQ(form_of("A1+A2").invariant_factors(), (std::vector<std::int64_t>{6}));
  EXPECT_EQ(form_of("2A1+A3").invariant_factors(), (std::vector<std::int64_t>{2, 2, 4}));
  EXPECT_EQ(form_of("6A3").length(), 6u);
  EXPECT_EQ(form_of("E8").length(), 0u);
}

TEST(PPart, Trivial) {
  EXPECT_EQ(p_part(form_of("E8"), 2).order(), 1);
  EXPECT_EQ(p_part(form_of("A4"), 3).order(), 1);
}

TEST(PPart, CyclicTwelve) {
  const auto df = form_of("A11");
  EXPECT_EQ(p_part(df, 2).orders(), (std::vector<std::int64_t>{4}));
  EXPECT_EQ(p_part(df, 3).orders(), (std::vector<std::int64_t>{3}));
}

TEST(PPart, TwoA1FourA4) {
  const auto df = form_of("2A1+4A4");
  const auto two = p_part(df, 2), five = p_part(df, 5);
  EXPECT_EQ(two.order(), 4);
  EXPECT_EQ(two.length(), 2u);
  EXPECT_EQ(five.order(), 625);
  EXPECT_EQ(five.length(), 4u);
  EXPECT_EQ(two.order() * five.order(), df.order());
}

TEST(PPart, RejectsComposite) { EXPECT_THROW(p_part(form_of("A1"), 4), DiscFormError); }

TEST(EnumerateIsotropic, TrivialGroup) {
  const auto pairs = enumerate_isotropic(form_of("E8"));
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].subgroup.order, 1);
  EXPECT_EQ(pairs[0].complement.size(), 1u);
}

TEST(EnumerateIsotropic, A1OnlyTrivial) {
  EXPECT_EQ(enumerate_isotropic(form_of("A1")).size(), 1u);
}

TEST(EnumerateIsotropic, D8SpinorClasses) {
  const auto pairs = enumerate_isotropic(form_of("D8"));
  ASSERT_EQ(pairs.size(), 3u);
  int order_two = 0;
  for (const auto& p : pairs) order_two += p.subgroup.order == 2;
  EXPECT_EQ(order_two, 2);
}

TEST(EnumerateIsotropic, MixedPrimeRejected) {
  EXPECT_THROW(enumerate_isotropic(form_of("A5")), DiscFormError);
}

TEST(EnumerateIsotropic, MatchesBruteForceSubgroupCount) {
  // oracle: all subsets closed under addition, isotropic, with at most two generators
  for (const char* s : {"D4", "2A3", "D4+A1", "4A1", "A8", "2A4", "A3+D6"}) {
    const auto df = form_of(s);
    const auto els = all_elements(df);
    std::set<std::set<Element>> subgroups;
    for (const auto& x : els)
      for (const auto& y : els) {
        std::set<Element> span{Element(df.num_generators(), 0)};
        bool grew = true;
        while (grew) {
          grew = false;
          for (const auto& e : std::vector<Element>(span.begin(), span.end()))
            for (const auto* g : {&x, &y})
              grew |= span.insert(add(df, e, *g)).second;
        }
        bool iso = true;
        for (const auto& e : span) iso = iso && df.q_of(e) == 0;
        if (iso) subgroups.insert(span);
      }
    const auto pairs = enumerate_isotropic(df);
    EXPECT_EQ(pairs.size(), subgroups.size()) << s;
    for (const auto& p : pairs) {
      EXPECT_LE(p.subgroup.generators.size(), 2u);
      EXPECT_EQ(static_cast<std::int64_t>(p.complement.size()) * p.subgroup.order, df.order()) << s;
      for (const auto& g : p.subgroup.generators) EXPECT_EQ(df.q_of(g), 0);
    }
  }
}

TEST(QuotientForm, TrivialSubgroup) {
  const auto df = form_of("A2+A5");
  const auto q = quotient_form(p_part(df, 3), IsotropicSubgroup{});
  EXPECT_EQ(q.order(), 9);
  EXPECT_TRUE(forms_isomorphic(q, p_part(df, 3), false));
}

TEST(QuotientForm, D8SpinorGivesTrivial) {
  const auto df = form_of("D8");
  for (const auto& p : enumerate_isotropic(df))
    if (p.subgroup.order == 2) EXPECT_EQ(quotient_form(df, p.subgroup).order(), 1);
}

TEST(QuotientForm, SixA3HasSmallQuotient) {
  const auto df = form_of("6A3");
  bool found = false;
  for (const auto& p : enumerate_isotropic(df, [](const IsotropicSubgroup& a) { return a.order == 16; })) {
    const auto q = quotient_form(df, p.subgroup);
    EXPECT_EQ(q.order(), 16);
    EXPECT_EQ(quotient_length(df, p), q.length());
    found = found || q.length() <= 2;
  }
  EXPECT_TRUE(found);
}

TEST(QuotientForm, OrderLaw) {
  for (const char* s : {"D4", "2A3", "A8", "2A4", "A3+D6", "A15", "2A1+2D4"}) {
    const auto df = form_of(s);
    for (const auto& p : enumerate_isotropic(df)) {
      const auto q = quotient_form(df, p.subgroup);
      EXPECT_EQ(q.order() * p.subgroup.order * p.subgroup.order, df.order()) << s;
      EXPECT_EQ(quotient_length(df, p), q.length()) << s;
    }
  }
}

TEST(QuotientForm, RejectsNonIsotropic) {
  const auto df = form_of("A1");
  IsotropicSubgroup a;
  a.generators = {{1}};
  a.order = 2;
  EXPECT_THROW(quotient_form(df, a), DiscFormError);
}

TEST(FormsIsomorphic, Reflexive) {
  const auto df = form_of("A2+A4");
  EXPECT_TRUE(forms_isomorphic(df, df, false));
}

TEST(FormsIsomorphic, A1VersusE7) {
  EXPECT_FALSE(forms_isomorphic(form_of("A1"), form_of("E7"), false));
  EXPECT_TRUE(forms_isomorphic(form_of("A1"), form_of("E7"), true));
}

TEST(FormsIsomorphic, CyclicFive) {
  EXPECT_TRUE(forms_isomorphic(cyclic(5, Rational(2, 5)), cyclic(5, Rational(8, 5)), false));
  EXPECT_FALSE(forms_isomorphic(cyclic(5, Rational(2, 5)), cyclic(5, Rational(4, 5)), false));
}

TEST(FormsIsomorphic, LengthExceedsTwo) {
  EXPECT_THROW(forms_isomorphic(form_of("3A1"), form_of("3A1"), false), DiscFormError);
}

TEST(FormsIsomorphic, AgreesWithExhaustiveSearchAndIsEquivalence) {
  std::vector<DiscriminantForm> forms;
  for (const char* s : {"A1", "E7", "A3", "D5", "D7", "2A1", "D4", "D6", "A1+E7", "A7", "A15",
                        "2A3", "A1+A3", "A1+D5", "D4+A2", "A2", "E6", "2A2", "A8", "A4", "A1+A2"}) {
    const auto df = form_of(s);
    ASSERT_LE(df.order(), 16);
    forms.push_back(df);
  }
  const std::size_t n = forms.size();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      rel[i][j] = forms_isomorphic(forms[i], forms[j], false);
      ASSERT_EQ(static_cast<bool>(rel[i][j]), brute_isomorphic(forms[i], forms[j], false)) << i << "," << j;
      ASSERT_EQ(forms_isomorphic(forms[i], forms[j], true), brute_isomorphic(forms[i], forms[j], true))
          << i << "," << j;
    }
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_TRUE(rel[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(rel[i][j], rel[j][i]);
      for (std::size_t k = 0; k < n; ++k)
        if (rel[i][j] && rel[j][k]) EXPECT_TRUE(rel[i][k]);
    }
  }
}
