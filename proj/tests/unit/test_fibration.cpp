#include <gtest/gtest.h>

#include <sstream>

#include "ek3/fibration.hpp"

using namespace ek3;

namespace {

RootType rt(const char* s) { return RootType::parse(s); }

std::vector<Component> all_components(int max_n) {
  std::vector<Component> out;
  for (int n = 1; n <= max_n; ++n) out.push_back({Family::A, n});
  for (int n = 4; n <= max_n; ++n) out.push_back({Family::D, n});
  for (int n = 6; n <= 8; ++n) out.push_back({Family::E, n});
  return out;
}

std::string data_file(const char* name) { return std::string(EK3_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST(GammaF, A1) {
  const auto g = build_gamma_f(rt("A1"));
  ASSERT_EQ(g.graph.size(), 3u);
  EXPECT_EQ(g.graph.weight(1, 2), 2);
  EXPECT_EQ(g.graph.simple_degree(0), 1u);
  EXPECT_EQ(g.graph.weight(0, g.attached[0]), 1);
}

TEST(GammaF, E8Multiplicities) {
  const auto g = build_gamma_f(rt("E8"));
  ASSERT_EQ(g.graph.size(), 10u);
  std::vector<int> m(g.multiplicity.begin() + 1, g.multiplicity.end());
  std::sort(m.begin(), m.end());
  EXPECT_EQ(m, (std::vector<int>{1, 2, 2, 3, 3, 4, 4, 5, 6}));
}

TEST(GammaF, VertexCount) { EXPECT_EQ(build_gamma_f(rt("A10+E8")).graph.size(), 21u); }

TEST(GammaF, RejectsEmpty) { EXPECT_THROW(build_gamma_f(RootType()), std::invalid_argument); }

TEST(GammaF, InvariantsForEveryType) {
  for (const auto& c : all_components(18)) {
    const RootType s({{c, 1}});
    const auto g = build_gamma_f(s);
    const std::size_t n = g.graph.size();
    ASSERT_EQ(n, static_cast<std::size_t>(c.index) + 2);
    // multiplicities span the kernel of the affine Cartan matrix, minimum 1
    int min_mult = 100;
    for (std::size_t v = 1; v < n; ++v) {
      int sum = 2 * g.multiplicity[v];
      for (std::size_t w = 1; w < n; ++w)
        if (w != v) sum -= g.graph.weight(v, w) * g.multiplicity[w];
      EXPECT_EQ(sum, 0) << s.to_string() << " vertex " << v;
      min_mult = std::min(min_mult, g.multiplicity[v]);
    }
    EXPECT_EQ(min_mult, 1);
    // O meets exactly one component, of multiplicity one
    EXPECT_EQ(g.graph.neighbours(0).size(), 1u);
    EXPECT_EQ(g.multiplicity[g.graph.neighbours(0)[0]], 1);
    // deleting that component leaves the finite diagram
    std::vector<char> allowed(n, 1);
    allowed[0] = 0;
    allowed[g.attached[0]] = 0;
    EmbeddingSearch opt;
    opt.allowed = allowed;
    EXPECT_TRUE(graph_embeds(dynkin_graph(s), g.graph, opt)) << s.to_string();
    std::size_t edges = 0;
    for (std::size_t v = 1; v < n; ++v)
      for (std::size_t w = v + 1; w < n; ++w)
        if (allowed[v] && allowed[w] && g.graph.weight(v, w)) ++edges;
    EXPECT_EQ(edges, dynkin_graph(s).graph.num_edges()) << s.to_string();
  }
}

TEST(CoveredFibers, MonotoneInImage) {
  const auto g = build_gamma_f(rt("E8+E7+A3"));
  std::vector<std::size_t> image;
  std::size_t last = 0;
  for (std::size_t v = 0; v < g.graph.size(); ++v) {
    image.push_back(v);
    const std::size_t now = covered_fibers(g, image);
    EXPECT_GE(now, last);
    last = now;
  }
  EXPECT_EQ(last, 3u);
}

TEST(FindZEmbedding, RequiresTrivialMw) {
  EXPECT_THROW(find_z_embedding(rt("A1"), rt("A10+E8"), false, 21), NontrivialMwError);
}

TEST(FindZEmbedding, Table1Row15) {
  const auto z = find_z_embedding(rt("A7+A11"), rt("A10+E8"), true, 21);
  ASSERT_TRUE(z);
  EXPECT_TRUE(z->small_euler_number);
  const auto g = build_gamma_f(rt("A10+E8"));
  EXPECT_TRUE(is_induced_embedding(dynkin_graph(rt("A7+A11")).graph, g.graph, z->map));
  EXPECT_LE(covered_fibers(g, z->map), 1u);
}

TEST(FindZEmbedding, WitnessKinds) {
  const auto t1 = read_table1_file(data_file("table1.csv"));
  auto row = [&](int n) {
    for (const auto& r : t1)
      if (r.row == n) return r;
    throw std::runtime_error("row missing");
  };
  const auto r20 = row(20);
  const auto b = find_z_embedding(r20.delta, r20.sigma_f, true, r20.eu, ZWitness::untouched_a1_fiber);
  ASSERT_TRUE(b);
  EXPECT_TRUE(b->untouched_a1_fiber);
  const auto r30 = row(30);
  const auto a = find_z_embedding(r30.delta, r30.sigma_f, true, r30.eu, ZWitness::avoid_zero_section);
  ASSERT_TRUE(a);
  EXPECT_TRUE(a->avoids_zero_section);
}

TEST(FindZEmbedding, Z1Enforced) {
  // a path through O may fully cover at most one fiber's multiplicity-one components
  const auto g = build_gamma_f(rt("2E8+A2"));
  std::vector<std::size_t> e8;
  for (std::size_t f = 0; f < g.fibers.size(); ++f)
    if (g.fibers[f].family == Family::E) e8.push_back(g.attached[f]);
  ASSERT_EQ(e8.size(), 2u);
  EXPECT_EQ(covered_fibers(g, e8), 2u);
  EXPECT_TRUE(find_z_embedding(rt("A11"), rt("2E8+A2"), true, 23));
  EXPECT_FALSE(find_z_embedding(rt("A12"), rt("2E8+A2"), true, 23));
  EXPECT_FALSE(find_z_embedding(rt("A17"), rt("2E8+A2"), true, 23));
}

TEST(FindZEmbedding, Z2RequiredWhenEulerNumberIs24) {
  // Γ_f(A1) with eu 24: the only nonempty images either use O or touch the A1 fiber
  EXPECT_FALSE(find_z_embedding(rt("A2"), rt("A1"), true, 24));
  EXPECT_TRUE(find_z_embedding(rt("A2"), rt("A1"), true, 23));
}

TEST(Table1, ReadsRows) {
  std::istringstream in("15;A7+A11;312;A10+E8;21\n");
  const auto rows = read_table1(in);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].table2_no, 312);
  EXPECT_EQ(rows[0].sigma_f.to_string(), "A10+E8");
}

TEST(Table1, AllRowsPass) {
  const auto rep = verify_table1(read_table1_file(data_file("table1.csv")),
                                 read_golden_file(data_file("table2.csv")));
  EXPECT_EQ(rep.rows.size(), 98u);
  for (const auto& r : rep.rows) EXPECT_TRUE(r.passed()) << "row " << r.row.row;
  EXPECT_EQ(rep.rank18_n2, 297u);
  EXPECT_EQ(rep.realized.size(), 199u);
  EXPECT_EQ(rep.listed.size(), 98u);
  EXPECT_TRUE(rep.partition_ok());
}

TEST(LongChains, A19AndD19) {
  const auto rep = verify_remark(read_golden_file(data_file("table2.csv")));
  EXPECT_TRUE(rep.a19);
  EXPECT_TRUE(rep.d19);
  EXPECT_FALSE(rep.a20);
}
