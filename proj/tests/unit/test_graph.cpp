#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ek3/graph.hpp"

using namespace ek3;

namespace {

DynkinGraph dg(const char* s) { return dynkin_graph(RootType::parse(s)); }

// Exhaustive oracle: try every injective map.
bool brute_embeds(const Graph& p, const Graph& t) {
  if (p.size() > t.size()) return false;
  std::vector<std::size_t> image(p.size());
  std::vector<char> used(t.size(), 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == p.size()) return is_induced_embedding(p, t, image);
    for (std::size_t v = 0; v < t.size(); ++v) {
      if (used[v]) continue;
      used[v] = 1;
      image[i] = v;
      const bool ok = go(i + 1);
      used[v] = 0;
      if (ok) return true;
    }
    return false;
  };
  return go(0);
}

}  // namespace

TEST(GraphEmbeds, Examples) {
  EXPECT_TRUE(graph_embeds(dg("A2"), dg("A3").graph));
  for (int n = 1; n <= 12; ++n)
    EXPECT_FALSE(graph_embeds(dg("D4"), dynkin_graph(RootType({{{Family::A, n}, 1}})).graph));
  EXPECT_TRUE(graph_embeds(dg("2A1"), dg("A3").graph));
  EXPECT_FALSE(graph_embeds(dg("3A1"), dg("A3").graph));
  EXPECT_FALSE(graph_embeds(dg("A3"), dg("A1+A2").graph));
}

TEST(GraphEmbeds, InducedAcrossComponents) {
  // A1+A1 into A2 would need two non-adjacent vertices
  EXPECT_FALSE(graph_embeds(dg("2A1"), dg("A2").graph));
  EXPECT_TRUE(graph_embeds(dg("A1+A2"), dg("A4").graph));
  EXPECT_FALSE(graph_embeds(dg("A1+A3"), dg("A4").graph));
}

TEST(GraphEmbeds, Reflexive) {
  for (const char* s : {"A5", "D6+E7", "2A2+A4+A6+D4", "E8"}) {
    const auto g = dg(s);
    const auto e = graph_embeds(g, g.graph);
    ASSERT_TRUE(e) << s;
    EXPECT_TRUE(is_induced_embedding(g.graph, g.graph, *e));
  }
}

TEST(GraphEmbeds, AgreesWithExhaustiveSearch) {
  std::vector<RootType> small;
  for (int r = 1; r <= 5; ++r)
    for (auto& s : enumerate_rank(r)) small.push_back(s);
  std::vector<RootType> targets;
  for (int r = 4; r <= 7; ++r)
    for (auto& s : enumerate_rank(r)) targets.push_back(s);
  std::mt19937_64 rng(2);
  std::shuffle(targets.begin(), targets.end(), rng);
  targets.resize(25);
  for (const auto& p : small)
    for (const auto& t : targets) {
      const auto pg = dynkin_graph(p), tg = dynkin_graph(t);
      const auto e = graph_embeds(pg, tg.graph);
      ASSERT_EQ(e.has_value(), brute_embeds(pg.graph, tg.graph)) << p.to_string() << " -> " << t.to_string();
      if (e) ASSERT_TRUE(is_induced_embedding(pg.graph, tg.graph, *e));
    }
}

TEST(GraphEmbeds, EveryEnumeratedEmbeddingIsInduced) {
  const auto p = dg("A1+A2"), t = dg("D5+A3");
  std::size_t count = 0;
  for_each_embedding(p, t.graph, [&](const Embedding& e) {
    EXPECT_TRUE(is_induced_embedding(p.graph, t.graph, e));
    ++count;
    return true;
  });
  EXPECT_GT(count, 0u);
}

TEST(GraphEmbeds, CompositionIsEmbedding) {
  const auto a = dg("A2+A1"), b = dg("A5"), c = dg("D7");
  const auto f = graph_embeds(a, b.graph);
  const auto g = graph_embeds(b, c.graph);
  ASSERT_TRUE(f && g);
  Embedding h(f->size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = (*g)[(*f)[i]];
  EXPECT_TRUE(is_induced_embedding(a.graph, c.graph, h));
}

TEST(GraphEmbeds, AllowedMaskRespected) {
  const auto p = dg("A2"), t = dg("A3");
  EmbeddingSearch opt;
  opt.allowed = {0, 1, 1};
  const auto e = graph_embeds(p, t.graph, opt);
  ASSERT_TRUE(e);
  for (auto v : *e) EXPECT_NE(v, 0u);
  opt.allowed = {1, 0, 1};
  EXPECT_FALSE(graph_embeds(p, t.graph, opt));
}

TEST(ExtensionLemma, NoFailures) {
  const auto rep = verify_extension_lemma();
  EXPECT_EQ(rep.rank18_count, 297u);
  EXPECT_EQ(rep.checked, enumerate_N_lists().all_N2.size());
  EXPECT_TRUE(rep.failures.empty());
  for (const auto& [s, w] : rep.witnesses) {
    if (s.to_string() == "D10+E8") EXPECT_EQ(w, s);
    if (rank_of(s) == 18) EXPECT_EQ(w, s);
    if (s.to_string() == "A1") EXPECT_EQ(rank_of(w), 18);
    EXPECT_TRUE(graph_embeds(dynkin_graph(s), dynkin_graph(w).graph));
  }
}
