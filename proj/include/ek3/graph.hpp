#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ek3/root_type.hpp"

namespace ek3 {

/// Undirected graph with small non-negative integer edge weights (0 = no edge).
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), w_(n * n, 0) {}

  std::size_t size() const { return n_; }
  std::uint8_t weight(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  void set_weight(std::size_t i, std::size_t j, std::uint8_t w);
  /// Number of weight-1 neighbours.
  std::size_t simple_degree(std::size_t i) const;
  std::vector<std::size_t> neighbours(std::size_t i) const;
  std::size_t num_edges() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> w_;
};

/// Γ(Σ): disjoint union of the Dynkin diagrams of the components of Σ.
struct DynkinGraph {
  Graph graph;
  /// For every vertex, the index of its component in Σ.components().
  std::vector<std::size_t> component_of;
  std::vector<Component> components;
};

DynkinGraph dynkin_graph(const RootType& s);

/// image[i] is the target vertex of pattern vertex i.
using Embedding = std::vector<std::size_t>;

/// Called with the pattern vertices assigned so far (in search order) and
/// their images; returning false prunes the branch.
using PartialCheck = std::function<bool(std::span<const std::size_t> pattern_vertices,
                                        std::span<const std::size_t> images)>;

struct EmbeddingSearch {
  /// Restricts the admissible images; empty = all target vertices.
  std::vector<char> allowed;
  PartialCheck partial;
};

/// Enumerates induced embeddings of `pattern` into `target`: adjacent pattern
/// vertices go to weight-1 pairs, non-adjacent ones to weight-0 pairs.
/// Embeddings differing only by a permutation of isomorphic components of
/// the pattern are reported once. Returns false if `visit` stopped the search.
bool for_each_embedding(const DynkinGraph& pattern, const Graph& target,
                        const std::function<bool(const Embedding&)>& visit,
                        const EmbeddingSearch& options = {});

std::optional<Embedding> graph_embeds(const DynkinGraph& pattern, const Graph& target,
                                      const EmbeddingSearch& options = {});

/// Checks that `image` is an induced embedding in the weighted sense.
bool is_induced_embedding(const Graph& pattern, const Graph& target, const Embedding& image);

struct ExtensionReport {
  std::size_t checked = 0;
  std::size_t rank18_count = 0;
  std::vector<std::pair<RootType, RootType>> witnesses;  // (Σ, Σ') in input order
  std::vector<RootType> failures;
};

/// For every Σ of rank <= 18 with the length condition, finds a rank-18 Σ'
/// with the length condition such that Γ(Σ) embeds in Γ(Σ').
ExtensionReport verify_extension_lemma();

}  // namespace ek3
