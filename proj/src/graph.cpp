#include "ek3/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ek3 {

void Graph::set_weight(std::size_t i, std::size_t j, std::uint8_t w) {
  w_[i * n_ + j] = w;
  w_[j * n_ + i] = w;
}

std::size_t Graph::simple_degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t j = 0; j < n_; ++j)
    if (weight(i, j) == 1) ++d;
  return d;
}

std::vector<std::size_t> Graph::neighbours(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n_; ++j)
    if (weight(i, j) != 0) out.push_back(j);
  return out;
}

std::size_t Graph::num_edges() const {
  std::size_t e = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (weight(i, j) != 0) ++e;
  return e;
}

DynkinGraph dynkin_graph(const RootType& s) {
  DynkinGraph g;
  g.components = s.components();
  g.graph = Graph(static_cast<std::size_t>(rank_of(s)));
  std::size_t offset = 0;
  for (std::size_t k = 0; k < g.components.size(); ++k) {
    const IntMatrix block = cartan_block(g.components[k]);
    for (std::size_t i = 0; i < block.rows(); ++i) {
      g.component_of.push_back(k);
      for (std::size_t j = i + 1; j < block.rows(); ++j)
        if (block(i, j) != 0) g.graph.set_weight(offset + i, offset + j, 1);
    }
    offset += block.rows();
  }
  return g;
}

namespace {

struct SearchPlan {
  std::vector<std::size_t> order;              // pattern vertex at each position
  std::vector<std::ptrdiff_t> parent;          // position of BFS parent, or -1
  std::vector<std::ptrdiff_t> symmetric_root;  // root position of previous identical component
  std::vector<std::size_t> degree;             // simple degree of order[pos]
};

SearchPlan make_plan(const DynkinGraph& pattern) {
  const Graph& g = pattern.graph;
  std::vector<std::vector<std::size_t>> members(pattern.components.size());
  for (std::size_t v = 0; v < g.size(); ++v) members[pattern.component_of[v]].push_back(v);

  std::vector<std::size_t> comps(pattern.components.size());
  std::iota(comps.begin(), comps.end(), 0);
  std::stable_sort(comps.begin(), comps.end(), [&](std::size_t a, std::size_t b) {
    if (members[a].size() != members[b].size()) return members[a].size() > members[b].size();
    return pattern.components[a] < pattern.components[b];
  });

  SearchPlan plan;
  std::vector<std::ptrdiff_t> position(g.size(), -1);
  std::ptrdiff_t previous_root = -1;
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& mem = members[comps[ci]];
    std::size_t root = mem.front();
    for (auto v : mem)
      if (g.simple_degree(v) > g.simple_degree(root)) root = v;
    const bool same_as_previous =
        ci > 0 && pattern.components[comps[ci]] == pattern.components[comps[ci - 1]];
    const std::ptrdiff_t root_pos = static_cast<std::ptrdiff_t>(plan.order.size());
    plan.order.push_back(root);
    plan.parent.push_back(-1);
    plan.symmetric_root.push_back(same_as_previous ? previous_root : -1);
    position[root] = root_pos;
    for (std::size_t head = static_cast<std::size_t>(root_pos); head < plan.order.size(); ++head) {
      const std::size_t u = plan.order[head];
      for (std::size_t w = 0; w < g.size(); ++w) {
        if (g.weight(u, w) == 0 || position[w] >= 0) continue;
        position[w] = static_cast<std::ptrdiff_t>(plan.order.size());
        plan.order.push_back(w);
        plan.parent.push_back(static_cast<std::ptrdiff_t>(head));
        plan.symmetric_root.push_back(-1);
      }
    }
    previous_root = root_pos;
  }
  for (auto v : plan.order) plan.degree.push_back(g.simple_degree(v));
  return plan;
}

class Searcher {
 public:
  Searcher(const DynkinGraph& pattern, const Graph& target,
           const std::function<bool(const Embedding&)>& visit, const EmbeddingSearch& options)
      : pattern_(pattern.graph), target_(target), visit_(visit), options_(options),
        plan_(make_plan(pattern)), images_(plan_.order.size()), used_(target.size(), 0) {
    for (std::size_t t = 0; t < target.size(); ++t) target_degree_.push_back(target.simple_degree(t));
  }

  bool run() {
    if (plan_.order.size() > target_.size()) return true;
    return assign(0);
  }

 private:
  bool admissible(std::size_t pos, std::size_t t) const {
    if (used_[t]) return false;
    if (!options_.allowed.empty() && !options_.allowed[t]) return false;
    if (target_degree_[t] < plan_.degree[pos]) return false;
    const std::size_t v = plan_.order[pos];
    for (std::size_t q = 0; q < pos; ++q)
      if (pattern_.weight(v, plan_.order[q]) != target_.weight(t, images_[q])) return false;
    return true;
  }

  bool try_candidate(std::size_t pos, std::size_t t) {
    if (!admissible(pos, t)) return true;
    images_[pos] = t;
    used_[t] = 1;
    bool keep_going = true;
    if (!options_.partial ||
        options_.partial(std::span(plan_.order).first(pos + 1), std::span(images_).first(pos + 1)))
      keep_going = assign(pos + 1);
    used_[t] = 0;
    return keep_going;
  }

  bool assign(std::size_t pos) {
    if (pos == plan_.order.size()) {
      Embedding e(pattern_.size());
      for (std::size_t p = 0; p < pos; ++p) e[plan_.order[p]] = images_[p];
      return visit_(e);
    }
    if (plan_.parent[pos] >= 0) {
      const std::size_t anchor = images_[static_cast<std::size_t>(plan_.parent[pos])];
      for (std::size_t t = 0; t < target_.size(); ++t)
        if (target_.weight(anchor, t) == 1 && !try_candidate(pos, t)) return false;
      return true;
    }
    std::size_t start = 0;
    if (plan_.symmetric_root[pos] >= 0)
      start = images_[static_cast<std::size_t>(plan_.symmetric_root[pos])] + 1;
    for (std::size_t t = start; t < target_.size(); ++t)
      if (!try_candidate(pos, t)) return false;
    return true;
  }

  const Graph& pattern_;
  const Graph& target_;
  const std::function<bool(const Embedding&)>& visit_;
  const EmbeddingSearch& options_;
  SearchPlan plan_;
  std::vector<std::size_t> images_;
  std::vector<char> used_;
  std::vector<std::size_t> target_degree_;
};

}  // namespace

bool for_each_embedding(const DynkinGraph& pattern, const Graph& target,
                        const std::function<bool(const Embedding&)>& visit,
                        const EmbeddingSearch& options) {
  return Searcher(pattern, target, visit, options).run();
}

std::optional<Embedding> graph_embeds(const DynkinGraph& pattern, const Graph& target,
                                      const EmbeddingSearch& options) {
  std::optional<Embedding> found;
  for_each_embedding(
      pattern, target,
      [&](const Embedding& e) {
        found = e;
        return false;
      },
      options);
  return found;
}

bool is_induced_embedding(const Graph& pattern, const Graph& target, const Embedding& image) {
  if (image.size() != pattern.size()) return false;
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] >= target.size()) return false;
    for (std::size_t j = 0; j < image.size(); ++j) {
      if (i == j) continue;
      if (image[i] == image[j]) return false;
      const std::uint8_t want = pattern.weight(i, j) != 0 ? 1 : 0;
      if (target.weight(image[i], image[j]) != want) return false;
    }
  }
  return true;
}

ExtensionReport verify_extension_lemma() {
  const NLists lists = enumerate_N_lists();
  ExtensionReport report;
  report.rank18_count = lists.rank18_N2.size();

  std::map<std::string, std::size_t> target_index;
  std::vector<Graph> targets;
  for (const auto& s : lists.rank18_N2) {
    target_index.emplace(s.to_string(), targets.size());
    targets.push_back(dynkin_graph(s).graph);
  }

  std::vector<const RootType*> by_rank;
  for (const auto& s : lists.all_N2) by_rank.push_back(&s);
  std::stable_sort(by_rank.begin(), by_rank.end(), [](const RootType* a, const RootType* b) {
    return rank_of(*a) > rank_of(*b);
  });

  std::map<std::string, std::size_t> witness;
  for (const RootType* sp : by_rank) {
    const RootType& s = *sp;
    const std::string key = s.to_string();
    const DynkinGraph g = dynkin_graph(s);

    std::vector<std::size_t> tried;
    auto attempt = [&](std::size_t t) {
      if (std::find(tried.begin(), tried.end(), t) != tried.end()) return false;
      tried.push_back(t);
      return graph_embeds(g, targets[t]).has_value();
    };

    std::optional<std::size_t> found;
    if (auto it = target_index.find(key); it != target_index.end() && attempt(it->second))
      found = it->second;

    // witnesses of one-step enlargements first
    std::vector<RootType> parents{s.plus({Family::A, 1})};
    for (const auto& [c, m] : s.terms()) {
      if (c.family == Family::E && c.index == 8) continue;
      Component bigger = c;
      ++bigger.index;
      parents.push_back(s.minus(c).plus(bigger));
    }
    for (const auto& p : parents) {
      if (found) break;
      if (auto it = witness.find(p.to_string()); it != witness.end() && attempt(it->second))
        found = it->second;
    }
    for (std::size_t t = 0; !found && t < targets.size(); ++t)
      if (attempt(t)) found = t;

    ++report.checked;
    if (found) {
      witness[key] = *found;
    } else {
      report.failures.push_back(s);
    }
  }
  for (const auto& s : lists.all_N2) {
    auto it = witness.find(s.to_string());
    if (it != witness.end()) report.witnesses.emplace_back(s, lists.rank18_N2[it->second]);
  }
  return report;
}

}  // namespace ek3
