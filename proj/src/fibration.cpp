#include "ek3/fibration.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ek3 {

namespace {

struct FiberShape {
  std::vector<int> multiplicity;
  std::vector<std::tuple<std::size_t, std::size_t, std::uint8_t>> edges;
  std::size_t attach = 0;  // a multiplicity-1 vertex
};

FiberShape affine_shape(Component c) {
  FiberShape s;
  const std::size_t n = static_cast<std::size_t>(c.index);
  auto chain = [&](const std::vector<std::size_t>& vs) {
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) s.edges.emplace_back(vs[i], vs[i + 1], 1);
  };
  switch (c.family) {
    case Family::A:
      s.multiplicity.assign(n + 1, 1);
      if (n == 1) {
        s.edges.emplace_back(0, 1, 2);
      } else {
        for (std::size_t i = 0; i <= n; ++i) s.edges.emplace_back(i, (i + 1) % (n + 1), 1);
      }
      break;
    case Family::D: {
      // tips 0, 1 on spine vertex 2; spine 2 .. n-2; tips n-1, n on n-2
      s.multiplicity.assign(n + 1, 2);
      for (auto t : {std::size_t(0), std::size_t(1), n - 1, n}) s.multiplicity[t] = 1;
      s.edges.emplace_back(0, 2, 1);
      s.edges.emplace_back(1, 2, 1);
      for (std::size_t i = 2; i + 2 < n; ++i) s.edges.emplace_back(i, i + 1, 1);
      s.edges.emplace_back(n - 2, n - 1, 1);
      s.edges.emplace_back(n - 2, n, 1);
      break;
    }
    case Family::E:
      if (n == 6) {
        // arms 0-1, 2-3, 4-5 ending at the center 6
        s.multiplicity = {1, 2, 1, 2, 1, 2, 3};
        chain({0, 1, 6});
        chain({2, 3, 6});
        chain({4, 5, 6});
      } else if (n == 7) {
        s.multiplicity = {1, 2, 3, 4, 3, 2, 1, 2};
        chain({0, 1, 2, 3, 4, 5, 6});
        s.edges.emplace_back(3, 7, 1);
      } else {
        s.multiplicity = {1, 2, 3, 4, 5, 6, 4, 2, 3};
        chain({0, 1, 2, 3, 4, 5, 6, 7});
        s.edges.emplace_back(5, 8, 1);
      }
      break;
  }
  return s;
}

bool z1_holds(const FibrationGraph& g, std::span<const std::size_t> images) {
  std::vector<std::size_t> image(images.begin(), images.end());
  return covered_fibers(g, image) <= 1;
}

}  // namespace

FibrationGraph build_gamma_f(const RootType& sigma_f) {
  if (sigma_f.empty()) throw std::invalid_argument("build_gamma_f: empty root type");
  FibrationGraph g;
  g.fibers = sigma_f.components();
  std::size_t n = 1;
  for (const auto& c : g.fibers) n += static_cast<std::size_t>(c.index) + 1;
  g.graph = Graph(n);
  g.fiber_of.assign(n, -1);
  g.multiplicity.assign(n, 0);
  std::size_t offset = 1;
  for (std::size_t f = 0; f < g.fibers.size(); ++f) {
    const FiberShape shape = affine_shape(g.fibers[f]);
    for (std::size_t i = 0; i < shape.multiplicity.size(); ++i) {
      g.fiber_of[offset + i] = static_cast<int>(f);
      g.multiplicity[offset + i] = shape.multiplicity[i];
    }
    for (const auto& [i, j, w] : shape.edges) g.graph.set_weight(offset + i, offset + j, w);
    g.attached.push_back(offset + shape.attach);
    g.graph.set_weight(FibrationGraph::zero_section, offset + shape.attach, 1);
    offset += shape.multiplicity.size();
  }
  return g;
}

std::size_t covered_fibers(const FibrationGraph& g, const std::vector<std::size_t>& image) {
  std::vector<int> hit(g.fibers.size(), 0), total(g.fibers.size(), 0);
  for (std::size_t v = 1; v < g.graph.size(); ++v)
    if (g.is_mult_one(v)) ++total[static_cast<std::size_t>(g.fiber_of[v])];
  for (auto v : image)
    if (v != FibrationGraph::zero_section && g.is_mult_one(v)) ++hit[static_cast<std::size_t>(g.fiber_of[v])];
  std::size_t covered = 0;
  for (std::size_t f = 0; f < g.fibers.size(); ++f) covered += hit[f] == total[f];
  return covered;
}

std::optional<ZEmbedding> find_z_embedding(const RootType& delta, const RootType& sigma_f,
                                           bool mw_trivial, int eu_f, ZWitness witness) {
  if (!mw_trivial) throw NontrivialMwError("embedding search requires trivial Mordell-Weil group");
  const FibrationGraph g = build_gamma_f(sigma_f);
  const DynkinGraph pattern = dynkin_graph(delta);

  auto describe = [&](const Embedding& e) {
    ZEmbedding z;
    z.map = e;
    z.avoids_zero_section =
        std::find(e.begin(), e.end(), FibrationGraph::zero_section) == e.end();
    for (std::size_t f = 0; f < g.fibers.size() && !z.untouched_a1_fiber; ++f) {
      if (g.fibers[f] != Component{Family::A, 1}) continue;
      bool touched = false;
      for (auto v : e) touched = touched || g.fiber_of[v] == static_cast<int>(f);
      z.untouched_a1_fiber = !touched;
    }
    z.small_euler_number = eu_f <= 23;
    return z;
  };

  auto search = [&](std::vector<char> allowed) -> std::optional<ZEmbedding> {
    EmbeddingSearch options;
    options.allowed = std::move(allowed);
    options.partial = [&](std::span<const std::size_t>, std::span<const std::size_t> images) {
      return z1_holds(g, images);
    };
    auto e = graph_embeds(pattern, g.graph, options);
    if (!e) return std::nullopt;
    return describe(*e);
  };

  auto without = [&](auto&& excluded) {
    std::vector<char> allowed(g.graph.size(), 1);
    for (std::size_t v = 0; v < g.graph.size(); ++v)
      if (excluded(v)) allowed[v] = 0;
    return allowed;
  };
  auto avoid_zero = [&] {
    return search(without([](std::size_t v) { return v == FibrationGraph::zero_section; }));
  };
  auto avoid_a1 = [&]() -> std::optional<ZEmbedding> {
    for (std::size_t f = 0; f < g.fibers.size(); ++f) {
      if (g.fibers[f] != Component{Family::A, 1}) continue;
      if (auto z = search(without([&](std::size_t v) { return g.fiber_of[v] == static_cast<int>(f); })))
        return z;
    }
    return std::nullopt;
  };

  switch (witness) {
    case ZWitness::avoid_zero_section: return avoid_zero();
    case ZWitness::untouched_a1_fiber: return avoid_a1();
    case ZWitness::small_euler_number:
      if (eu_f > 23) return std::nullopt;
      return search({});
    case ZWitness::any:
      if (eu_f <= 23) return search({});
      if (auto z = avoid_zero()) return z;
      return avoid_a1();
  }
  return std::nullopt;
}

std::vector<Table1Row> read_table1(std::istream& in) {
  std::vector<Table1Row> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string x; std::getline(ls, x, ';');) f.push_back(x);
    if (f.size() != 5) throw std::invalid_argument("expected 5 ';'-separated fields: " + line);
    try {
      rows.push_back({std::stoi(f[0]), RootType::parse(f[1]), std::stoi(f[2]),
                      RootType::parse(f[3]), std::stoi(f[4])});
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string(e.what()) + " in: " + line);
    }
  }
  return rows;
}

std::vector<Table1Row> read_table1_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_table1(in);
}

std::optional<ZWitness> required_witness(int row) {
  switch (row) {
    case 20: case 28: case 39: case 41: case 85: return ZWitness::untouched_a1_fiber;
    case 30: case 37: case 57: case 63: return ZWitness::avoid_zero_section;
    default: return std::nullopt;
  }
}

bool Table1Report::partition_ok() const {
  return partition_errors.empty() && realized.size() + listed.size() == rank18_n2;
}

bool Table1Report::passed() const {
  if (!partition_ok()) return false;
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.passed(); });
}

namespace {

bool has_trivial_mw_entry(const std::vector<GoldenRow>& table2, int number, const RootType& sigma) {
  return std::any_of(table2.begin(), table2.end(), [&](const GoldenRow& r) {
    return r.number == number && r.triple.sigma == sigma && r.triple.mw.empty();
  });
}

}  // namespace

Table1Report verify_table1(const std::vector<Table1Row>& table1,
                           const std::vector<GoldenRow>& table2, unsigned jobs) {
  Table1Report report;
  report.rows.resize(table1.size());
  parallel_for(table1.size(), jobs, [&](std::size_t i) {
    const Table1Row& row = table1[i];
    Table1RowResult& r = report.rows[i];
    r.row = row;
    r.mw_trivial = has_trivial_mw_entry(table2, row.table2_no, row.sigma_f);
    r.eu_matches = eu_of(row.sigma_f) == row.eu;
    if (!r.mw_trivial) return;
    r.embedding = find_z_embedding(row.delta, row.sigma_f, true, row.eu);
    r.required = required_witness(row.row);
    if (r.required)
      r.required_found = find_z_embedding(row.delta, row.sigma_f, true, row.eu, *r.required).has_value();
  });

  std::set<std::string> trivial_sigmas, listed;
  for (const auto& r : table2)
    if (r.triple.mw.empty()) trivial_sigmas.insert(r.triple.sigma.to_string());
  for (const auto& r : table1) listed.insert(r.delta.to_string());
  const auto lists = enumerate_N_lists();
  report.rank18_n2 = lists.rank18_N2.size();
  for (const auto& s : lists.rank18_N2) {
    const bool realized = trivial_sigmas.count(s.to_string()) > 0;
    const bool in_table = listed.count(s.to_string()) > 0;
    if (realized) report.realized.push_back(s);
    if (in_table) report.listed.push_back(s);
    if (realized == in_table) report.partition_errors.push_back(s);
  }
  // every Table 1 configuration must itself be a rank-18 type with the length condition
  for (const auto& r : table1)
    if (rank_of(r.delta) != 18 || !check_N2(r.delta)) report.partition_errors.push_back(r.delta);
  return report;
}

RemarkReport verify_remark(const std::vector<GoldenRow>& table2) {
  auto entry_sigma = [&](int number) -> std::optional<RootType> {
    for (const auto& r : table2)
      if (r.number == number && r.triple.mw.empty()) return r.triple.sigma;
    return std::nullopt;
  };
  RemarkReport report;
  const auto s312 = entry_sigma(312);
  const auto s320 = entry_sigma(320);
  if (s312) {
    report.a19 = find_z_embedding(RootType::parse("A19"), *s312, true, eu_of(*s312));
    report.a20 = find_z_embedding(RootType::parse("A20"), *s312, true, eu_of(*s312));
  }
  if (s320) report.d19 = find_z_embedding(RootType::parse("D19"), *s320, true, eu_of(*s320));
  return report;
}

}  // namespace ek3
