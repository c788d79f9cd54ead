#include "ek3/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ek3/binary_form.hpp"
#include "ek3/classify.hpp"
#include "ek3/disc_form.hpp"
#include "ek3/fibration.hpp"
#include "ek3/graph.hpp"
#include "ek3/lattice.hpp"
#include "ek3/root_type.hpp"

#ifndef EK3_DATA_DIR
#define EK3_DATA_DIR "data"
#endif

namespace ek3 {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_inputs(const RunConfig& c, std::size_t min, std::size_t max) {
  if (c.inputs.size() < min || c.inputs.size() > max)
    throw UsageError(c.subcommand + ": wrong number of arguments");
}

std::string input_or(const RunConfig& c, std::size_t i, const std::string& fallback) {
  return resolve_data_path(i < c.inputs.size() ? c.inputs[i] : fallback);
}

void require_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("no such file: " + path);
}

json triple_json(const DataTriple& t, std::optional<int> number = std::nullopt) {
  json j;
  if (number) j["no"] = *number;
  j["sigma"] = t.sigma.to_string();
  j["mw"] = t.mw;
  j["a"] = t.t.a;
  j["b"] = t.t.b;
  j["c"] = t.t.c;
  j["fiber_count"] = class_fiber_count(t.t);
  return j;
}

void print_triples(const std::vector<DataTriple>& triples, const RunConfig& c, std::ostream& out) {
  if (c.format == OutputFormat::json) {
    json arr = json::array();
    for (const auto& t : triples) arr.push_back(triple_json(t));
    out << arr.dump(2) << '\n';
    return;
  }
  for (const auto& t : triples) out << to_csv(t) << '\n';
}

void print_root_types(const std::vector<RootType>& types, const RunConfig& c, std::ostream& out) {
  if (c.format == OutputFormat::json) {
    json arr = json::array();
    for (const auto& s : types)
      arr.push_back({{"sigma", s.to_string()}, {"rank", rank_of(s)}, {"eu", eu_of(s)},
                     {"roots", root_count_formula(s)}, {"length", discriminant_length(s)}});
    out << arr.dump(2) << '\n';
    return;
  }
  for (const auto& s : types) out << s.to_string() << '\n';
}

std::string witness_name(const ZEmbedding& z) {
  std::string out;
  if (z.avoids_zero_section) out += "Z2-a";
  if (z.untouched_a1_fiber) out += std::string(out.empty() ? "" : ",") + "Z2-b";
  if (z.small_euler_number) out += std::string(out.empty() ? "" : ",") + "Z2-c";
  return out;
}

std::string map_string(const Embedding& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) out += (i ? " " : "") + std::to_string(e[i]);
  return out;
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 0, 0);
  print_triples(classify_all(c.jobs), c, out);
  return exit_ok;
}

int cmd_classify_one(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 1, 1);
  const RootType s = RootType::parse(c.inputs[0]);
  if (rank_of(s) != 18 || eu_of(s) > 24)
    throw UsageError("classify-one: root type must have rank 18 and eu <= 24");
  print_triples(classify_one(s), c, out);
  return exit_ok;
}

int cmd_verify_table2(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 0, 1);
  const std::string golden = input_or(c, 0, "data/table2.csv");
  require_file(golden);
  std::vector<DataTriple> computed;
  if (c.computed) {
    require_file(*c.computed);
    for (auto& r : read_golden_file(*c.computed)) computed.push_back(std::move(r.triple));
  } else {
    computed = classify_all(c.jobs);
  }
  const DiffReport diff = compare_golden(computed, golden);
  for (const auto& t : diff.missing) out << "- " << to_csv(t) << '\n';
  for (const auto& t : diff.unexpected) out << "+ " << to_csv(t) << '\n';
  out << "diff: " << diff.size() << '\n';
  return diff.empty() ? exit_ok : exit_diff;
}

int cmd_verify_table1(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 0, 2);
  const std::string t1 = input_or(c, 0, "data/table1.csv");
  const std::string t2 = input_or(c, 1, "data/table2.csv");
  require_file(t1);
  require_file(t2);
  const Table1Report rep = verify_table1(read_table1_file(t1), read_golden_file(t2), c.jobs);
  std::size_t failed = 0;
  for (const auto& r : rep.rows) {
    failed += !r.passed();
    if (c.verbosity == 0 && r.passed()) continue;
    out << r.row.row << ';' << r.row.delta.to_string() << ';' << r.row.table2_no << ';'
        << (r.passed() ? "pass" : "FAIL");
    if (r.embedding) out << ';' << witness_name(*r.embedding);
    if (!r.mw_trivial) out << ";entry has nontrivial MW";
    if (!r.eu_matches) out << ";eu mismatch";
    if (!r.required_found) out << ";required witness not found";
    out << '\n';
  }
  out << "rows: " << rep.rows.size() << " failed: " << failed << '\n';
  out << "rank-18 types with length condition: " << rep.rank18_n2 << " = " << rep.realized.size()
      << " realized + " << rep.listed.size() << " listed\n";
  for (const auto& s : rep.partition_errors) out << "partition error: " << s.to_string() << '\n';
  return rep.passed() ? exit_ok : exit_diff;
}

int cmd_verify_remark(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 0, 1);
  const std::string t2 = input_or(c, 0, "data/table2.csv");
  require_file(t2);
  const RemarkReport rep = verify_remark(read_golden_file(t2));
  auto line = [&](const char* what, const std::optional<ZEmbedding>& z) {
    out << what << ": " << (z ? "found " + witness_name(*z) + " [" + map_string(z->map) + "]" : "none")
        << '\n';
  };
  line("A19 into no. 312", rep.a19);
  line("D19 into no. 320", rep.d19);
  line("A20 into no. 312", rep.a20);
  out << (rep.passed() ? "pass" : "FAIL") << '\n';
  return rep.passed() ? exit_ok : exit_diff;
}

int cmd_root_types(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 0, 0);
  std::vector<RootType> types;
  if (c.n2) {
    const auto lists = enumerate_N_lists();
    for (const auto& s : lists.all_N2)
      if (!c.rank || rank_of(s) == *c.rank) types.push_back(s);
  } else {
    for (auto& s : enumerate_rank(c.rank.value_or(18)))
      if (eu_of(s) <= 24) types.push_back(std::move(s));
  }
  print_root_types(types, c, out);
  return exit_ok;
}

int cmd_reduce_form(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 3, 3);
  BinaryEvenForm f;
  try {
    f = {std::stoll(c.inputs[0]), std::stoll(c.inputs[1]), std::stoll(c.inputs[2])};
    validate(f);
  } catch (const std::exception& e) {
    throw UsageError(std::string("reduce-form: ") + e.what());
  }
  out << to_string(c.sl2 ? reduce_sl2(f) : reduce_gl2(f)) << '\n';
  return exit_ok;
}

int cmd_count_roots(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 1, 1);
  require_file(c.inputs[0]);
  std::ifstream in(c.inputs[0]);
  IntegralLattice lat = [&] {
    try {
      return read_gram(in);
    } catch (const LatticeError& e) {
      throw UsageError(e.what());
    }
  }();
  out << count_roots(lat) << '\n';
  return exit_ok;
}

int cmd_disc_form(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 1, 1);
  const DiscriminantForm df = discriminant_form(gram_of(RootType::parse(c.inputs[0])));
  if (c.format == OutputFormat::json) {
    json j;
    j["orders"] = df.orders();
    j["q"] = json::array();
    j["b"] = json::array();
    for (std::size_t i = 0; i < df.num_generators(); ++i) {
      j["q"].push_back(to_string(df.q(i)));
      json row = json::array();
      for (std::size_t k = 0; k < df.num_generators(); ++k) row.push_back(to_string(df.b(i, k)));
      j["b"].push_back(row);
    }
    out << j.dump(2) << '\n';
    return exit_ok;
  }
  out << "orders:";
  for (auto o : df.orders()) out << ' ' << o;
  out << "\nq:";
  for (std::size_t i = 0; i < df.num_generators(); ++i) out << ' ' << to_string(df.q(i));
  out << "\nb:\n";
  for (std::size_t i = 0; i < df.num_generators(); ++i) {
    for (std::size_t k = 0; k < df.num_generators(); ++k) out << (k ? " " : "") << to_string(df.b(i, k));
    out << '\n';
  }
  return exit_ok;
}

int cmd_embed(const RunConfig& c, std::ostream& out) {
  require_inputs(c, 2, 2);
  const auto g1 = dynkin_graph(RootType::parse(c.inputs[0]));
  const auto g2 = dynkin_graph(RootType::parse(c.inputs[1]));
  const auto e = graph_embeds(g1, g2.graph);
  out << (e ? map_string(*e) : "none") << '\n';
  return exit_ok;
}

}  // namespace

unsigned default_jobs() {
  if (const char* env = std::getenv("EK3_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string resolve_data_path(const std::string& path) {
  if (std::filesystem::exists(path)) return path;
  const std::filesystem::path p(path);
  const auto installed = std::filesystem::path(EK3_DATA_DIR) / p.filename();
  if (p.parent_path().filename() == "data" || p.parent_path().empty())
    if (std::filesystem::exists(installed)) return installed.string();
  return path;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.jobs < 1) throw UsageError("--jobs must be at least 1");
    const std::string& s = config.subcommand;
    if (s == "classify") return cmd_classify(config, out);
    if (s == "classify-one") return cmd_classify_one(config, out);
    if (s == "verify-table2") return cmd_verify_table2(config, out);
    if (s == "verify-table1") return cmd_verify_table1(config, out);
    if (s == "verify-remark") return cmd_verify_remark(config, out);
    if (s == "root-types") return cmd_root_types(config, out);
    if (s == "reduce-form") return cmd_reduce_form(config, out);
    if (s == "count-roots") return cmd_count_roots(config, out);
    if (s == "disc-form") return cmd_disc_form(config, out);
    if (s == "embed") return cmd_embed(config, out);
    throw UsageError("unknown subcommand '" + s + "'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const RootTypeParseError& e) {
    err << "error: malformed root type: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal elliptic K3 lattice classification and verification", "ek3"};
  app.require_subcommand(1);
  RunConfig config;
  config.jobs = default_jobs();
  std::string format = "csv";
  app.add_option("--jobs,-j", config.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("-v,--verbose", config.verbosity, "more output");

  auto positional = [&](CLI::App* sub, const char* name, const char* help) {
    return sub->add_option(name, config.inputs, help);
  };
  auto* classify = app.add_subcommand("classify", "regenerate every data triple");
  auto* v2 = app.add_subcommand("verify-table2", "compare triples with a golden table");
  positional(v2, "golden", "golden table file");
  v2->add_option("--computed", config.computed, "use triples from this file instead of recomputing");
  auto* v1 = app.add_subcommand("verify-table1", "check the sub-configuration table");
  positional(v1, "tables", "table 1 file, then table 2 file");
  auto* vr = app.add_subcommand("verify-remark", "check the A19 and D19 embeddings");
  positional(vr, "golden", "table 2 file");
  auto* rt = app.add_subcommand("root-types", "list root types");
  rt->add_flag("--n2", config.n2, "root types of rank <= 18 with the length condition");
  rt->add_option("--rank", config.rank, "restrict to this rank");
  auto* one = app.add_subcommand("classify-one", "data triples for one root type");
  positional(one, "sigma", "root type")->required();
  auto* rf = app.add_subcommand("reduce-form", "reduce a binary form a b c");
  rf->add_option("form", config.inputs, "a b c")->expected(3)->required()->allow_extra_args(false);
  rf->add_flag("--sl2", config.sl2, "SL2 reduction instead of GL2");
  auto* cr = app.add_subcommand("count-roots", "count norm -2 vectors of a Gram matrix file");
  positional(cr, "gram", "Gram matrix file")->required();
  auto* dfc = app.add_subcommand("disc-form", "discriminant form of a root lattice");
  positional(dfc, "sigma", "root type")->required();
  auto* em = app.add_subcommand("embed", "induced embedding of Dynkin graphs");
  positional(em, "sigmas", "two root types")->required();

  for (auto* sub : {classify, v2, v1, vr, rt, one, rf, cr, dfc, em}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  config.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  config.subcommand = app.get_subcommands().front()->get_name();
  return run(config, out, err);
}

}  // namespace ek3
