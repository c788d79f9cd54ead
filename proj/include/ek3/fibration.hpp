#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ek3/classify.hpp"
#include "ek3/graph.hpp"
#include "ek3/root_type.hpp"

namespace ek3 {

/// Zero section O (vertex 0) plus the components of every reducible fiber,
/// each fiber drawn as the extended Dynkin diagram of its type.
struct FibrationGraph {
  Graph graph;
  std::vector<Component> fibers;
  /// Fiber index per vertex; -1 for O.
  std::vector<int> fiber_of;
  /// Component multiplicity per vertex; 0 for O.
  std::vector<int> multiplicity;
  /// The vertex of each fiber that meets O.
  std::vector<std::size_t> attached;

  static constexpr std::size_t zero_section = 0;
  bool is_mult_one(std::size_t v) const { return multiplicity[v] == 1; }
};

FibrationGraph build_gamma_f(const RootType& sigma_f);

/// Which part of the second condition a search must satisfy.
enum class ZWitness { any, avoid_zero_section, untouched_a1_fiber, small_euler_number };

struct ZEmbedding {
  Embedding map;
  bool avoids_zero_section = false;  // (Z2-a)
  bool untouched_a1_fiber = false;   // (Z2-b)
  bool small_euler_number = false;   // (Z2-c)
};

class NontrivialMwError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Number of fibers all of whose multiplicity-1 components are in `image`.
std::size_t covered_fibers(const FibrationGraph& g, const std::vector<std::size_t>& image);

/// Searches induced embeddings of Γ(delta) into Γ_f satisfying (Z1) and the
/// requested part of (Z2). Throws NontrivialMwError unless `mw_trivial`.
std::optional<ZEmbedding> find_z_embedding(const RootType& delta, const RootType& sigma_f,
                                           bool mw_trivial, int eu_f,
                                           ZWitness witness = ZWitness::any);

struct Table1Row {
  int row = 0;
  RootType delta;
  int table2_no = 0;
  RootType sigma_f;
  int eu = 0;
};

std::vector<Table1Row> read_table1(std::istream& in);
std::vector<Table1Row> read_table1_file(const std::string& path);

struct Table1RowResult {
  Table1Row row;
  bool mw_trivial = false;
  bool eu_matches = false;
  std::optional<ZEmbedding> embedding;
  /// Set for rows that need a specific witness kind.
  std::optional<ZWitness> required;
  bool required_found = true;
  bool passed() const { return mw_trivial && eu_matches && embedding && required_found; }
};

struct Table1Report {
  std::vector<Table1RowResult> rows;
  std::size_t rank18_n2 = 0;
  /// rank-18 types with the length condition that occur as Σ of a trivial-MW entry
  std::vector<RootType> realized;
  /// rank-18 types with the length condition listed in Table 1
  std::vector<RootType> listed;
  /// types violating the partition (either both or neither)
  std::vector<RootType> partition_errors;
  bool partition_ok() const;
  bool passed() const;
};

/// Table 1 rows that must admit a (Z2-b) or (Z2-a) witness specifically.
std::optional<ZWitness> required_witness(int row);

Table1Report verify_table1(const std::vector<Table1Row>& table1,
                           const std::vector<GoldenRow>& table2, unsigned jobs = 1);

struct RemarkReport {
  std::optional<ZEmbedding> a19;
  std::optional<ZEmbedding> d19;
  std::optional<ZEmbedding> a20;
  bool passed() const { return a19 && d19 && !a20; }
};

RemarkReport verify_remark(const std::vector<GoldenRow>& table2);

}  // namespace ek3
