#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ek3/binary_form.hpp"
#include "ek3/disc_form.hpp"
#include "ek3/lattice.hpp"
#include "ek3/root_type.hpp"

namespace ek3 {

/// (Σ, MW, T): root type, Mordell-Weil invariant factors (ascending, empty
/// for the trivial group) and the reduced transcendental form.
struct DataTriple {
  RootType sigma;
  std::vector<std::int64_t> mw;
  BinaryEvenForm t;

  /// "1" or dot-joined invariant factors.
  std::string mw_string() const;
  bool operator==(const DataTriple&) const = default;
};

/// Canonical order: sigma string, then mw, then (a, b, c).
bool canonical_less(const DataTriple& x, const DataTriple& y);

/// Per-candidate data kept for property checks.
struct AcceptedOverlattice {
  RootType sigma;
  /// Isotropic subgroup generators, one list per prime, in p-part coordinates.
  std::vector<std::pair<std::int64_t, IsotropicSubgroup>> subgroups;
  Overlattice overlattice;
  DiscriminantForm quotient;  // D_A = product of A_p^perp / A_p
};

struct ClassifyOptions {
  /// Invoked for every overlattice that passes the root condition.
  std::function<void(const AcceptedOverlattice&)> on_accepted;
};

/// All data triples with the given Σ. Requires rank 18 and eu <= 24.
std::vector<DataTriple> classify_one(const RootType& sigma, const ClassifyOptions& options = {});

/// classify_one over the 712 root types, canonically sorted. `jobs` worker
/// threads; the result does not depend on it.
std::vector<DataTriple> classify_all(unsigned jobs = 1);

/// Formats `sigma;mw;a;b;c`.
std::string to_csv(const DataTriple& t);
/// Parses `sigma;mw;a;b;c` or the numbered form `no;sigma;mw;a;b;c`.
DataTriple parse_triple(const std::string& line, std::optional<int>* number = nullptr);

struct GoldenRow {
  int number = 0;
  DataTriple triple;
};
std::vector<GoldenRow> read_golden(std::istream& in);
std::vector<GoldenRow> read_golden_file(const std::string& path);

struct DiffReport {
  std::vector<DataTriple> missing;     // in golden, not computed
  std::vector<DataTriple> unexpected;  // computed, not in golden
  std::size_t size() const { return missing.size() + unexpected.size(); }
  bool empty() const { return size() == 0; }
};

/// Symmetric difference of the two triple sets.
DiffReport compare_golden(const std::vector<DataTriple>& computed,
                          const std::vector<DataTriple>& golden);
DiffReport compare_golden(const std::vector<DataTriple>& computed, const std::string& golden_path);

/// Deterministic parallel map: out[i] = f(i), computed on `jobs` threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f);

}  // namespace ek3
