#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ek3/lattice.hpp"

namespace ek3 {

enum class Family : std::uint8_t { A, D, E };

struct Component {
  Family family = Family::A;
  int index = 1;

  auto operator<=>(const Component&) const = default;
};

class RootTypeParseError : public std::invalid_argument {
 public:
  RootTypeParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A formal sum of ADE symbols, kept as (component, multiplicity) pairs in
/// canonical order: A < D < E, then by index.
class RootType {
 public:
  RootType() = default;
  explicit RootType(std::vector<std::pair<Component, int>> terms);

  static RootType parse(std::string_view text);
  std::string to_string() const;

  const std::vector<std::pair<Component, int>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// Components with multiplicity expanded, canonical order.
  std::vector<Component> components() const;
  int multiplicity(Component c) const;

  RootType operator+(const RootType& other) const;
  RootType plus(Component c, int mult = 1) const;
  /// Removes one copy of c; throws if absent.
  RootType minus(Component c) const;

  bool operator==(const RootType&) const = default;
  /// Orders by canonical string.
  bool operator<(const RootType& other) const { return to_string() < other.to_string(); }

 private:
  std::vector<std::pair<Component, int>> terms_;
};

bool valid_component(Component c);
std::string to_string(Component c);

int rank_of(const RootType& s);
std::int64_t root_count_formula(const RootType& s);
int eu_of(const RootType& s);

/// Negated Cartan matrix of a single component.
IntMatrix cartan_block(Component c);
/// Block diagonal of negated Cartan matrices in canonical component order.
IntegralLattice gram_of(const RootType& s);

/// Length of the discriminant group of L(s).
std::size_t discriminant_length(const RootType& s);

/// All root types of rank 18 with eu <= 24, sorted by canonical string.
std::vector<RootType> enumerate_list_L();
/// length(D_L) <= 20 - rank.
bool check_N2(const RootType& s);

struct NLists {
  std::vector<RootType> rank18_N2;
  std::vector<RootType> all_N2;
};
/// Root types satisfying the length condition: rank exactly 18 and every rank <= 18.
NLists enumerate_N_lists();

/// All root types of exactly the given rank, sorted by canonical string.
std::vector<RootType> enumerate_rank(int rank);

}  // namespace ek3
