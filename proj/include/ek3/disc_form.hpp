#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ek3/lattice.hpp"
#include "ek3/numeric.hpp"

namespace ek3 {

class DiscFormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group element as coordinates over the cyclic generators.
using Element = std::vector<std::int64_t>;

/// A finite abelian group D = Z/n_1 + ... + Z/n_k (direct sum of the listed
/// cyclic generators) with a Q/2Z-valued quadratic form q and the Q/Z-valued
/// bilinear form b attached to it.
///
/// q values are kept reduced into [0, 2), b values into [0, 1). When the
/// form comes from a lattice, each generator also carries a representative
/// vector of L^v in coordinates of L.
class DiscriminantForm {
 public:
  /// The trivial form.
  DiscriminantForm() = default;

  /// `b` is a symmetric k x k matrix; its diagonal is replaced by q mod 1.
  DiscriminantForm(std::vector<std::int64_t> orders, std::vector<Rational> q, RatMatrix b,
                   std::vector<RationalVector> carriers = {});

  std::size_t num_generators() const { return orders_.size(); }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  const Rational& q(std::size_t i) const { return q_[i]; }
  const Rational& b(std::size_t i, std::size_t j) const { return b_(i, j); }
  bool has_carriers() const { return !carriers_.empty(); }
  const std::vector<RationalVector>& carriers() const { return carriers_; }

  /// |D|
  std::int64_t order() const;
  /// Minimal number of generators.
  std::size_t length() const;
  /// Invariant factors ascending, each dividing the next.
  std::vector<std::int64_t> invariant_factors() const;

  Rational q_of(const Element& x) const;
  Rational b_of(const Element& x, const Element& y) const;
  RationalVector carrier_of(const Element& x) const;

  /// The same group with q replaced by -q.
  DiscriminantForm negated() const;

 private:
  std::vector<std::int64_t> orders_;
  std::vector<Rational> q_;
  RatMatrix b_;
  std::vector<RationalVector> carriers_;
};

/// (L^v / L, q_L) presented by the Smith normal form of the Gram matrix.
DiscriminantForm discriminant_form(const IntegralLattice& lat);

/// Restriction to the p-primary component.
DiscriminantForm p_part(const DiscriminantForm& df, std::int64_t p);

/// Every element of a form, indexed in mixed radix:
/// index = x_0 + n_0 * (x_1 + n_1 * (x_2 + ...)).
///
/// q and b are available as integers scaled by scale(): q in [0, 2*scale),
/// b in [0, scale).
class ElementTable {
 public:
  using Index = std::uint32_t;

  explicit ElementTable(const DiscriminantForm& df);

  std::size_t size() const { return size_; }
  std::size_t rank() const { return orders_.size(); }
  std::int64_t scale() const { return scale_; }

  Element coords(Index a) const;
  Index index(const Element& x) const;
  std::int64_t coord(Index a, std::size_t i) const { return coords_[a * rank() + i]; }

  Index add(Index a, Index b) const;
  Index negate(Index a) const;
  Index multiple(Index a, std::int64_t k) const;
  std::int64_t order_of(Index a) const;

  std::int64_t q_scaled(Index a) const { return q_[a]; }
  std::int64_t b_scaled(Index a, Index b) const;

  /// Subgroup generated by `gens`, sorted ascending.
  std::vector<Index> span(std::span<const Index> gens) const;
  /// {z : b(z, g) = 0 for all g in gens}, sorted ascending.
  std::vector<Index> orthogonal(std::span<const Index> gens) const;

 private:
  std::vector<std::int64_t> orders_;
  std::vector<std::int64_t> radix_;
  std::size_t size_ = 1;
  std::int64_t scale_ = 1;
  std::vector<std::int64_t> coords_;
  std::vector<std::int64_t> q_;
  std::vector<std::int64_t> bgen_;  // scaled b on generator pairs
};

/// A subgroup on which q vanishes, given by at most two generators.
struct IsotropicSubgroup {
  std::vector<Element> generators;
  std::int64_t order = 1;
};

/// An isotropic subgroup A together with A^perp, listed as ElementTable
/// indices of the form it was enumerated from.
struct IsotropicPair {
  IsotropicSubgroup subgroup;
  std::vector<ElementTable::Index> complement;
};

/// Every isotropic subgroup generated by at most two elements, including
/// the trivial one, each exactly once. `df` must be a p-group.
/// `keep`, when given, filters subgroups before their complement is built.
std::vector<IsotropicPair> enumerate_isotropic(
    const DiscriminantForm& df,
    const std::function<bool(const IsotropicSubgroup&)>& keep = nullptr);

/// The induced form on A^perp / A.
DiscriminantForm quotient_form(const DiscriminantForm& df, const IsotropicSubgroup& a);

/// Length of A^perp / A, without building the quotient presentation.
std::size_t quotient_length(const DiscriminantForm& df, const IsotropicPair& pair);

/// True iff there is a group isomorphism g: D1 -> D2 with q2(g x) = q1(x),
/// or q2(g x) = -q1(x) when `negate_second`. Every p-part must have length
/// at most 2.
bool forms_isomorphic(const DiscriminantForm& df1, const DiscriminantForm& df2,
                      bool negate_second);

}  // namespace ek3
