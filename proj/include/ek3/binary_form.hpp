#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ek3/lattice.hpp"

namespace ek3 {

/// The positive definite even form with Gram matrix [[a, b], [b, c]].
struct BinaryEvenForm {
  std::int64_t a = 2;
  std::int64_t b = 0;
  std::int64_t c = 2;

  std::int64_t discriminant() const { return a * c - b * b; }
  auto operator<=>(const BinaryEvenForm&) const = default;
};

/// Throws std::invalid_argument unless a, c are even, a > 0 and ac - b^2 > 0.
void validate(const BinaryEvenForm& f);
std::string to_string(const BinaryEvenForm& f);

/// Unique representative with 0 <= 2b <= a <= c.
BinaryEvenForm reduce_gl2(const BinaryEvenForm& f);
/// Unique representative with -a < 2b <= a <= c and b >= 0 when a = c.
BinaryEvenForm reduce_sl2(const BinaryEvenForm& f);

bool is_gl2_reduced(const BinaryEvenForm& f);
bool is_sl2_reduced(const BinaryEvenForm& f);

/// All GL2-reduced even forms of discriminant d, ordered by (a, b, c).
std::vector<BinaryEvenForm> enumerate_even_forms(std::int64_t d);

/// Number of SL2 classes in the GL2 class of a reduced form.
int class_fiber_count(const BinaryEvenForm& f);

IntegralLattice form_to_lattice(const BinaryEvenForm& f);

}  // namespace ek3
