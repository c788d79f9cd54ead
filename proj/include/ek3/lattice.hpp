#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "ek3/numeric.hpp"

namespace ek3 {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coordinates of a vector of L (x) Q in the basis of a fixed lattice L.
using RationalVector = std::vector<Rational>;

/// An even integral lattice given by its Gram matrix.
///
/// The Gram matrix must be square, symmetric and have even diagonal.
/// Definiteness is not required at construction; operations that need it
/// check it themselves.
class IntegralLattice {
 public:
  explicit IntegralLattice(IntMatrix gram);

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }

  BigInt determinant() const;
  bool is_positive_definite() const;
  bool is_negative_definite() const;

  /// Bilinear form extended to rational coordinates.
  Rational pairing(const RationalVector& x, const RationalVector& y) const;
  Rational norm(const RationalVector& x) const { return pairing(x, x); }

  friend bool operator==(const IntegralLattice&, const IntegralLattice&) = default;

 private:
  IntMatrix gram_;
};

/// left * g * right = diag(divisors), left and right unimodular,
/// divisors[i] | divisors[i+1], all divisors >= 0.
struct SmithDecomposition {
  std::vector<BigInt> divisors;
  IntMatrix left;
  IntMatrix right;
};

SmithDecomposition smith_normal_form(const IntMatrix& g);

/// Rows of gram^{-1}: the basis of L^v dual to the basis of L.
/// Throws LatticeError("degenerate lattice") when det = 0.
std::vector<RationalVector> dual_basis(const IntegralLattice& lat);

/// Called with coordinates (in the lattice basis) and the positive norm
/// -x^T gram x of each enumerated vector. Return false to stop.
using ShortVectorVisitor =
    std::function<bool(std::span<const std::int64_t> coords, std::int64_t norm)>;

/// Enumerates every nonzero x with 0 < -x^T gram x <= bound, each once.
/// Returns false if the visitor stopped the enumeration early.
///
/// The ellipsoid {x : -x^T gram x <= bound} is projected onto leading
/// coordinate blocks (x_1), (x_1, x_2), ... by completing the square, and
/// the integer points are extended one coordinate at a time. All bounds are
/// exact integers obtained from fraction-free elimination.
bool enumerate_short_vectors(const IntegralLattice& lat, std::int64_t bound,
                             const ShortVectorVisitor& visit);

/// Number of vectors of norm -2. Requires a negative definite lattice.
std::uint64_t count_roots(const IntegralLattice& lat);

/// A lattice M with L subset M subset L^v.
struct Overlattice {
  IntegralLattice lattice;
  /// Basis of M as rows, in coordinates of L scaled by `denominator`.
  IntMatrix basis;
  BigInt denominator;
  /// [M : L]
  BigInt index;
};

/// The sublattice of L^v generated by L and `generators`.
/// Throws LatticeError("subgroup not isotropic") when the result is not
/// even and integral, and LatticeError when a generator is not in L^v.
Overlattice build_overlattice(const IntegralLattice& lat,
                              std::span<const RationalVector> generators);

inline IntegralLattice overlattice_gram(const IntegralLattice& lat,
                                        std::span<const RationalVector> generators) {
  return build_overlattice(lat, generators).lattice;
}

/// Text format: rank r on the first line, then r rows of r integers.
IntegralLattice read_gram(std::istream& in);
void write_gram(std::ostream& out, const IntegralLattice& lat);

}  // namespace ek3
