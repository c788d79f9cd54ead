#include "ek3/lattice.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace ek3 {

namespace {

using ek3::ceil_div;
using ek3::floor_div;
using ek3::isqrt;

void require_square(const IntMatrix& m, const char* what) {
  if (!m.square()) throw LatticeError(std::string(what) + ": matrix is not square");
}

/// Bareiss elimination of a symmetric matrix. Row k of the result holds the
/// fraction-free pivot row; pivots()[k+1] is the k-th leading minor.
struct FractionFreeLdl {
  IntMatrix rows;
  std::vector<BigInt> minors;  // minors[0] = 1, minors[k] = k-th leading minor

  explicit FractionFreeLdl(const IntMatrix& h) : rows(h.rows(), h.cols()) {
    const std::size_t n = h.rows();
    IntMatrix a = h;
    minors.assign(n + 1, BigInt(1));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = k; j < n; ++j) rows(k, j) = a(k, j);
      minors[k + 1] = a(k, k);
      if (a(k, k) == 0) return;
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / minors[k];
    }
  }

  bool positive() const {
    for (const auto& m : minors)
      if (m <= 0) return false;
    return true;
  }
};

__int128 floor_div(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
__int128 ceil_div(__int128 a, __int128 b) { return -floor_div(-a, b); }

__int128 isqrt(__int128 n) {
  if (n < 2) return n;
  int bits = 0;
  for (__int128 t = n; t > 0; t >>= 1) ++bits;
  __int128 x = __int128(1) << ((bits + 1) / 2);
  while (true) {
    __int128 y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

template <class Int>
Int convert(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    return static_cast<Int>(to_int64(v));
  }
}

template <class Int>
std::int64_t narrow(const Int& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return to_int64(v);
  } else {
    return static_cast<std::int64_t>(v);
  }
}

template <class Int>
class ShortVectorKernel {
 public:
  ShortVectorKernel(const FractionFreeLdl& ldl, std::int64_t bound,
                    const ShortVectorVisitor& visit)
      : n_(ldl.rows.rows()), bound_(bound), visit_(visit), x_(n_, 0), out_(n_, 0) {
    pivot_rows_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) pivot_rows_[i * n_ + j] = convert<Int>(ldl.rows(i, j));
    for (const auto& m : ldl.minors) minors_.push_back(convert<Int>(m));
  }

  bool run() {
    if (n_ == 0) return true;
    return descend(static_cast<std::ptrdiff_t>(n_) - 1, minors_[n_] * Int(bound_));
  }

 private:
  // budget = minors[k+1] * (bound - sum of the terms already fixed above k)
  bool descend(std::ptrdiff_t k, const Int& budget) {
    if (k < 0) {
      const Int norm = Int(bound_) - budget;
      if (norm == 0) return true;
      // internal order is reversed: level k carries coordinate n-1-k
      for (std::size_t i = 0; i < n_; ++i) out_[i] = x_[n_ - 1 - i];
      return visit_(out_, narrow(norm));
    }
    const std::size_t kk = static_cast<std::size_t>(k);
    Int center = 0;
    for (std::size_t j = kk + 1; j < n_; ++j)
      if (x_[j] != 0) center += pivot_rows_[kk * n_ + j] * Int(x_[j]);
    const Int& pivot = pivot_rows_[kk * n_ + kk];
    const Int scaled = minors_[kk] * budget;
    const Int radius = isqrt(scaled);
    const Int lo = ceil_div(-radius - center, pivot);
    const Int hi = floor_div(radius - center, pivot);
    for (Int v = lo; v <= hi; ++v) {
      const Int t = pivot * v + center;
      const Int next = (scaled - t * t) / minors_[kk + 1];
      x_[kk] = narrow(v);
      if (!descend(k - 1, next)) {
        x_[kk] = 0;
        return false;
      }
    }
    x_[kk] = 0;
    return true;
  }

  std::size_t n_;
  std::int64_t bound_;
  const ShortVectorVisitor& visit_;
  std::vector<Int> pivot_rows_;
  std::vector<Int> minors_;
  std::vector<std::int64_t> x_;
  std::vector<std::int64_t> out_;
};

// Upper-triangular row basis of the lattice spanned by the rows of `a`.
IntMatrix hermite_row_basis(IntMatrix a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < n; ++col) {
    while (true) {
      std::size_t best = m;
      for (std::size_t r = row; r < m; ++r) {
        if (a(r, col) == 0) continue;
        if (best == m || abs(a(r, col)) < abs(a(best, col))) best = r;
      }
      if (best == m) throw LatticeError("generators do not span a full-rank lattice");
      a.swap_rows(row, best);
      bool clean = true;
      for (std::size_t r = row + 1; r < m; ++r) {
        if (a(r, col) == 0) continue;
        a.add_row(r, row, -floor_div(a(r, col), a(row, col)));
        if (a(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(row, col) < 0)
      for (std::size_t j = 0; j < n; ++j) a(row, j) = -a(row, j);
    for (std::size_t r = 0; r < row; ++r) a.add_row(r, row, -floor_div(a(r, col), a(row, col)));
    ++row;
  }
  IntMatrix basis(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis(i, j) = a(i, j);
  return basis;
}

}  // namespace

IntegralLattice::IntegralLattice(IntMatrix gram) : gram_(std::move(gram)) {
  require_square(gram_, "Gram matrix");
  for (std::size_t i = 0; i < rank(); ++i) {
    if (mod_floor(gram_(i, i), 2) != 0) throw LatticeError("lattice is not even");
    for (std::size_t j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i)) throw LatticeError("Gram matrix is not symmetric");
  }
}

BigInt IntegralLattice::determinant() const { return ek3::determinant(gram_); }

bool IntegralLattice::is_positive_definite() const { return FractionFreeLdl(gram_).positive(); }

bool IntegralLattice::is_negative_definite() const {
  IntMatrix neg = gram_;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) neg(i, j) = -neg(i, j);
  return FractionFreeLdl(neg).positive();
}

Rational IntegralLattice::pairing(const RationalVector& x, const RationalVector& y) const {
  if (x.size() != rank() || y.size() != rank()) throw LatticeError("vector has wrong dimension");
  Rational sum = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < rank(); ++j)
      if (y[j] != 0) row += Rational(gram_(i, j)) * y[j];
    sum += x[i] * row;
  }
  return sum;
}

SmithDecomposition smith_normal_form(const IntMatrix& g) {
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  IntMatrix a = g;
  IntMatrix left = IntMatrix::identity(m);
  IntMatrix right = IntMatrix::identity(n);
  const std::size_t steps = std::min(m, n);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (pi == m || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      a.swap_rows(t, pi);
      left.swap_rows(t, pi);
      a.swap_cols(t, pj);
      right.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        const BigInt q = floor_div(a(i, t), a(t, t));
        a.add_row(i, t, -q);
        left.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        const BigInt q = floor_div(a(t, j), a(t, t));
        a.add_col(j, t, -q);
        right.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // enforce the divisibility chain
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (mod_floor(a(i, j), a(t, t)) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      a.add_row(t, bad, 1);
      left.add_row(t, bad, 1);
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < m; ++j) left(t, j) = -left(t, j);
    }
  }
  SmithDecomposition out;
  out.divisors.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) out.divisors.push_back(a(i, i));
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

std::vector<RationalVector> dual_basis(const IntegralLattice& lat) {
  const std::size_t n = lat.rank();
  RatMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(lat.gram()(i, j));
    a(i, n + i) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) throw LatticeError("degenerate lattice");
    a.swap_rows(col, p);
    const Rational inv = 1 / a(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) a(col, j) *= inv;
    for (std::size_t i = 0; i < n; ++i)
      if (i != col && a(i, col) != 0) a.add_row(i, col, -a(i, col));
  }
  std::vector<RationalVector> out(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a(i, n + j);
  return out;
}

bool enumerate_short_vectors(const IntegralLattice& lat, std::int64_t bound,
                             const ShortVectorVisitor& visit) {
  const std::size_t n = lat.rank();
  // positive form -gram with coordinates reversed, so that the outermost
  // enumeration level is the first coordinate
  IntMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = -lat.gram()(n - 1 - i, n - 1 - j);
  const FractionFreeLdl ldl(h);
  if (!ldl.positive()) throw LatticeError("lattice not negative definite");
  if (bound <= 0) return true;

  const BigInt limit = BigInt(1) << 40;
  bool small = bound < (std::int64_t(1) << 20);
  for (const auto& m : ldl.minors) small = small && m < limit;
  for (std::size_t i = 0; i < n && small; ++i)
    for (std::size_t j = i; j < n; ++j) small = small && abs(ldl.rows(i, j)) < limit;

  if (small) return ShortVectorKernel<__int128>(ldl, bound, visit).run();
  return ShortVectorKernel<BigInt>(ldl, bound, visit).run();
}

std::uint64_t count_roots(const IntegralLattice& lat) {
  std::uint64_t count = 0;
  enumerate_short_vectors(lat, 2, [&](std::span<const std::int64_t>, std::int64_t norm) {
    if (norm == 2) ++count;
    return true;
  });
  return count;
}

Overlattice build_overlattice(const IntegralLattice& lat,
                              std::span<const RationalVector> generators) {
  const std::size_t n = lat.rank();
  BigInt denom = 1;
  for (const auto& g : generators) {
    if (g.size() != n) throw LatticeError("generator has wrong dimension");
    for (std::size_t i = 0; i < n; ++i) {
      Rational row = 0;
      for (std::size_t j = 0; j < n; ++j) row += Rational(lat.gram()(i, j)) * g[j];
      if (!is_integer(row)) throw LatticeError("generator is not in the dual lattice");
      denom = boost::multiprecision::lcm(denom, boost::multiprecision::denominator(g[i]));
    }
  }

  IntMatrix stacked(n + generators.size(), n);
  for (std::size_t i = 0; i < n; ++i) stacked(i, i) = denom;
  for (std::size_t k = 0; k < generators.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational v = generators[k][j] * Rational(denom);
      stacked(n + k, j) = boost::multiprecision::numerator(v);
    }
  IntMatrix basis = hermite_row_basis(std::move(stacked));

  const IntMatrix scaled = basis * lat.gram() * basis.transposed();
  const BigInt d2 = denom * denom;
  IntMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (mod_floor(scaled(i, j), d2) != 0) throw LatticeError("subgroup not isotropic");
      gram(i, j) = scaled(i, j) / d2;
    }
  for (std::size_t i = 0; i < n; ++i)
    if (mod_floor(gram(i, i), 2) != 0) throw LatticeError("subgroup not isotropic");

  BigInt diag = 1;
  for (std::size_t i = 0; i < n; ++i) diag *= basis(i, i);
  BigInt full = boost::multiprecision::pow(denom, static_cast<unsigned>(n));
  return Overlattice{IntegralLattice(std::move(gram)), std::move(basis), denom, full / diag};
}

IntegralLattice read_gram(std::istream& in) {
  long long r = 0;
  if (!(in >> r) || r <= 0) throw LatticeError("gram file: expected positive rank on first line");
  const auto n = static_cast<std::size_t>(r);
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::string tok;
      if (!(in >> tok)) throw LatticeError("gram file: expected " + std::to_string(n * n) + " entries");
      try {
        g(i, j) = BigInt(tok);
      } catch (const std::exception&) {
        throw LatticeError("gram file: bad integer '" + tok + "'");
      }
    }
  return IntegralLattice(std::move(g));
}

void write_gram(std::ostream& out, const IntegralLattice& lat) {
  out << lat.rank() << '\n';
  for (std::size_t i = 0; i < lat.rank(); ++i) {
    for (std::size_t j = 0; j < lat.rank(); ++j) out << (j ? " " : "") << lat.gram()(i, j);
    out << '\n';
  }
}

}  // namespace ek3
