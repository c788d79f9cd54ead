#include "ek3/binary_form.hpp"

#include <algorithm>

namespace ek3 {

void validate(const BinaryEvenForm& f) {
  if (f.a % 2 != 0 || f.c % 2 != 0) throw std::invalid_argument("form is not even: " + to_string(f));
  const BigInt det = BigInt(f.a) * f.c - BigInt(f.b) * f.b;
  if (f.a <= 0 || det <= 0) throw std::invalid_argument("form is not positive definite: " + to_string(f));
}

std::string to_string(const BinaryEvenForm& f) {
  return std::to_string(f.a) + " " + std::to_string(f.b) + " " + std::to_string(f.c);
}

bool is_sl2_reduced(const BinaryEvenForm& f) {
  return -f.a < 2 * f.b && 2 * f.b <= f.a && f.a <= f.c && (f.a != f.c || f.b >= 0);
}

bool is_gl2_reduced(const BinaryEvenForm& f) {
  return 0 <= f.b && 2 * f.b <= f.a && f.a <= f.c;
}

BinaryEvenForm reduce_sl2(const BinaryEvenForm& f) {
  validate(f);
  BigInt a = f.a, b = f.b, c = f.c;
  while (true) {
    // translate so that -a < 2b <= a
    const BigInt k = floor_div(a - 2 * b, 2 * a);
    c += 2 * k * b + k * k * a;
    b += k * a;
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    break;
  }
  if (a == c && b < 0) b = -b;
  return {to_int64(a), to_int64(b), to_int64(c)};
}

BinaryEvenForm reduce_gl2(const BinaryEvenForm& f) {
  BinaryEvenForm r = reduce_sl2(f);
  r.b = r.b < 0 ? -r.b : r.b;
  return r;
}

std::vector<BinaryEvenForm> enumerate_even_forms(std::int64_t d) {
  std::vector<BinaryEvenForm> out;
  if (d <= 0) return out;
  for (std::int64_t b = 0; 3 * b * b <= d; ++b) {
    for (std::int64_t a = std::max<std::int64_t>(2, 2 * b); a * a <= d + b * b; a += 2) {
      if ((d + b * b) % a != 0) continue;
      const std::int64_t c = (d + b * b) / a;
      if (c % 2 == 0 && c >= a) out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int class_fiber_count(const BinaryEvenForm& f) {
  return (0 < 2 * f.b && 2 * f.b < f.a && f.a < f.c) ? 2 : 1;
}

IntegralLattice form_to_lattice(const BinaryEvenForm& f) {
  validate(f);
  IntMatrix g(2, 2);
  g(0, 0) = f.a;
  g(0, 1) = g(1, 0) = f.b;
  g(1, 1) = f.c;
  return IntegralLattice(std::move(g));
}

}  // namespace ek3
