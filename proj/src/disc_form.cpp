#include "ek3/disc_form.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ek3 {

namespace {

const Rational kTwo(2);
const Rational kOne(1);

std::int64_t prime_power_part(std::int64_t n, std::int64_t p) {
  std::int64_t out = 1;
  while (n % p == 0) {
    n /= p;
    out *= p;
  }
  return out;
}

bool is_prime_power(std::int64_t n) { return n == 1 || prime_divisors(n).size() == 1; }

std::int64_t scaled_value(const Rational& v, std::int64_t scale, std::int64_t modulus) {
  const Rational s = v * Rational(scale);
  if (!is_integer(s)) return -1;
  return to_int64(mod_floor(boost::multiprecision::numerator(s), modulus));
}

}  // namespace

// ---------------------------------------------------------------------------
// DiscriminantForm

DiscriminantForm::DiscriminantForm(std::vector<std::int64_t> orders, std::vector<Rational> q,
                                   RatMatrix b, std::vector<RationalVector> carriers)
    : orders_(std::move(orders)), q_(std::move(q)), b_(std::move(b)),
      carriers_(std::move(carriers)) {
  const std::size_t k = orders_.size();
  if (q_.size() != k || b_.rows() != k || b_.cols() != k)
    throw DiscFormError("discriminant form: inconsistent sizes");
  if (!carriers_.empty() && carriers_.size() != k)
    throw DiscFormError("discriminant form: one carrier per generator expected");
  for (std::size_t i = 0; i < k; ++i) {
    if (orders_[i] < 2) throw DiscFormError("discriminant form: generator order must be >= 2");
    q_[i] = reduce_mod(q_[i], kTwo);
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      if (reduce_mod(b_(i, j), kOne) != reduce_mod(b_(j, i), kOne))
        throw DiscFormError("discriminant form: b is not symmetric");
      b_(i, j) = reduce_mod(b_(i, j), kOne);
    }
    b_(i, i) = reduce_mod(q_[i], kOne);
  }
}

std::int64_t DiscriminantForm::order() const {
  std::int64_t n = 1;
  for (auto o : orders_) n *= o;
  return n;
}

std::size_t DiscriminantForm::length() const {
  std::size_t best = 0;
  for (auto p : prime_divisors(order())) {
    std::size_t count = 0;
    for (auto o : orders_)
      if (o % p == 0) ++count;
    best = std::max(best, count);
  }
  return best;
}

std::vector<std::int64_t> DiscriminantForm::invariant_factors() const {
  std::map<std::int64_t, std::vector<std::int64_t>> powers;
  for (auto o : orders_)
    for (auto p : prime_divisors(o)) powers[p].push_back(prime_power_part(o, p));
  std::size_t len = 0;
  for (auto& [p, v] : powers) {
    std::sort(v.begin(), v.end(), std::greater<>());
    len = std::max(len, v.size());
  }
  std::vector<std::int64_t> factors(len, 1);
  for (const auto& [p, v] : powers)
    for (std::size_t i = 0; i < v.size(); ++i) factors[len - 1 - i] *= v[i];
  return factors;
}

Rational DiscriminantForm::q_of(const Element& x) const {
  if (x.size() != orders_.size()) throw DiscFormError("element has wrong dimension");
  Rational v = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    v += Rational(x[i] * x[i]) * q_[i];
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[j] != 0) v += Rational(2 * x[i] * x[j]) * b_(i, j);
  }
  return reduce_mod(v, kTwo);
}

Rational DiscriminantForm::b_of(const Element& x, const Element& y) const {
  if (x.size() != orders_.size() || y.size() != orders_.size())
    throw DiscFormError("element has wrong dimension");
  Rational v = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (x[i] != 0 && y[j] != 0) v += Rational(x[i] * y[j]) * b_(i, j);
  return reduce_mod(v, kOne);
}

RationalVector DiscriminantForm::carrier_of(const Element& x) const {
  if (!has_carriers()) throw DiscFormError("form has no carrier vectors");
  RationalVector v(carriers_.front().size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0)
      for (std::size_t k = 0; k < v.size(); ++k) v[k] += Rational(x[i]) * carriers_[i][k];
  return v;
}

DiscriminantForm DiscriminantForm::negated() const {
  std::vector<Rational> q;
  RatMatrix b(b_.rows(), b_.cols());
  for (std::size_t i = 0; i < q_.size(); ++i) {
    q.push_back(-q_[i]);
    for (std::size_t j = 0; j < q_.size(); ++j) b(i, j) = -b_(i, j);
  }
  return DiscriminantForm(orders_, std::move(q), std::move(b), carriers_);
}

DiscriminantForm discriminant_form(const IntegralLattice& lat) {
  const auto snf = smith_normal_form(lat.gram());
  std::vector<std::int64_t> orders;
  std::vector<RationalVector> carriers;
  for (std::size_t i = 0; i < snf.divisors.size(); ++i) {
    const BigInt& d = snf.divisors[i];
    if (d == 0) throw DiscFormError("degenerate lattice");
    if (d == 1) continue;
    orders.push_back(to_int64(d));
    RationalVector c(lat.rank());
    for (std::size_t k = 0; k < lat.rank(); ++k) c[k] = Rational(snf.right(k, i), d);
    carriers.push_back(std::move(c));
  }
  const std::size_t k = orders.size();
  std::vector<Rational> q(k);
  RatMatrix b(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    q[i] = lat.norm(carriers[i]);
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) b(i, j) = lat.pairing(carriers[i], carriers[j]);
  }
  return DiscriminantForm(std::move(orders), std::move(q), std::move(b), std::move(carriers));
}

DiscriminantForm p_part(const DiscriminantForm& df, std::int64_t p) {
  if (p < 2 || prime_divisors(p) != std::vector<std::int64_t>{p})
    throw DiscFormError("p_part: " + std::to_string(p) + " is not prime");
  std::vector<std::size_t> keep;
  std::vector<std::int64_t> cofactor;
  for (std::size_t i = 0; i < df.num_generators(); ++i) {
    const std::int64_t pp = prime_power_part(df.orders()[i], p);
    if (pp == 1) continue;
    keep.push_back(i);
    cofactor.push_back(df.orders()[i] / pp);
  }
  const std::size_t k = keep.size();
  std::vector<std::int64_t> orders(k);
  std::vector<Rational> q(k);
  RatMatrix b(k, k);
  std::vector<RationalVector> carriers;
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t i = keep[a];
    orders[a] = df.orders()[i] / cofactor[a];
    q[a] = Rational(cofactor[a] * cofactor[a]) * df.q(i);
    for (std::size_t c = 0; c < k; ++c)
      if (c != a) b(a, c) = Rational(cofactor[a] * cofactor[c]) * df.b(i, keep[c]);
    if (df.has_carriers()) {
      RationalVector v = df.carriers()[i];
      for (auto& x : v) x *= cofactor[a];
      carriers.push_back(std::move(v));
    }
  }
  return DiscriminantForm(std::move(orders), std::move(q), std::move(b), std::move(carriers));
}

// ---------------------------------------------------------------------------
// ElementTable

ElementTable::ElementTable(const DiscriminantForm& df) : orders_(df.orders()) {
  const std::size_t k = orders_.size();
  for (auto o : orders_) {
    radix_.push_back(static_cast<std::int64_t>(size_));
    size_ *= static_cast<std::size_t>(o);
    if (size_ > (std::size_t(1) << 24)) throw DiscFormError("group too large to tabulate");
    scale_ = lcm64(scale_, o);
  }
  for (std::size_t i = 0; i < k; ++i) {
    scale_ = lcm64(scale_, to_int64(boost::multiprecision::denominator(df.q(i))));
    for (std::size_t j = 0; j < k; ++j)
      scale_ = lcm64(scale_, to_int64(boost::multiprecision::denominator(df.b(i, j))));
  }
  bgen_.resize(k * k);
  std::vector<std::int64_t> qgen(k);
  for (std::size_t i = 0; i < k; ++i) {
    qgen[i] = scaled_value(df.q(i), scale_, 2 * scale_);
    for (std::size_t j = 0; j < k; ++j) bgen_[i * k + j] = scaled_value(df.b(i, j), scale_, scale_);
  }

  coords_.resize(size_ * k);
  q_.resize(size_);
  std::vector<std::int64_t> x(k, 0);
  for (std::size_t a = 0; a < size_; ++a) {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < k; ++i) {
      coords_[a * k + i] = x[i];
      if (x[i] == 0) continue;
      v += x[i] * x[i] % (2 * scale_) * qgen[i];
      for (std::size_t j = i + 1; j < k; ++j) v += 2 * (x[i] * x[j] % scale_) * bgen_[i * k + j];
      v %= 2 * scale_;
    }
    q_[a] = v % (2 * scale_);
    for (std::size_t i = 0; i < k; ++i) {
      if (++x[i] < orders_[i]) break;
      x[i] = 0;
    }
  }
}

Element ElementTable::coords(Index a) const {
  return Element(coords_.begin() + a * rank(), coords_.begin() + (a + 1) * rank());
}

ElementTable::Index ElementTable::index(const Element& x) const {
  if (x.size() != rank()) throw DiscFormError("element has wrong dimension");
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    std::int64_t c = x[i] % orders_[i];
    if (c < 0) c += orders_[i];
    idx += c * radix_[i];
  }
  return static_cast<Index>(idx);
}

ElementTable::Index ElementTable::add(Index a, Index b) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    std::int64_t c = coord(a, i) + coord(b, i);
    if (c >= orders_[i]) c -= orders_[i];
    idx += c * radix_[i];
  }
  return static_cast<Index>(idx);
}

ElementTable::Index ElementTable::negate(Index a) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    const std::int64_t c = coord(a, i);
    idx += (c == 0 ? 0 : orders_[i] - c) * radix_[i];
  }
  return static_cast<Index>(idx);
}

ElementTable::Index ElementTable::multiple(Index a, std::int64_t k) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    std::int64_t c = (coord(a, i) * (k % orders_[i])) % orders_[i];
    if (c < 0) c += orders_[i];
    idx += c * radix_[i];
  }
  return static_cast<Index>(idx);
}

std::int64_t ElementTable::order_of(Index a) const {
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    const std::int64_t c = coord(a, i);
    if (c != 0) ord = lcm64(ord, orders_[i] / gcd64(c, orders_[i]));
  }
  return ord;
}

std::int64_t ElementTable::b_scaled(Index a, Index b) const {
  const std::size_t k = rank();
  std::int64_t v = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::int64_t x = coord(a, i);
    if (x == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t y = coord(b, j);
      if (y != 0) v = (v + (x * y % scale_) * bgen_[i * k + j]) % scale_;
    }
  }
  return v;
}

std::vector<ElementTable::Index> ElementTable::span(std::span<const Index> gens) const {
  std::vector<char> seen(size_, 0);
  std::vector<Index> out{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (Index g : gens) {
      const Index n = add(out[head], g);
      if (!seen[n]) {
        seen[n] = 1;
        out.push_back(n);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElementTable::Index> ElementTable::orthogonal(std::span<const Index> gens) const {
  const std::size_t k = rank();
  // b(z, g) = sum_i z_i * c_i(g) mod scale
  std::vector<std::vector<std::int64_t>> functionals;
  for (Index g : gens) {
    std::vector<std::int64_t> c(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) c[i] = (c[i] + bgen_[i * k + j] * coord(g, j)) % scale_;
    functionals.push_back(std::move(c));
  }
  std::vector<Index> out;
  for (std::size_t z = 0; z < size_; ++z) {
    bool ok = true;
    for (const auto& c : functionals) {
      std::int64_t v = 0;
      for (std::size_t i = 0; i < k; ++i) v += coords_[z * k + i] * c[i];
      if (v % scale_ != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(static_cast<Index>(z));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isotropic subgroups and quotients

std::vector<IsotropicPair> enumerate_isotropic(
    const DiscriminantForm& df, const std::function<bool(const IsotropicSubgroup&)>& keep) {
  if (!is_prime_power(df.order())) throw DiscFormError("not a p-group");
  const ElementTable table(df);
  using Index = ElementTable::Index;

  std::vector<Index> isotropic;
  for (Index z = 1; z < table.size(); ++z)
    if (table.q_scaled(z) == 0) isotropic.push_back(z);

  std::set<std::vector<Index>> seen;
  std::vector<std::vector<Index>> generator_sets{{}};
  std::vector<std::int64_t> orders{1};
  seen.insert({0});

  std::vector<Index> cyclic_reps;
  for (Index x : isotropic) {
    const Index g[] = {x};
    auto s = table.span(g);
    if (!seen.insert(s).second) continue;
    cyclic_reps.push_back(x);
    generator_sets.push_back({x});
    orders.push_back(static_cast<std::int64_t>(s.size()));
  }
  for (Index x : cyclic_reps) {
    const Index gx[] = {x};
    const auto cyc = table.span(gx);
    for (Index y : isotropic) {
      if (table.b_scaled(x, y) != 0) continue;
      if (std::binary_search(cyc.begin(), cyc.end(), y)) continue;
      const Index g[] = {x, y};
      auto s = table.span(g);
      if (!seen.insert(s).second) continue;
      generator_sets.push_back({x, y});
      orders.push_back(static_cast<std::int64_t>(s.size()));
    }
  }

  std::vector<IsotropicPair> out;
  for (std::size_t i = 0; i < generator_sets.size(); ++i) {
    IsotropicPair pair;
    for (Index g : generator_sets[i]) pair.subgroup.generators.push_back(table.coords(g));
    pair.subgroup.order = orders[i];
    if (keep && !keep(pair.subgroup)) continue;
    pair.complement = table.orthogonal(generator_sets[i]);
    out.push_back(std::move(pair));
  }
  return out;
}

namespace {

struct SubgroupView {
  std::vector<ElementTable::Index> elements;
  std::vector<char> member;
};

SubgroupView isotropic_span(const ElementTable& table, const IsotropicSubgroup& a) {
  std::vector<ElementTable::Index> gens;
  for (const auto& g : a.generators) gens.push_back(table.index(g));
  SubgroupView view;
  view.elements = table.span(gens);
  view.member.assign(table.size(), 0);
  for (auto z : view.elements) {
    if (table.q_scaled(z) != 0) throw DiscFormError("subgroup is not isotropic");
    view.member[z] = 1;
  }
  return view;
}

// smallest k >= 1 with k*z in the subgroup marked by `member`
std::int64_t relative_order(const ElementTable& table, ElementTable::Index z,
                            const std::vector<char>& member) {
  std::int64_t k = 1;
  for (ElementTable::Index m = z; !member[m]; m = table.add(m, z)) ++k;
  return k;
}

}  // namespace

DiscriminantForm quotient_form(const DiscriminantForm& df, const IsotropicSubgroup& a) {
  const ElementTable table(df);
  using Index = ElementTable::Index;
  const SubgroupView sub = isotropic_span(table, a);
  std::vector<Index> gens;
  for (const auto& g : a.generators) gens.push_back(table.index(g));
  const std::vector<Index> perp = table.orthogonal(gens);

  // cyclic decomposition of perp / A: repeatedly take an element of maximal
  // order modulo the part already generated, adjusted within its coset so
  // that it meets that part trivially
  std::vector<char> generated = sub.member;
  std::vector<Index> generated_list = sub.elements;
  std::vector<Index> chosen;
  std::vector<std::int64_t> chosen_orders;
  const std::size_t target = perp.size() / sub.elements.size();
  std::size_t current = 1;
  while (current < target) {
    Index best = 0;
    std::int64_t best_order = 0;
    for (Index z : perp) {
      const std::int64_t o = relative_order(table, z, generated);
      if (o > best_order) {
        best_order = o;
        best = z;
      }
    }
    Index lifted = best;
    bool found = false;
    for (Index s : generated_list) {
      const Index cand = table.add(best, s);
      if (relative_order(table, cand, sub.member) == best_order) {
        lifted = cand;
        found = true;
        break;
      }
    }
    if (!found) throw DiscFormError("quotient_form: failed to split cyclic factor");
    chosen.push_back(lifted);
    chosen_orders.push_back(best_order);
    std::vector<Index> span_gens = chosen;
    for (const auto& g : gens) span_gens.push_back(g);
    generated_list = table.span(span_gens);
    std::fill(generated.begin(), generated.end(), 0);
    for (auto z : generated_list) generated[z] = 1;
    current *= static_cast<std::size_t>(best_order);
  }

  const std::size_t k = chosen.size();
  std::vector<Rational> q(k);
  RatMatrix b(k, k);
  std::vector<RationalVector> carriers;
  for (std::size_t i = 0; i < k; ++i) {
    const Element xi = table.coords(chosen[i]);
    q[i] = df.q_of(xi);
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) b(i, j) = df.b_of(xi, table.coords(chosen[j]));
    if (df.has_carriers()) carriers.push_back(df.carrier_of(xi));
  }
  return DiscriminantForm(std::move(chosen_orders), std::move(q), std::move(b),
                          std::move(carriers));
}

std::size_t quotient_length(const DiscriminantForm& df, const IsotropicPair& pair) {
  const ElementTable table(df);
  const SubgroupView sub = isotropic_span(table, pair.subgroup);
  const std::int64_t quotient_order =
      static_cast<std::int64_t>(pair.complement.size() / sub.elements.size());
  std::size_t length = 0;
  for (auto p : prime_divisors(quotient_order)) {
    // |Q[p]| = #{z in A^perp : p z in A} / |A|
    std::size_t count = 0;
    for (auto z : pair.complement)
      if (sub.member[table.multiple(z, p)]) ++count;
    std::size_t torsion = count / sub.elements.size();
    std::size_t len = 0;
    while (torsion > 1) {
      torsion /= static_cast<std::size_t>(p);
      ++len;
    }
    length = std::max(length, len);
  }
  return length;
}

// ---------------------------------------------------------------------------
// Isomorphism of finite quadratic forms

namespace {

bool p_forms_isomorphic(const DiscriminantForm& src, const DiscriminantForm& dst, bool negate) {
  auto sorted_orders = [](const DiscriminantForm& f) {
    auto o = f.orders();
    std::sort(o.begin(), o.end(), std::greater<>());
    return o;
  };
  if (src.num_generators() > 2 || dst.num_generators() > 2)
    throw DiscFormError("length exceeds 2");
  if (sorted_orders(src) != sorted_orders(dst)) return false;
  if (src.num_generators() == 0) return true;

  // generators of src, larger order first
  std::vector<std::size_t> gi(src.num_generators());
  std::iota(gi.begin(), gi.end(), 0);
  std::sort(gi.begin(), gi.end(),
            [&](std::size_t a, std::size_t b) { return src.orders()[a] > src.orders()[b]; });

  const ElementTable table(dst);
  using Index = ElementTable::Index;
  const std::int64_t n = table.scale();
  const Rational sign = negate ? Rational(-1) : Rational(1);
  auto target_q = [&](const Rational& v) { return scaled_value(sign * v, n, 2 * n); };
  auto target_b = [&](const Rational& v) { return scaled_value(sign * v, n, n); };

  const std::int64_t q0 = target_q(src.q(gi[0]));
  std::vector<Index> first;
  for (Index z = 0; z < table.size(); ++z)
    if (table.order_of(z) == src.orders()[gi[0]] && table.q_scaled(z) == q0) first.push_back(z);
  if (gi.size() == 1) return !first.empty();

  const std::int64_t q1 = target_q(src.q(gi[1]));
  const std::int64_t b01 = target_b(src.b(gi[0], gi[1]));
  const std::int64_t ord1 = src.orders()[gi[1]];
  std::vector<Index> second;
  for (Index z = 0; z < table.size(); ++z)
    if (table.order_of(z) == ord1 && table.q_scaled(z) == q1) second.push_back(z);

  std::vector<char> in_cyclic(table.size());
  for (Index x : first) {
    std::fill(in_cyclic.begin(), in_cyclic.end(), 0);
    Index m = 0;
    do {
      in_cyclic[m] = 1;
      m = table.add(m, x);
    } while (m != 0);
    for (Index y : second) {
      if (table.b_scaled(x, y) != b01) continue;
      bool independent = true;
      Index my = y;
      for (std::int64_t k = 1; k < ord1; ++k, my = table.add(my, y))
        if (in_cyclic[my]) {
          independent = false;
          break;
        }
      if (independent) return true;
    }
  }
  return false;
}

}  // namespace

bool forms_isomorphic(const DiscriminantForm& df1, const DiscriminantForm& df2,
                      bool negate_second) {
  if (df1.order() != df2.order()) return false;
  for (auto p : prime_divisors(df1.order())) {
    if (!p_forms_isomorphic(p_part(df1, p), p_part(df2, p), negate_second)) return false;
  }
  return true;
}

}  // namespace ek3
