#include "ek3/classify.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <mutex>
#include <thread>
#include <tuple>

namespace ek3 {

namespace {

std::int64_t element_order(const DiscriminantForm& df, const Element& x) {
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] % df.orders()[i] != 0) ord = lcm64(ord, df.orders()[i] / gcd64(x[i], df.orders()[i]));
  return ord;
}

DiscriminantForm direct_sum(const std::vector<const DiscriminantForm*>& parts) {
  std::vector<std::int64_t> orders;
  std::vector<Rational> q;
  std::vector<RationalVector> carriers;
  std::vector<std::pair<std::size_t, const DiscriminantForm*>> offsets;
  bool carry = true;
  for (const auto* f : parts) {
    offsets.emplace_back(orders.size(), f);
    for (std::size_t i = 0; i < f->num_generators(); ++i) {
      orders.push_back(f->orders()[i]);
      q.push_back(f->q(i));
    }
    carry = carry && (f->num_generators() == 0 || f->has_carriers());
    if (f->has_carriers()) carriers.insert(carriers.end(), f->carriers().begin(), f->carriers().end());
  }
  RatMatrix b(orders.size(), orders.size());
  for (const auto& [off, f] : offsets)
    for (std::size_t i = 0; i < f->num_generators(); ++i)
      for (std::size_t j = 0; j < f->num_generators(); ++j)
        if (i != j) b(off + i, off + j) = f->b(i, j);
  if (!carry) carriers.clear();
  return DiscriminantForm(std::move(orders), std::move(q), std::move(b), std::move(carriers));
}

/// One admissible isotropic subgroup of a p-part together with its quotient.
struct LocalChoice {
  IsotropicSubgroup subgroup;
  DiscriminantForm quotient;
  std::int64_t exponent = 1;  // exponent of the subgroup
};

struct PrimeData {
  std::int64_t p = 0;
  DiscriminantForm part;
  std::vector<LocalChoice> choices;
};

PrimeData local_choices(const DiscriminantForm& df, std::int64_t p) {
  PrimeData data;
  data.p = p;
  data.part = p_part(df, p);
  const DiscriminantForm& part = data.part;
  std::int64_t exponent = 1;
  for (auto o : part.orders()) exponent = std::max(exponent, o);
  const std::int64_t total = part.order();
  // A^perp/A has order |P|/|A|^2 and exponent dividing exp(P); length <= 2
  // forces |P|/|A|^2 <= exp(P)^2
  auto keep = [&](const IsotropicSubgroup& a) {
    const std::int64_t a2 = a.order * a.order;
    return a2 <= total && total / a2 <= exponent * exponent;
  };
  for (const auto& pair : enumerate_isotropic(part, keep)) {
    if (quotient_length(part, pair) > 2) continue;
    LocalChoice c;
    c.subgroup = pair.subgroup;
    c.quotient = quotient_form(part, pair.subgroup);
    for (const auto& g : pair.subgroup.generators)
      c.exponent = std::max(c.exponent, element_order(part, g));
    data.choices.push_back(std::move(c));
  }
  return data;
}

/// True iff every vector of norm -2 in the overlattice already lies in L.
bool roots_stay_in_lattice(const Overlattice& m, std::int64_t expected_roots) {
  const std::size_t n = m.lattice.rank();
  const std::int64_t denom = to_int64(m.denominator);
  std::vector<std::int64_t> basis(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis[i * n + j] = to_int64(mod_floor(m.basis(i, j), denom));
  std::int64_t count = 0;
  const bool complete = enumerate_short_vectors(
      m.lattice, 2, [&](std::span<const std::int64_t> x, std::int64_t norm) {
        if (norm != 2) return true;
        if (denom > 1)
          for (std::size_t j = 0; j < n; ++j) {
            std::int64_t v = 0;
            for (std::size_t i = 0; i < n; ++i)
              if (x[i] != 0) v = (v + (x[i] % denom) * basis[i * n + j]) % denom;
            if (v != 0) return false;
          }
        ++count;
        return true;
      });
  return complete && count == expected_roots;
}

void check_invariants(const DataTriple& t, const BigInt& det) {
  std::int64_t mw_order = 1;
  for (auto f : t.mw) mw_order *= f;
  const bool ok = rank_of(t.sigma) == 18 && t.mw.size() <= 2 && eu_of(t.sigma) <= 24 &&
                  is_gl2_reduced(t.t) &&
                  BigInt(t.t.discriminant()) * mw_order * mw_order == abs(det);
  if (!ok) throw std::logic_error("data triple invariant violated: " + to_csv(t));
}

}  // namespace

std::string DataTriple::mw_string() const {
  if (mw.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < mw.size(); ++i) out += (i ? "." : "") + std::to_string(mw[i]);
  return out;
}

bool canonical_less(const DataTriple& x, const DataTriple& y) {
  const std::string sx = x.sigma.to_string(), sy = y.sigma.to_string();
  return std::tie(sx, x.mw, x.t) < std::tie(sy, y.mw, y.t);
}

std::vector<DataTriple> classify_one(const RootType& sigma, const ClassifyOptions& options) {
  if (rank_of(sigma) != 18 || eu_of(sigma) > 24)
    throw std::invalid_argument("classify_one requires rank 18 and eu <= 24: " + sigma.to_string());
  const IntegralLattice lat = gram_of(sigma);
  const BigInt det = lat.determinant();
  const DiscriminantForm df = discriminant_form(lat);
  const std::int64_t expected_roots = root_count_formula(sigma);

  std::vector<PrimeData> primes;
  for (auto p : prime_divisors(df.order())) {
    primes.push_back(local_choices(df, p));
    if (primes.back().choices.empty()) return {};
  }

  std::map<BinaryEvenForm, DiscriminantForm> t_forms;
  std::map<std::tuple<std::size_t, std::size_t, BinaryEvenForm>, bool> iso_cache;
  std::set<std::pair<std::vector<std::int64_t>, BinaryEvenForm>> found;

  std::vector<std::size_t> pick(primes.size(), 0);
  while (true) {
    std::int64_t d = 1;
    for (std::size_t k = 0; k < primes.size(); ++k) d *= primes[k].choices[pick[k]].quotient.order();

    std::optional<bool> roots_ok;
    std::optional<Overlattice> overlattice;
    for (const auto& t : enumerate_even_forms(d)) {
      auto it = t_forms.find(t);
      if (it == t_forms.end()) it = t_forms.emplace(t, discriminant_form(form_to_lattice(t))).first;
      bool match = true;
      for (std::size_t k = 0; k < primes.size() && match; ++k) {
        const auto key = std::make_tuple(k, pick[k], t);
        auto c = iso_cache.find(key);
        if (c == iso_cache.end()) {
          const bool iso = forms_isomorphic(primes[k].choices[pick[k]].quotient,
                                            p_part(it->second, primes[k].p), true);
          c = iso_cache.emplace(key, iso).first;
        }
        match = c->second;
      }
      if (!match) continue;

      if (!roots_ok) {
        std::vector<RationalVector> gens;
        for (std::size_t k = 0; k < primes.size(); ++k)
          for (const auto& g : primes[k].choices[pick[k]].subgroup.generators)
            gens.push_back(primes[k].part.carrier_of(g));
        overlattice = build_overlattice(lat, gens);
        roots_ok = roots_stay_in_lattice(*overlattice, expected_roots);
        if (*roots_ok && options.on_accepted) {
          AcceptedOverlattice acc{sigma, {}, *overlattice, {}};
          std::vector<const DiscriminantForm*> qs;
          for (std::size_t k = 0; k < primes.size(); ++k) {
            acc.subgroups.emplace_back(primes[k].p, primes[k].choices[pick[k]].subgroup);
            qs.push_back(&primes[k].choices[pick[k]].quotient);
          }
          acc.quotient = direct_sum(qs);
          options.on_accepted(acc);
        }
      }
      if (!*roots_ok) break;

      std::int64_t big = 1, small = 1;
      for (std::size_t k = 0; k < primes.size(); ++k) {
        const auto& c = primes[k].choices[pick[k]];
        big *= c.exponent;
        small *= c.subgroup.order / c.exponent;
      }
      std::vector<std::int64_t> mw;
      if (small > 1) mw.push_back(small);
      if (big > 1) mw.push_back(big);
      found.emplace(std::move(mw), t);
    }

    std::size_t k = 0;
    while (k < primes.size() && ++pick[k] == primes[k].choices.size()) pick[k++] = 0;
    if (k == primes.size()) break;
  }

  std::vector<DataTriple> out;
  for (const auto& [mw, t] : found) {
    out.push_back(DataTriple{sigma, mw, t});
    check_invariants(out.back(), det);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(jobs, n); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<DataTriple> classify_all(unsigned jobs) {
  const auto list = enumerate_list_L();
  std::vector<std::vector<DataTriple>> results(list.size());
  parallel_for(list.size(), jobs, [&](std::size_t i) { results[i] = classify_one(list[i]); });
  std::vector<DataTriple> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::string to_csv(const DataTriple& t) {
  return t.sigma.to_string() + ";" + t.mw_string() + ";" + std::to_string(t.t.a) + ";" +
         std::to_string(t.t.b) + ";" + std::to_string(t.t.c);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::int64_t parse_int(const std::string& s, const std::string& line) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument("bad integer '" + s + "' in: " + line);
  return v;
}

}  // namespace

DataTriple parse_triple(const std::string& line, std::optional<int>* number) {
  auto fields = split(line, ';');
  if (fields.size() == 6) {
    if (number) *number = static_cast<int>(parse_int(fields[0], line));
    fields.erase(fields.begin());
  } else if (fields.size() != 5) {
    throw std::invalid_argument("expected 5 or 6 ';'-separated fields: " + line);
  }
  DataTriple t;
  t.sigma = RootType::parse(fields[0]);
  if (fields[1] != "1")
    for (const auto& f : split(fields[1], '.')) t.mw.push_back(parse_int(f, line));
  t.t = {parse_int(fields[2], line), parse_int(fields[3], line), parse_int(fields[4], line)};
  return t;
}

std::vector<GoldenRow> read_golden(std::istream& in) {
  std::vector<GoldenRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::optional<int> no;
    GoldenRow row;
    row.triple = parse_triple(line, &no);
    row.number = no.value_or(0);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<GoldenRow> read_golden_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_golden(in);
}

DiffReport compare_golden(const std::vector<DataTriple>& computed,
                          const std::vector<DataTriple>& golden) {
  auto c = computed, g = golden;
  std::sort(c.begin(), c.end(), canonical_less);
  std::sort(g.begin(), g.end(), canonical_less);
  DiffReport r;
  std::set_difference(g.begin(), g.end(), c.begin(), c.end(), std::back_inserter(r.missing),
                      canonical_less);
  std::set_difference(c.begin(), c.end(), g.begin(), g.end(), std::back_inserter(r.unexpected),
                      canonical_less);
  return r;
}

DiffReport compare_golden(const std::vector<DataTriple>& computed, const std::string& golden_path) {
  std::vector<DataTriple> golden;
  for (auto& row : read_golden_file(golden_path)) golden.push_back(std::move(row.triple));
  return compare_golden(computed, golden);
}

}  // namespace ek3
