#include "ek3/root_type.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace ek3 {

RootTypeParseError::RootTypeParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)),
      position_(position) {}

bool valid_component(Component c) {
  switch (c.family) {
    case Family::A: return c.index >= 1;
    case Family::D: return c.index >= 4;
    case Family::E: return c.index >= 6 && c.index <= 8;
  }
  return false;
}

std::string to_string(Component c) {
  static constexpr char kLetters[] = {'A', 'D', 'E'};
  return kLetters[static_cast<int>(c.family)] + std::to_string(c.index);
}

RootType::RootType(std::vector<std::pair<Component, int>> terms) {
  std::map<Component, int> merged;
  for (const auto& [c, m] : terms) {
    if (!valid_component(c)) throw std::invalid_argument("invalid component " + ek3::to_string(c));
    if (m < 0) throw std::invalid_argument("negative multiplicity");
    if (m > 0) merged[c] += m;
  }
  terms_.assign(merged.begin(), merged.end());
}

RootType RootType::parse(std::string_view text) {
  std::vector<std::pair<Component, int>> terms;
  std::size_t pos = 0;
  auto read_number = [&](int& out) {
    const std::size_t start = pos;
    long long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000000) throw RootTypeParseError("number too large", start);
      ++pos;
    }
    if (pos == start) return false;
    out = static_cast<int>(v);
    return true;
  };
  if (text.empty()) throw RootTypeParseError("empty root type", 0);
  while (true) {
    const std::size_t term_start = pos;
    int mult = 1;
    if (read_number(mult) && mult == 0) throw RootTypeParseError("zero multiplicity", term_start);
    if (pos >= text.size()) throw RootTypeParseError("expected A, D or E", pos);
    Component c;
    switch (text[pos]) {
      case 'A': c.family = Family::A; break;
      case 'D': c.family = Family::D; break;
      case 'E': c.family = Family::E; break;
      default: throw RootTypeParseError("expected A, D or E", pos);
    }
    ++pos;
    const std::size_t index_pos = pos;
    if (!read_number(c.index)) throw RootTypeParseError("expected index", pos);
    if (!valid_component(c)) throw RootTypeParseError("invalid index", index_pos);
    terms.emplace_back(c, mult);
    if (pos == text.size()) break;
    if (text[pos] != '+') throw RootTypeParseError("expected '+'", pos);
    ++pos;
  }
  return RootType(std::move(terms));
}

std::string RootType::to_string() const {
  std::string out;
  for (const auto& [c, m] : terms_) {
    if (!out.empty()) out += '+';
    if (m != 1) out += std::to_string(m);
    out += ek3::to_string(c);
  }
  return out;
}

std::vector<Component> RootType::components() const {
  std::vector<Component> out;
  for (const auto& [c, m] : terms_) out.insert(out.end(), static_cast<std::size_t>(m), c);
  return out;
}

int RootType::multiplicity(Component c) const {
  for (const auto& [d, m] : terms_)
    if (d == c) return m;
  return 0;
}

RootType RootType::operator+(const RootType& other) const {
  auto terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return RootType(std::move(terms));
}

RootType RootType::plus(Component c, int mult) const {
  auto terms = terms_;
  terms.emplace_back(c, mult);
  return RootType(std::move(terms));
}

RootType RootType::minus(Component c) const {
  auto terms = terms_;
  for (auto& [d, m] : terms)
    if (d == c) {
      --m;
      return RootType(std::move(terms));
    }
  throw std::invalid_argument(ek3::to_string(c) + " does not occur in " + to_string());
}

int rank_of(const RootType& s) {
  int r = 0;
  for (const auto& [c, m] : s.terms()) r += c.index * m;
  return r;
}

std::int64_t root_count_formula(const RootType& s) {
  std::int64_t total = 0;
  for (const auto& [c, m] : s.terms()) {
    const std::int64_t n = c.index;
    std::int64_t roots = 0;
    switch (c.family) {
      case Family::A: roots = n * n + n; break;
      case Family::D: roots = 2 * n * n - 2 * n; break;
      case Family::E: roots = n == 6 ? 72 : n == 7 ? 126 : 240; break;
    }
    total += roots * m;
  }
  return total;
}

int eu_of(const RootType& s) {
  int total = 0;
  for (const auto& [c, m] : s.terms())
    total += m * (c.family == Family::A ? c.index + 1 : c.index + 2);
  return total;
}

IntMatrix cartan_block(Component c) {
  const std::size_t n = static_cast<std::size_t>(c.index);
  IntMatrix g(n, n);
  auto join = [&](std::size_t i, std::size_t j) { g(i, j) = g(j, i) = 1; };
  for (std::size_t i = 0; i < n; ++i) g(i, i) = -2;
  switch (c.family) {
    case Family::A:
      for (std::size_t i = 0; i + 1 < n; ++i) join(i, i + 1);
      break;
    case Family::D:
      // chain 0 - 1 - ... - (n-2), extra node n-1 attached to n-3
      for (std::size_t i = 0; i + 2 < n; ++i) join(i, i + 1);
      join(n - 3, n - 1);
      break;
    case Family::E:
      // chain 0 - 1 - ... - (n-2), extra node n-1 attached to node 2
      for (std::size_t i = 0; i + 2 < n; ++i) join(i, i + 1);
      join(2, n - 1);
      break;
  }
  return g;
}

IntegralLattice gram_of(const RootType& s) {
  const std::size_t n = static_cast<std::size_t>(rank_of(s));
  IntMatrix g(n, n);
  std::size_t offset = 0;
  for (const auto& c : s.components()) {
    const IntMatrix block = cartan_block(c);
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j) g(offset + i, offset + j) = block(i, j);
    offset += block.rows();
  }
  return IntegralLattice(std::move(g));
}

std::size_t discriminant_length(const RootType& s) {
  std::map<std::int64_t, std::size_t> by_prime;
  for (const auto& [c, m] : s.terms()) {
    const std::size_t mult = static_cast<std::size_t>(m);
    switch (c.family) {
      case Family::A:
        for (auto p : prime_divisors(c.index + 1)) by_prime[p] += mult;
        break;
      case Family::D: by_prime[2] += (c.index % 2 == 0 ? 2 : 1) * mult; break;
      case Family::E:
        if (c.index == 6) by_prime[3] += mult;
        if (c.index == 7) by_prime[2] += mult;
        break;
    }
  }
  std::size_t best = 0;
  for (const auto& [p, len] : by_prime) best = std::max(best, len);
  return best;
}

bool check_N2(const RootType& s) {
  return static_cast<int>(discriminant_length(s)) <= 20 - rank_of(s);
}

namespace {

std::vector<Component> all_components(int max_rank) {
  std::vector<Component> out;
  for (int n = 1; n <= max_rank; ++n) out.push_back({Family::A, n});
  for (int n = 4; n <= max_rank; ++n) out.push_back({Family::D, n});
  for (int n = 6; n <= std::min(8, max_rank); ++n) out.push_back({Family::E, n});
  return out;
}

template <class Visit>
void partitions(const std::vector<Component>& parts, std::size_t i, int remaining,
                std::vector<std::pair<Component, int>>& acc, const Visit& visit) {
  if (remaining == 0) {
    visit(RootType(acc));
    return;
  }
  if (i == parts.size()) return;
  const Component c = parts[i];
  for (int m = 0; m * c.index <= remaining; ++m) {
    if (m > 0) acc.emplace_back(c, m);
    partitions(parts, i + 1, remaining - m * c.index, acc, visit);
    if (m > 0) acc.pop_back();
  }
}

void sort_canonical(std::vector<RootType>& v) {
  std::vector<std::pair<std::string, RootType>> keyed;
  keyed.reserve(v.size());
  for (auto& s : v) keyed.emplace_back(s.to_string(), std::move(s));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  v.clear();
  for (auto& [k, s] : keyed) v.push_back(std::move(s));
}

}  // namespace

std::vector<RootType> enumerate_rank(int rank) {
  std::vector<RootType> out;
  if (rank < 0) return out;
  std::vector<std::pair<Component, int>> acc;
  partitions(all_components(rank), 0, rank, acc, [&](RootType s) { out.push_back(std::move(s)); });
  sort_canonical(out);
  return out;
}

std::vector<RootType> enumerate_list_L() {
  std::vector<RootType> out;
  for (auto& s : enumerate_rank(18))
    if (eu_of(s) <= 24) out.push_back(std::move(s));
  return out;
}

NLists enumerate_N_lists() {
  NLists lists;
  for (int r = 1; r <= 18; ++r)
    for (auto& s : enumerate_rank(r)) {
      if (!check_N2(s)) continue;
      if (r == 18) lists.rank18_N2.push_back(s);
      lists.all_N2.push_back(std::move(s));
    }
  sort_canonical(lists.all_N2);
  return lists;
}

}  // namespace ek3
