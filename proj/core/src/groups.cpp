#include "gtorsion/groups.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <optional>
#include <queue>

#include <json.hpp>

#include "gtorsion/errors.hpp"

namespace gtorsion {

// ------------------------------------------------------------------ words

Word Word::power(std::uint32_t generator, int k) {
  Word w;
  const int e = k >= 0 ? 1 : -1;
  for (int i = 0; i < (k >= 0 ? k : -k); ++i) w.letters.push_back({generator, e});
  return w;
}

Word Word::commutator(std::uint32_t x, std::uint32_t y) {
  return Word{{{x, 1}, {y, 1}, {x, -1}, {y, -1}}};
}

Word Word::inverse() const {
  Word w;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back({it->generator, -it->exponent});
  return w;
}

Word operator*(Word a, const Word& b) {
  a.letters.insert(a.letters.end(), b.letters.begin(), b.letters.end());
  return a;
}

// ------------------------------------------------------------------ group

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<Element>> cayley,
                         std::vector<Generator> generators, std::vector<Word> relators)
    : name_(std::move(name)), cayley_(std::move(cayley)), generators_(std::move(generators)),
      relators_(std::move(relators)) {
  const std::size_t n = cayley_.size();
  if (n == 0) throw InvalidArgumentError("group table is empty");
  for (const auto& row : cayley_) {
    if (row.size() != n) throw InvalidArgumentError("group table is not square");
    for (Element e : row)
      if (e >= n) throw InvalidArgumentError("group table entry out of range");
  }
  bool found = false;
  for (Element e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = cayley_[e][x] == x && cayley_[x][e] == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw InvalidArgumentError("group table has no identity");
  inverse_.assign(n, 0);
  for (Element x = 0; x < n; ++x) {
    auto it = std::find(cayley_[x].begin(), cayley_[x].end(), identity_);
    if (it == cayley_[x].end()) throw InvalidArgumentError("element without inverse");
    const auto y = static_cast<Element>(it - cayley_[x].begin());
    if (cayley_[y][x] != identity_) throw InvalidArgumentError("inverse is not two-sided");
    inverse_[x] = y;
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (cayley_[cayley_[a][b]][c] != cayley_[a][cayley_[b][c]])
          throw InvalidArgumentError("group table is not associative");

  std::vector<Element> gens;
  for (const auto& g : generators_) {
    if (g.element >= n) throw InvalidArgumentError("generator out of range: " + g.name);
    gens.push_back(g.element);
  }
  if (subgroup_closure(*this, gens).size() != n) throw InvalidArgumentError("generators do not generate the group");
  for (const auto& w : relators_) {
    for (const auto& l : w.letters)
      if (l.generator >= generators_.size() || (l.exponent != 1 && l.exponent != -1))
        throw InvalidArgumentError("malformed relator word");
    if (evaluate_word(*this, w) != identity_) throw InvalidArgumentError("relator does not evaluate to the identity");
  }
}

Element FiniteGroup::power(Element a, long k) const {
  Element base = k >= 0 ? a : inverse_[a];
  Element r = identity_;
  for (long i = 0; i < (k >= 0 ? k : -k); ++i) r = cayley_[r][base];
  return r;
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != identity_; x = cayley_[x][a]) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order(); ++a)
    for (Element b = a + 1; b < order(); ++b)
      if (cayley_[a][b] != cayley_[b][a]) return false;
  return true;
}

FiniteGroup FiniteGroup::with_relators(std::vector<Word> relators) const {
  return FiniteGroup(name_, cayley_, generators_, std::move(relators));
}

FiniteGroup FiniteGroup::renamed(std::string name) const {
  FiniteGroup g = *this;
  g.name_ = std::move(name);
  return g;
}

Element evaluate_word(const FiniteGroup& g, const Word& w) {
  Element r = g.identity();
  for (const auto& l : w.letters) {
    Element x = g.generators()[l.generator].element;
    r = g.mul(r, l.exponent > 0 ? x : g.inverse(x));
  }
  return r;
}

Word word_for_element(const FiniteGroup& g, Element e) {
  // breadth-first search over right multiplication by generators and inverses
  const std::size_t n = g.order();
  std::vector<bool> seen(n, false);
  std::vector<std::pair<Element, Letter>> parent(n);
  std::queue<Element> q;
  q.push(g.identity());
  seen[g.identity()] = true;
  while (!q.empty()) {
    Element x = q.front();
    q.pop();
    if (x == e) break;
    for (std::uint32_t i = 0; i < g.generators().size(); ++i) {
      for (int ex : {1, -1}) {
        Element s = g.generators()[i].element;
        Element y = g.mul(x, ex > 0 ? s : g.inverse(s));
        if (!seen[y]) {
          seen[y] = true;
          parent[y] = {x, Letter{i, ex}};
          q.push(y);
        }
      }
    }
  }
  if (!seen[e]) throw InvalidArgumentError("element not reachable from generators");
  Word w;
  for (Element x = e; x != g.identity(); x = parent[x].first) w.letters.push_back(parent[x].second);
  std::reverse(w.letters.begin(), w.letters.end());
  return w;
}

// ------------------------------------------------------------ constructors

namespace {

/// Closes a set of concrete generators under multiplication; the identity
/// gets index 0 and new elements are numbered in breadth-first order.
template <typename T, typename Mul>
std::pair<std::vector<std::vector<Element>>, std::vector<Element>> closure_table(const T& one,
                                                                                  const std::vector<T>& gens,
                                                                                  Mul mul) {
  std::vector<T> elems{one};
  std::map<T, Element> index{{one, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : gens) {
      T y = mul(elems[i], s);
      if (!index.contains(y)) {
        index.emplace(y, static_cast<Element>(elems.size()));
        elems.push_back(y);
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(mul(elems[a], elems[b]));
  std::vector<Element> gen_idx;
  for (const auto& s : gens) gen_idx.push_back(index.at(s));
  return {std::move(table), std::move(gen_idx)};
}

std::string cyclic_name(int k) { return "C" + std::to_string(k); }

const char* default_generator_name(std::size_t i) {
  static constexpr std::array<const char*, 8> names{"a", "b", "c", "d", "e", "f", "g", "h"};
  return i < names.size() ? names[i] : "x";
}

}  // namespace

FiniteGroup trivial_group() { return FiniteGroup("C1", {{0}}, {}, {}); }

FiniteGroup make_abelian(std::span<const int> factors) {
  if (factors.empty()) throw InvalidArgumentError("make_abelian: empty factor list");
  for (int k : factors)
    if (k < 2) throw InvalidArgumentError("make_abelian: invariant factor must be >= 2, got " + std::to_string(k));
  const std::size_t r = factors.size();
  std::vector<std::size_t> stride(r);
  std::size_t n = 1;
  for (std::size_t i = r; i-- > 0;) {
    stride[i] = n;
    n *= static_cast<std::size_t>(factors[i]);
  }
  auto digits = [&](std::size_t x) {
    std::vector<std::size_t> d(r);
    for (std::size_t i = 0; i < r; ++i) d[i] = (x / stride[i]) % static_cast<std::size_t>(factors[i]);
    return d;
  };
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a) {
    auto da = digits(a);
    for (std::size_t b = 0; b < n; ++b) {
      auto db = digits(b);
      std::size_t c = 0;
      for (std::size_t i = 0; i < r; ++i) c += ((da[i] + db[i]) % static_cast<std::size_t>(factors[i])) * stride[i];
      table[a][b] = static_cast<Element>(c);
    }
  }
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < r; ++i) gens.push_back({default_generator_name(i), static_cast<Element>(stride[i])});
  std::vector<Word> rels;
  std::string name;
  for (std::uint32_t i = 0; i < r; ++i) {
    rels.push_back(Word::power(i, factors[i]));
    for (std::uint32_t j = i + 1; j < r; ++j) rels.push_back(Word::commutator(i, j));
    name += (i ? "x" : "") + cyclic_name(factors[i]);
  }
  return FiniteGroup(name, std::move(table), std::move(gens), std::move(rels));
}

FiniteGroup make_abelian(std::initializer_list<int> factors) {
  return make_abelian(std::span<const int>(factors.begin(), factors.size()));
}

FiniteGroup two_generator_abelian(int n, int m) {
  if (n < 1 || m < 1) throw InvalidArgumentError("two_generator_abelian: orders must be >= 1");
  const auto N = static_cast<std::size_t>(n * m);
  std::vector<std::vector<Element>> table(N, std::vector<Element>(N));
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      std::size_t i = (x / m + y / m) % n, j = (x % m + y % m) % m;
      table[x][y] = static_cast<Element>(i * m + j);
    }
  std::vector<Generator> gens{{"a", static_cast<Element>(n > 1 ? m : 0)}, {"b", static_cast<Element>(m > 1 ? 1 : 0)}};
  std::vector<Word> rels{Word::power(0, n), Word::commutator(0, 1), Word::power(1, m)};
  return FiniteGroup(cyclic_name(n) + "x" + cyclic_name(m), std::move(table), std::move(gens), std::move(rels));
}

FiniteGroup dihedral(int k) {
  if (k < 2) throw InvalidArgumentError("dihedral: k must be >= 2");
  using Perm = std::vector<int>;
  Perm r(k), s(k), id(k);
  for (int i = 0; i < k; ++i) {
    id[i] = i;
    r[i] = (i + 1) % k;
    s[i] = (k - i) % k;
  }
  auto compose = [](const Perm& a, const Perm& b) {  // (a b)(x) = a(b(x))
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
  };
  auto [table, gi] = closure_table(id, std::vector<Perm>{r, s}, compose);
  std::vector<Word> rels{Word::power(0, k), Word::power(1, 2), Word{{{1, 1}, {0, 1}, {1, 1}, {0, 1}}}};
  return FiniteGroup("D" + std::to_string(2 * k), std::move(table), {{"r", gi[0]}, {"s", gi[1]}}, std::move(rels));
}

FiniteGroup quaternion8() {
  using Q = std::array<int, 4>;  // w + x i + y j + z k
  auto mul = [](const Q& a, const Q& b) {
    return Q{a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
             a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
             a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
             a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
  };
  auto [table, gi] = closure_table(Q{1, 0, 0, 0}, std::vector<Q>{Q{0, 1, 0, 0}, Q{0, 0, 1, 0}}, mul);
  std::vector<Word> rels{Word::power(0, 4), Word::power(0, 2) * Word::power(1, -2),
                         Word{{{1, -1}, {0, 1}, {1, 1}, {0, 1}}}};
  return FiniteGroup("Q8", std::move(table), {{"i", gi[0]}, {"j", gi[1]}}, std::move(rels));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t ng = g.order(), nh = h.order();
  const std::size_t n = ng * nh;
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a][b] = static_cast<Element>(g.mul(static_cast<Element>(a / nh), static_cast<Element>(b / nh)) * nh +
                                         h.mul(static_cast<Element>(a % nh), static_cast<Element>(b % nh)));
  std::vector<Generator> gens;
  for (const auto& x : g.generators()) gens.push_back({x.name, static_cast<Element>(x.element * nh + h.identity())});
  for (const auto& y : h.generators()) {
    std::string nm = y.name;
    for (const auto& x : g.generators())
      if (x.name == nm) nm += "'";
    gens.push_back({nm, static_cast<Element>(g.identity() * nh + y.element)});
  }
  const auto shift = static_cast<std::uint32_t>(g.generators().size());
  std::vector<Word> rels = g.relators();
  for (Word w : h.relators()) {
    for (auto& l : w.letters) l.generator += shift;
    rels.push_back(std::move(w));
  }
  for (std::uint32_t i = 0; i < g.generators().size(); ++i)
    for (std::uint32_t j = 0; j < h.generators().size(); ++j) rels.push_back(Word::commutator(i, shift + j));
  return FiniteGroup(g.name() + "x" + h.name(), std::move(table), std::move(gens), std::move(rels));
}

// ----------------------------------------------------------------- catalog

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{
      "C1",    "C2",       "C3",       "C4",    "C2xC2",    "C5",       "C6",         "C7",
      "C8",    "C4xC2",    "C2xC2xC2", "D8",    "Q8",       "C9",       "C3xC3",      "C10",
      "C11",   "C12",      "C6xC2",    "C13",   "C14",      "C15",      "C16",        "C8xC2",
      "C4xC4", "C4xC2xC2", "C2xC2xC2xC2", "D8xC2", "Q8xC2"};
  return names;
}

FiniteGroup catalog(std::string_view name) {
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string msg = "unknown catalog group '" + std::string(name) + "'; available:";
    for (const auto& n : names) msg += " " + n;
    throw CatalogMissError(msg);
  }
  return parse_group_spec(name);
}

namespace {

int parse_positive(std::string_view s, std::string_view spec) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1)
    throw ParseError("bad group spec '" + std::string(spec) + "'");
  return v;
}

enum class AtomKind { cyclic, dihedral, quaternion };

struct Atom {
  AtomKind kind;
  int order;
};

std::vector<Atom> parse_atoms(std::string_view spec) {
  if (spec.empty()) throw ParseError("empty group spec");
  std::vector<Atom> atoms;
  for (std::size_t start = 0;;) {
    const std::size_t pos = spec.find('x', start);
    const auto a = spec.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    if (a.size() < 2) throw ParseError("bad group spec '" + std::string(spec) + "'");
    if (a == "Q8") {
      atoms.push_back({AtomKind::quaternion, 8});
    } else if (a[0] == 'C') {
      atoms.push_back({AtomKind::cyclic, parse_positive(a.substr(1), spec)});
    } else if (a[0] == 'D') {
      const int k = parse_positive(a.substr(1), spec);
      if (k < 4 || k % 2 != 0) throw ParseError("dihedral order must be even and >= 4 in '" + std::string(spec) + "'");
      atoms.push_back({AtomKind::dihedral, k});
    } else {
      throw ParseError("unknown factor '" + std::string(a) + "' in group spec '" + std::string(spec) + "'");
    }
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return atoms;
}

}  // namespace

std::uint64_t group_spec_order(std::string_view spec) {
  std::uint64_t order = 1;
  for (const auto& a : parse_atoms(spec)) {
    order *= static_cast<std::uint64_t>(a.order);
    if (order > (std::uint64_t{1} << 32)) throw ParseError("group spec '" + std::string(spec) + "' is too large");
  }
  return order;
}

FiniteGroup parse_group_spec(std::string_view spec) {
  const auto atoms = parse_atoms(spec);
  if (group_spec_order(spec) > 512) throw InvalidArgumentError("group spec '" + std::string(spec) + "' is too large");
  const bool all_cyclic =
      std::all_of(atoms.begin(), atoms.end(), [](const Atom& a) { return a.kind == AtomKind::cyclic; });
  if (all_cyclic) {
    std::vector<int> cyclic;
    for (const auto& a : atoms)
      if (a.order > 1) cyclic.push_back(a.order);
    if (cyclic.empty()) return trivial_group();
    return make_abelian(cyclic);
  }
  std::optional<FiniteGroup> acc;
  for (const auto& a : atoms) {
    if (a.order == 1) continue;
    FiniteGroup f = a.kind == AtomKind::quaternion ? quaternion8()
                    : a.kind == AtomKind::dihedral ? dihedral(a.order / 2)
                                                   : make_abelian({a.order});
    acc = acc ? direct_product(*acc, f) : f;
  }
  return acc->renamed(std::string(spec));
}

FiniteGroup group_from_json(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("group file: ") + e.what());
  }
  try {
    auto cayley = j.at("cayley").get<std::vector<std::vector<Element>>>();
    if (j.contains("order") && j.at("order").get<std::size_t>() != cayley.size())
      throw ParseError("group file: order does not match the table");
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators")) gens.push_back({g.at("name").get<std::string>(), g.at("element").get<Element>()});
    std::vector<Word> rels;
    for (const auto& r : j.value("relators", json::array())) {
      Word w;
      for (const auto& l : r) {
        auto nm = l.at(0).get<std::string>();
        int ex = l.at(1).get<int>();
        auto it = std::find_if(gens.begin(), gens.end(), [&](const Generator& g) { return g.name == nm; });
        if (it == gens.end()) throw ParseError("group file: relator uses unknown generator '" + nm + "'");
        const auto gi = static_cast<std::uint32_t>(it - gens.begin());
        // exponents other than +-1 are expanded into repeated letters
        Word p = Word::power(gi, ex);
        w = w * p;
      }
      rels.push_back(std::move(w));
    }
    return FiniteGroup(j.value("name", std::string("custom")), std::move(cayley), std::move(gens), std::move(rels));
  } catch (const json::exception& e) {
    throw ParseError(std::string("group file: ") + e.what());
  }
}

std::string group_to_json(const FiniteGroup& g) {
  using nlohmann::json;
  json j;
  j["name"] = g.name();
  j["order"] = g.order();
  j["cayley"] = g.cayley();
  json gens = json::array();
  for (const auto& x : g.generators()) gens.push_back({{"name", x.name}, {"element", x.element}});
  j["generators"] = gens;
  json rels = json::array();
  for (const auto& w : g.relators()) {
    json r = json::array();
    for (const auto& l : w.letters) r.push_back(json::array({g.generators()[l.generator].name, l.exponent}));
    rels.push_back(r);
  }
  j["relators"] = rels;
  return j.dump();
}

// --------------------------------------------------------------- subgroups

std::vector<Element> subgroup_closure(const FiniteGroup& g, std::span<const Element> gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> elems{g.identity()};
  in[g.identity()] = true;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Element s : gens) {
      Element y = g.mul(elems[i], s);
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<Element> sylow_subgroup(const FiniteGroup& g, unsigned p) {
  if (p < 2) throw InvalidArgumentError("sylow_subgroup: p must be prime");
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InvalidArgumentError("sylow_subgroup: p must be prime");
  std::size_t target = 1;
  for (std::size_t n = g.order(); n % p == 0; n /= p) target *= p;
  auto is_p_power = [p](std::size_t k) {
    while (k % p == 0) k /= p;
    return k == 1;
  };
  std::vector<Element> gens;
  std::vector<Element> h{g.identity()};
  // grow a p-subgroup one element at a time; a proper p-subgroup always has
  // a p-element in its normalizer outside it, so the scan cannot get stuck
  bool grew = true;
  while (h.size() < target && grew) {
    grew = false;
    for (Element x = 0; x < g.order(); ++x) {
      if (std::binary_search(h.begin(), h.end(), x) || !is_p_power(g.element_order(x))) continue;
      gens.push_back(x);
      auto k = subgroup_closure(g, gens);
      if (is_p_power(k.size())) {
        h = std::move(k);
        grew = true;
        break;
      }
      gens.pop_back();
    }
  }
  if (h.size() != target) throw ConsistencyError("sylow_subgroup: search exhausted");
  return h;
}

Subgroup make_subgroup(const FiniteGroup& g, std::span<const Element> elements) {
  std::vector<Element> elems(elements.begin(), elements.end());
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  // identity first so the subgroup's identity has index 0
  auto it = std::find(elems.begin(), elems.end(), g.identity());
  if (it == elems.end()) throw InvalidArgumentError("make_subgroup: identity missing");
  std::rotate(elems.begin(), it, it + 1);
  std::vector<std::int64_t> local(g.order(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) local[elems[i]] = static_cast<std::int64_t>(i);
  const std::size_t n = elems.size();
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto c = local[g.mul(elems[a], elems[b])];
      if (c < 0) throw InvalidArgumentError("make_subgroup: set is not closed");
      table[a][b] = static_cast<Element>(c);
    }
  std::vector<Element> chosen;
  std::vector<Generator> gens;
  std::vector<Word> rels, words;
  std::vector<Element> sorted = elems;
  std::sort(sorted.begin(), sorted.end());
  for (Element x : sorted) {
    if (subgroup_closure(g, chosen).size() == n) break;
    auto cl = subgroup_closure(g, chosen);
    if (std::binary_search(cl.begin(), cl.end(), x)) continue;
    chosen.push_back(x);
    const auto gi = static_cast<std::uint32_t>(gens.size());
    gens.push_back({"s" + std::to_string(gi), static_cast<Element>(local[x])});
    rels.push_back(Word::power(gi, static_cast<int>(g.element_order(x))));
    words.push_back(word_for_element(g, x));
  }
  FiniteGroup sub(g.name() + "_sub" + std::to_string(n), std::move(table), std::move(gens), std::move(rels));
  return Subgroup{std::move(sub), std::move(elems), std::move(words)};
}

}  // namespace gtorsion
