#include "qhcodes/sss.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "qhcodes/error.hpp"
#include "qhcodes/parallel.hpp"
#include "qhcodes/pointset.hpp"

namespace qh {

namespace {

// Unbiased draw from [0, bound): reject the 2^64 mod bound lowest outputs.
std::uint32_t uniform_below(std::mt19937_64& rng, std::uint32_t bound) {
  const std::uint64_t threshold = (0 - std::uint64_t{bound}) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return static_cast<std::uint32_t>(x % bound);
}

FieldElem dot_column(const LinearCode& c, std::span<const FieldElem> u, std::size_t col) {
  const Field& f = *c.field;
  FieldElem acc = f.zero();
  for (std::size_t i = 0; i < c.k; ++i) acc = f.add(acc, f.mul(u[i], c.at(i, col)));
  return acc;
}

void check_subset(const Scheme& s, const AccessSet& subset) {
  for (auto i : subset) {
    if (i < 1 || i > s.participants()) throw UsageError("participant " + std::to_string(i) + " out of range");
  }
}

PointSet to_bits(const AccessSet& a, std::size_t participants) {
  PointSet b(participants + 1);
  for (auto i : a) b.set(i);
  return b;
}

}  // namespace

LinearCode dual_code(const LinearCode& c) {
  const Field& f = *c.field;
  std::vector<Vec> rows(c.k, Vec(c.n));
  for (std::size_t i = 0; i < c.k; ++i) {
    for (std::size_t j = 0; j < c.n; ++j) rows[i][j] = c.at(i, j);
  }
  const SubspaceBasis b = span_rank(f, rows);
  std::vector<bool> pivot(c.n, false);
  for (auto p : b.pivots) pivot[p] = true;

  LinearCode d;
  d.field = c.field;
  d.n = c.n;
  d.k = c.n - b.rank();
  d.columns = c.columns;
  d.source = "dual of " + c.source;
  d.generator.assign(d.k * d.n, f.zero());
  std::size_t row = 0;
  for (std::size_t free = 0; free < c.n; ++free) {
    if (pivot[free]) continue;
    d.generator[row * d.n + free] = f.one();
    for (std::size_t i = 0; i < b.rank(); ++i) d.generator[row * d.n + b.pivots[i]] = f.neg(b.rows[i][free]);
    ++row;
  }
  return d;
}

Scheme make_massey_scheme(const LinearCode& c) {
  Scheme s{c, dual_code(c)};
  const Vec g0 = c.column(0);
  if (std::all_of(g0.begin(), g0.end(), [](FieldElem x) { return x.value == 0; })) {
    throw PreconditionError("column 0 of the scheme code is zero; it cannot carry a secret");
  }
  return s;
}

Scheme make_scheme(const Variety& v, std::optional<std::uint32_t> p0) {
  const LinearCode primal = code_from_variety(v, p0);
  Scheme s{dual_code(primal), primal};
  s.code.source = "dual of C(" + v.label() + ")";
  return s;
}

Dealing deal(const Scheme& s, FieldElem secret, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return deal(s, secret, rng);
}

Dealing deal(const Scheme& s, FieldElem secret, std::mt19937_64& rng) {
  const LinearCode& c = s.code;
  const Field& f = *c.field;
  if (!f.contains(secret)) throw UsageError("secret is not a field element");
  const Vec g0 = c.column(0);
  const auto lead = static_cast<std::size_t>(
      std::find_if(g0.begin(), g0.end(), [](FieldElem x) { return x.value != 0; }) - g0.begin());
  if (lead == g0.size()) throw PreconditionError("g_0 is the zero column");

  Dealing d;
  d.secret = secret;
  d.u.assign(c.k, f.zero());
  FieldElem rest = f.zero();
  for (std::size_t i = 0; i < c.k; ++i) {
    if (i == lead) continue;
    d.u[i] = FieldElem{uniform_below(rng, f.order())};
    rest = f.add(rest, f.mul(d.u[i], g0[i]));
  }
  d.u[lead] = f.div(f.sub(secret, rest), g0[lead]);
  d.shares.resize(s.participants());
  for (std::size_t i = 1; i < c.n; ++i) d.shares[i - 1] = dot_column(c, d.u, i);
  return d;
}

std::string_view status_name(RecoverStatus st) {
  switch (st) {
    case RecoverStatus::Recovered: return "recovered";
    case RecoverStatus::NotQualified: return "not-qualified";
    case RecoverStatus::Inconsistent: return "inconsistent";
  }
  return "?";
}

Recovery recover(const Scheme& s, const AccessSet& subset, std::span<const FieldElem> shares) {
  check_subset(s, subset);
  if (shares.size() != subset.size()) throw UsageError("one share per participant is required");
  const LinearCode& c = s.code;
  const Field& f = *c.field;

  // The shares must be the restriction of some codeword: u . g_i = t_i.
  std::vector<Vec> cols(c.k, Vec(subset.size()));
  for (std::size_t j = 0; j < subset.size(); ++j) {
    for (std::size_t i = 0; i < c.k; ++i) cols[i][j] = c.at(i, subset[j]);
  }
  if (!solve_combination(f, cols, shares)) return {RecoverStatus::Inconsistent, {}};

  std::vector<Vec> gs;
  for (auto i : subset) gs.push_back(c.column(i));
  const Vec g0 = c.column(0);
  const auto x = solve_combination(f, gs, g0);
  if (!x) return {RecoverStatus::NotQualified, {}};
  FieldElem secret = f.zero();
  for (std::size_t j = 0; j < subset.size(); ++j) secret = f.add(secret, f.mul((*x)[j], shares[j]));
  return {RecoverStatus::Recovered, secret};
}

std::map<std::size_t, std::size_t> AccessStructure::size_profile() const {
  std::map<std::size_t, std::size_t> out;
  for (const auto& s : sets) ++out[s.size()];
  return out;
}

bool AccessStructure::contains(const AccessSet& a) const { return std::binary_search(sets.begin(), sets.end(), a); }

AccessStructure make_structure(std::size_t participants, std::vector<AccessSet> sets, std::string provenance) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    if (s.empty()) throw UsageError("access sets must be nonempty");
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw UsageError("access set with repeated participant");
    if (s.front() < 1 || s.back() > participants) throw UsageError("participant index out of range");
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return AccessStructure{participants, std::move(sets), std::move(provenance)};
}

AccessStructure access_structure(const Variety& v, std::optional<std::uint32_t> p0, const Budget& budget) {
  const auto cb = cutting_blocking_check(v, budget);
  if (!cb.minimal) {
    throw PreconditionError("C(" + v.label() + ") is not minimal (hyperplane " +
                            std::to_string(*cb.witness_hyperplane) + " meets it in rank " +
                            std::to_string(*cb.witness_rank) +
                            "); hyperplanes need not give minimal access sets");
  }
  const std::uint32_t first = p0.value_or(v.points().front());
  const auto lp0 = v.local_index(first);
  if (!lp0) throw UsageError("P0 = " + std::to_string(first) + " is not a point of " + v.label());

  const auto& space = v.space();
  const auto& planes = v.planes();
  const std::size_t n = v.size();
  std::vector<AccessSet> sets;
  std::vector<std::uint64_t> bits(planes.words());
  for (std::size_t h = 0; h < space.num_hyperplanes(); ++h) {
    planes.section(space.coords(h), bits);
    if ((bits[*lp0 / 64] >> (*lp0 % 64)) & 1u) continue;
    AccessSet a;
    for (std::size_t t = 0; t < n; ++t) {
      if (t == *lp0 || ((bits[t / 64] >> (t % 64)) & 1u)) continue;
      a.push_back(static_cast<std::uint32_t>(t < *lp0 ? t + 1 : t));
    }
    sets.push_back(std::move(a));
  }
  return make_structure(n - 1, std::move(sets), v.label() + " P0=" + std::to_string(first));
}

DemocracyReport democracy_report(const AccessStructure& a) {
  DemocracyReport rep;
  rep.per_participant.assign(a.participants, 0);
  for (const auto& s : a.sets) {
    for (auto i : s) ++rep.per_participant[i - 1];
  }
  for (std::size_t i = 0; i < a.participants; ++i) {
    ++rep.histogram[rep.per_participant[i]];
    if (!a.sets.empty() && rep.per_participant[i] == a.sets.size()) {
      rep.dictatorial.push_back(static_cast<std::uint32_t>(i + 1));
    }
  }
  rep.democratic = rep.histogram.size() == 1;
  return rep;
}

bool is_antichain(const AccessStructure& a) {
  std::vector<PointSet> bits;
  bits.reserve(a.sets.size());
  for (const auto& s : a.sets) bits.push_back(to_bits(s, a.participants));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (i != j && bits[i].is_subset_of(bits[j])) return false;
    }
  }
  return true;
}

bool structures_equal(const AccessStructure& a, const AccessStructure& b) {
  return a.participants == b.participants && a.sets == b.sets;
}

PerfectnessReport perfectness_check(const Scheme& s, const AccessSet& subset, const Dealing& dealing,
                                    const Budget& budget) {
  check_subset(s, subset);
  const LinearCode& d = s.check;
  const Field& f = *d.field;
  const std::uint32_t qf = f.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d.k; ++i) {
    total *= qf;
    if (total > (std::uint64_t{1} << 32)) throw BudgetExceeded("dual code too large to enumerate");
  }
  budget.require(total * d.n * d.k, "perfectness enumeration");

  std::vector<bool> in_subset(d.n, false);
  for (auto i : subset) in_subset[i] = true;
  in_subset[0] = true;

  PerfectnessReport rep;
  std::optional<FieldElem> pinned;
  bool conflict = false;
  Vec v(d.k, f.zero()), word(d.n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (std::size_t i = 0; i < d.k; ++i, t /= qf) v[i] = FieldElem{static_cast<std::uint32_t>(t % qf)};
    ++rep.checked;
    bool supported = true;
    for (std::size_t j = 0; j < d.n && supported; ++j) {
      word[j] = dot_column(d, v, j);
      if (word[j].value != 0 && !in_subset[j]) supported = false;
    }
    if (!supported || word[0].value == 0) continue;
    ++rep.relations;
    // word_0 t_0 + sum word_i t_i = 0.
    FieldElem acc = f.zero();
    for (auto i : subset) acc = f.add(acc, f.mul(word[i], dealing.shares[i - 1]));
    const FieldElem secret = f.neg(f.div(acc, word[0]));
    if (pinned && *pinned != secret) conflict = true;
    pinned = secret;
  }
  if (conflict) throw PreconditionError("shares are inconsistent with the scheme code");

  // Dealing vectors u consistent with the shares (and a given secret) form a
  // coset of the kernel of u -> (u . g_i)_{i in subset} (plus u . g_0).
  std::vector<Vec> cols;
  for (auto i : subset) cols.push_back(s.code.column(i));
  cols.push_back(s.code.column(0));
  const std::size_t rank_all = rank_of(f, cols);
  rep.multiplicity_log = s.code.k - rank_all;
  if (pinned) {
    rep.secrets.push_back(pinned->value);
  } else {
    for (std::uint32_t x = 0; x < qf; ++x) rep.secrets.push_back(x);
  }
  rep.qualified = rep.secrets.size() == 1;
  rep.uniform = rep.secrets.size() == qf;
  return rep;
}

// --- permutation groups ---------------------------------------------------------

Perm identity_perm(std::size_t degree) {
  Perm p(degree + 1);
  for (std::size_t i = 0; i <= degree; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

Perm parse_cycles(std::string_view text, std::size_t degree) {
  Perm p = identity_perm(degree);
  std::vector<bool> used(degree + 1, false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw UsageError("malformed cycle notation near position " + std::to_string(i));
    ++i;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::uint32_t x = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), x);
      if (ec != std::errc{}) throw UsageError("malformed cycle notation near position " + std::to_string(i));
      i = static_cast<std::size_t>(ptr - text.data());
      if (x < 1 || x > degree) throw UsageError("point " + std::to_string(x) + " outside 1.." + std::to_string(degree));
      if (used[x]) throw UsageError("point " + std::to_string(x) + " appears twice");
      used[x] = true;
      cycle.push_back(x);
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;
    }
    for (std::size_t j = 0; j < cycle.size(); ++j) p[cycle[j]] = cycle[(j + 1) % cycle.size()];
    skip_ws();
  }
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw UsageError("permutations of different degree");
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
  return out;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators) : degree_(degree), gens_(std::move(generators)) {
  for (const auto& g : gens_) {
    if (g.size() != degree_ + 1) throw UsageError("generator has the wrong degree");
    std::vector<bool> seen(degree_ + 1, false);
    for (auto x : g) {
      if (x > degree_ || seen[x]) throw UsageError("generator is not a permutation");
      seen[x] = true;
    }
  }
}

const std::vector<Perm>& PermGroup::elements(std::size_t max_order) const {
  if (!elements_.empty()) return elements_;
  std::set<Perm> seen;
  std::deque<Perm> queue;
  const Perm id = identity_perm(degree_);
  seen.insert(id);
  queue.push_back(id);
  std::vector<Perm> out;
  while (!queue.empty()) {
    Perm x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens_) {
      Perm y = compose(x, g);
      if (seen.insert(y).second) {
        if (seen.size() > max_order) {
          throw BudgetExceeded("group order exceeds " + std::to_string(max_order));
        }
        queue.push_back(std::move(y));
      }
    }
    out.push_back(std::move(x));
  }
  elements_ = std::move(out);
  return elements_;
}

PermGroup group_closure(std::vector<Perm> generators, std::size_t degree, std::size_t max_order) {
  PermGroup g(degree, std::move(generators));
  g.elements(max_order);
  return g;
}

AccessSet apply(const Perm& g, const AccessSet& a) {
  AccessSet out;
  out.reserve(a.size());
  for (auto x : a) {
    if (x >= g.size()) throw UsageError("access set index outside the permutation degree");
    out.push_back(g[x]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AccessStructure develop(const std::vector<AccessSet>& starters, const PermGroup& g, std::size_t participants) {
  std::vector<AccessSet> sets;
  for (const auto& e : g.elements()) {
    for (const auto& s : starters) sets.push_back(apply(e, s));
  }
  return make_structure(participants, std::move(sets), "development of " + std::to_string(starters.size()) + " starters");
}

bool is_automorphism(const Perm& g, const AccessStructure& a) {
  return std::all_of(a.sets.begin(), a.sets.end(), [&](const AccessSet& s) { return a.contains(apply(g, s)); });
}

ExampleFixture parse_example(std::string_view text) {
  ExampleFixture fx;
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> gens;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    if (key == "degree") {
      fx.degree = std::stoul(rest);
    } else if (key == "fixed") {
      fx.fixed_point = static_cast<std::uint32_t>(std::stoul(rest));
    } else if (key.rfind("gamma", 0) == 0) {
      gens.push_back(rest);
    } else if (key.rfind("S", 0) == 0) {
      for (char& ch : rest) {
        if (ch == ',' || ch == '{' || ch == '}') ch = ' ';
      }
      std::istringstream vs(rest);
      AccessSet s;
      for (std::uint32_t x; vs >> x;) s.push_back(x);
      std::sort(s.begin(), s.end());
      fx.starters.push_back(std::move(s));
    } else {
      throw UsageError("unknown fixture key: " + key);
    }
  }
  if (fx.degree == 0) throw UsageError("fixture lacks a degree line");
  for (const auto& g : gens) {
    fx.generator_text.push_back(g);
    fx.generators.push_back(parse_cycles(g, fx.degree));
  }
  return fx;
}

ExampleFixture load_example(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open fixture " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_example(ss.str());
}

}  // namespace qh
