#include "qhcodes/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "qhcodes/code.hpp"
#include "qhcodes/error.hpp"
#include "qhcodes/sss.hpp"
#include "qhcodes/variety.hpp"

#ifndef QHCODES_DATA_DIR
#define QHCODES_DATA_DIR "data"
#endif

namespace qh {

namespace {

template <class T>
std::string str(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

template <class K, class V>
std::string str(const std::map<K, V>& m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, v] : m) {
    os << (first ? "" : ", ") << k << ':' << v;
    first = false;
  }
  os << '}';
  return os.str();
}

template <class T>
std::string str(const std::vector<T>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << '}';
  return os.str();
}

// Collects sub-checks of one criterion.
class Checker {
 public:
  explicit Checker(CriterionResult& r) : r_(r) {}
  template <class A, class B>
  void equal(const std::string& name, const A& measured, const B& expected) {
    record(name, measured == expected, str(measured), str(expected));
  }
  void truth(const std::string& name, bool ok, const std::string& measured = "") {
    record(name, ok, measured.empty() ? (ok ? "true" : "false") : measured, "");
  }
  bool ok() const { return ok_; }

 private:
  void record(const std::string& name, bool ok, const std::string& measured, const std::string& expected) {
    std::string line = std::string(ok ? "ok   " : "FAIL ") + name + ": " + measured;
    if (!expected.empty()) line += " (expected " + expected + ")";
    r_.checks.push_back(std::move(line));
    ok_ = ok_ && ok;
  }
  CriterionResult& r_;
  bool ok_ = true;
};

BParams params_for(std::uint32_t q, unsigned r) {
  auto p = find_params(q, r);
  if (!p) throw ParameterError("none", "no valid parameters for q = " + std::to_string(q) + ", r = " + std::to_string(r));
  return *p;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Index of the hyperplane X_0 = 0: dual coordinates (1, 0, ..., 0) come last.
std::size_t sigma_infinity(const ProjectiveSpace& s) { return s.num_hyperplanes() - ipow(s.field().order(), s.dim()); }

// --- criteria ---------------------------------------------------------------

void c1_sizes(Checker& ck, const AcceptanceOptions& o) {
  o.budget.require(2'000'000, "criterion 1");
  for (auto [q, r, n] : {std::tuple{3u, 3u, 262ull}, {4u, 3u, 1041ull}, {4u, 4u, 16657ull}}) {
    const auto v = build_B(params_for(q, r), o.budget);
    const std::string tag = "|B(" + str(q) + "," + str(r) + ")|";
    ck.equal(tag, v.size(), n);
    ck.equal(tag + " closed form", predicted_spectrum(q, r, VarietyKind::B).n_points, n);
  }
  ck.equal("valid (alpha, beta) for q=3, r=4", count_valid_params(3, 4), 0ull);
  bool refused = false;
  try {
    build_B(BParams{3, 4, FieldElem{1}, FieldElem{3}}, o.budget);
  } catch (const ParameterError& e) {
    refused = e.clause() == "(2)";
  }
  ck.truth("B(3,4) refused under condition (2)", refused);
}

void c2_spectra(Checker& ck, const AcceptanceOptions& o) {
  o.budget.require(1'300'000'000, "criterion 2");
  for (auto [q, r] : {std::pair{3u, 3u}, {5u, 3u}, {4u, 3u}, {4u, 4u}}) {
    const auto v = build_B(params_for(q, r), o.budget);
    const auto s = hyperplane_spectrum(v, o.budget);
    const std::string tag = "B(" + str(q) + "," + str(r) + ")";
    ck.equal(tag + " support", s.support(), predicted_spectrum(q, r, VarietyKind::B).sizes);
    ck.equal(tag + " hyperplanes", s.total, static_cast<std::uint64_t>(v.space().num_hyperplanes()));
    if (q == 3 && r == 3) {
      const std::map<std::uint64_t, std::uint64_t> published{{19, 1}, {26, 513}, {28, 72}, {35, 216}, {37, 18}};
      ck.equal(tag + " counts", s.counts, published);
    }
  }
}

void c3_lines(Checker& ck, const AcceptanceOptions& o) {
  o.budget.require(200'000, "criterion 3");
  const auto v = build_B(params_for(3, 3), o.budget);
  const auto s = line_spectrum(v, o.budget);
  const auto allowed = predicted_line_sizes(3);
  const auto sup = s.support();
  ck.equal("lines checked", s.total, 7462ull);
  ck.truth("sizes within {0,1,2,q-1,q,q+1,q+2,2q-1,2q,q^2+1}",
           std::includes(allowed.begin(), allowed.end(), sup.begin(), sup.end()), str(s.counts));
}

void c4_weights(Checker& ck, const AcceptanceOptions& o) {
  o.budget.require(5'000'000, "criterion 4");
  const auto v = build_B(params_for(3, 3), o.budget);
  const auto c = code_from_variety(v);
  const auto wh = weights_via_hyperplanes(c, v, o.budget);
  const auto wb = weights_bruteforce(c, o.budget);
  const std::map<std::uint64_t, std::uint64_t> published{{0, 1}, {225, 144}, {227, 1728}, {234, 576}, {236, 4104}, {243, 8}};
  ck.equal("A_w via hyperplanes", wh.counts, published);
  ck.equal("brute force over all codewords", wb.counts, wh.counts);
  ck.equal("sum A_w", wb.total(), 6561ull);
}

void c5_divisibility(Checker& ck, const AcceptanceOptions& o) {
  o.budget.require(1'300'000'000, "criterion 5");
  for (auto [q, r] : {std::pair{4u, 3u}, {4u, 4u}, {3u, 3u}}) {
    const auto v = build_B(params_for(q, r), o.budget);
    const auto w = weights_via_hyperplanes(code_from_variety(v), v, o.budget);
    const auto g = divisibility(w);
    const std::string tag = "gcd of weights of C(B(" + str(q) + "," + str(r) + "))";
    if (q == 3) {
      ck.truth(tag + " not divisible by 3", g % 3 != 0, str(g) + ", weights " + str(w.nonzero_weights()));
    } else {
      ck.truth(tag + " divisible by 4", g % 4 == 0, str(g) + ", weights " + str(w.nonzero_weights()));
    }
  }
}

void c6_minimality(Checker& ck, const AcceptanceOptions& o) {
  o.budget.require(50'000'000, "criterion 6");
  ck.truth("cutting-blocking H(3,4)", cutting_blocking_check(build_hermitian(2, 3, o.budget), o.budget).minimal);
  ck.truth("cutting-blocking H(3,9)", cutting_blocking_check(build_hermitian(3, 3, o.budget), o.budget).minimal);
  ck.truth("cutting-blocking quasi-Hermitian from B(3,3)",
           cutting_blocking_check(build_quasi_hermitian(params_for(3, 3), o.budget), o.budget).minimal);
  ck.truth("cutting-blocking B(3,3)", cutting_blocking_check(build_B(params_for(3, 3), o.budget), o.budget).minimal);

  const auto b43 = build_B(params_for(4, 3), o.budget);
  const auto cb = cutting_blocking_check(b43, o.budget);
  ck.truth("cutting-blocking B(4,3) fails", !cb.minimal);
  ck.equal("B(4,3) witness is Sigma_inf", cb.witness_hyperplane.value_or(0), sigma_infinity(b43.space()));
  const auto bf = minimal_codewords_bruteforce(b43, o.budget);
  ck.equal("B(4,3) non-minimal words", bf.non_minimal_words, 15ull);
  ck.equal("B(4,3) non-minimal weights", bf.non_minimal_by_weight, std::map<std::uint64_t, std::uint64_t>{{1024, 15}});
}

void c7_democracy(Checker& ck, const AcceptanceOptions& o) {
  o.budget.require(2'000'000, "criterion 7");
  {
    const auto a = access_structure(build_B(params_for(3, 3), o.budget), std::nullopt, o.budget);
    const auto d = democracy_report(a);
    ck.equal("B(3,3) access sets", a.sets.size(), 729ull);
    ck.equal("B(3,3) participants x membership", d.histogram, std::map<std::uint64_t, std::uint64_t>{{648, 261}});
  }
  {
    const auto a = access_structure(build_hermitian(2, 3, o.budget), std::nullopt, o.budget);
    const auto d = democracy_report(a);
    ck.equal("H(3,4) access sets", a.sets.size(), 64ull);
    ck.equal("H(3,4) participants x membership", d.histogram, std::map<std::uint64_t, std::uint64_t>{{48, 44}});
    ck.equal("H(3,4) size profile", a.size_profile(), std::map<std::size_t, std::size_t>{{31, 32}, {35, 32}});
  }
}

void c8_sss(Checker& ck, const AcceptanceOptions& o) {
  o.budget.require(2'000'000, "criterion 8");
  const auto b = build_B(params_for(3, 3), o.budget);
  const auto h = build_hermitian(2, 3, o.budget);
  const Scheme sb = make_scheme(b), sh = make_scheme(h);
  const auto ab = access_structure(b, std::nullopt, o.budget), ah = access_structure(h, std::nullopt, o.budget);

  std::mt19937_64 rng(o.seed);
  int roundtrips = 0, proper_fail = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const bool use_b = trial % 2 == 0;
    const Scheme& s = use_b ? sb : sh;
    const AccessStructure& a = use_b ? ab : ah;
    const FieldElem secret{static_cast<std::uint32_t>(rng() % s.code.field->order())};
    const Dealing d = deal(s, secret, rng);
    AccessSet set = a.sets[rng() % a.sets.size()];
    Vec shares;
    for (auto i : set) shares.push_back(d.shares[i - 1]);
    const Recovery rec = recover(s, set, shares);
    roundtrips += rec.status == RecoverStatus::Recovered && rec.secret == secret;
    const std::size_t drop = rng() % set.size();
    set.erase(set.begin() + static_cast<std::ptrdiff_t>(drop));
    shares.erase(shares.begin() + static_cast<std::ptrdiff_t>(drop));
    proper_fail += recover(s, set, shares).status == RecoverStatus::NotQualified;
  }
  ck.equal("deal -> recover roundtrips", roundtrips, 100);
  ck.equal("proper subsets not qualified", proper_fail, 100);

  // Perfectness on H(3,4): every set with one participant removed, and the empty set.
  int uniform = 0, tested = 0, qualified = 0;
  for (std::size_t i = 0; i < ah.sets.size(); ++i) {
    const Dealing d = deal(sh, FieldElem{static_cast<std::uint32_t>(i % 4)}, rng);
    qualified += perfectness_check(sh, ah.sets[i], d, o.budget).qualified;
    AccessSet sub = ah.sets[i];
    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i % sub.size()));
    const auto rep = perfectness_check(sh, sub, d, o.budget);
    ++tested;
    uniform += rep.uniform && rep.checked == 256;
  }
  const Dealing d0 = deal(sh, FieldElem{1}, rng);
  ++tested;
  uniform += perfectness_check(sh, {}, d0, o.budget).uniform;
  ck.equal("minimal access sets determine the secret", qualified, 64);
  ck.equal("non-qualified subsets with uniform secret", uniform, tested);
}

void c9_example(Checker& ck, const AcceptanceOptions& o) {
  o.budget.require(1'000'000, "criterion 9");
  const auto fx = load_example(o.fixture_path.empty() ? std::string(QHCODES_DATA_DIR) + "/example_q2_hermitian.txt"
                                                      : o.fixture_path);
  const PermGroup g(fx.degree, fx.generators);
  ck.equal("group order", g.order(), 576ull);
  const auto a = develop(fx.starters, g, fx.degree);
  ck.equal("developed sets", a.sets.size(), 64ull);
  ck.equal("size profile", a.size_profile(), std::map<std::size_t, std::size_t>{{31, 32}, {35, 32}});
  ck.truth("antichain", is_antichain(a));
  for (std::size_t i = 0; i < fx.generators.size(); ++i) {
    ck.truth("gamma" + str(i + 1) + " preserves the structure", is_automorphism(fx.generators[i], a));
  }
}

void c10_consistency(Checker& ck, const AcceptanceOptions& o) {
  o.budget.require(200'000'000, "criterion 10");
  const auto p33 = params_for(3, 3);
  std::vector<std::pair<std::string, Variety>> fixtures;
  fixtures.emplace_back("B(3,3)", build_B(p33, o.budget));
  fixtures.emplace_back("B(4,3)", build_B(params_for(4, 3), o.budget));
  fixtures.emplace_back("H(3,4)", build_hermitian(2, 3, o.budget));
  fixtures.emplace_back("H(3,9)", build_hermitian(3, 3, o.budget));
  fixtures.emplace_back("QH(3,3)", build_quasi_hermitian(p33, o.budget));
  for (const auto& [name, v] : fixtures) {
    const auto c = code_from_variety(v);
    const auto wh = weights_via_hyperplanes(c, v, o.budget);
    const std::uint64_t words = ipow(v.field().order(), static_cast<unsigned>(c.k));
    if (words <= (std::uint64_t{1} << 24)) {
      ck.equal(name + " weights: hyperplanes = brute force", weights_bruteforce(c, o.budget).counts, wh.counts);
    }
    const bool ab = ab_bound_check(wh, v.field().order());
    const auto cb = cutting_blocking_check(v, o.budget);
    const auto bf = minimal_codewords_bruteforce(v, o.budget);
    ck.truth(name + " AB => brute-force minimal", !ab || bf.minimal,
             "ab=" + str(ab) + " brute-force=" + str(bf.minimal));
    ck.equal(name + " cutting-blocking <=> brute force", cb.minimal, bf.minimal);
  }

  // Surgery: |S cap B| = |S cap H| - |S cap F| + |S cap B_inf| for every hyperplane S.
  const auto sb = hyperplane_section_sizes(build_B(p33, o.budget), o.budget);
  const auto sh = hyperplane_section_sizes(build_quasi_hermitian(p33, o.budget), o.budget);
  const auto sf = hyperplane_section_sizes(build_cone_F(3, 3, o.budget), o.budget);
  const auto si = hyperplane_section_sizes(build_B_infinity(p33, o.budget), o.budget);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < sb.size(); ++i) bad += std::int64_t{sb[i]} != std::int64_t{sh[i]} - sf[i] + si[i];
  ck.equal("surgery identity violations at (3,3)", bad, 0ull);
}

const std::vector<std::pair<std::string, std::function<void(Checker&, const AcceptanceOptions&)>>>& table() {
  static const std::vector<std::pair<std::string, std::function<void(Checker&, const AcceptanceOptions&)>>> t{
      {"size formulas", c1_sizes},
      {"hyperplane spectra", c2_spectra},
      {"line spectrum (3,3)", c3_lines},
      {"weight enumerator C(B(3,3))", c4_weights},
      {"q-divisibility", c5_divisibility},
      {"minimality criteria", c6_minimality},
      {"SSS democracy", c7_democracy},
      {"SSS correctness and perfectness", c8_sss},
      {"worked example (label-free)", c9_example},
      {"cross-criterion consistency", c10_consistency},
  };
  return t;
}

std::optional<CriterionResult> preflight(const AcceptanceOptions& o) {
  CriterionResult r;
  r.id = 0;
  r.title = "field preflight";
  Checker ck(r);
  for (auto [p, m] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 4u}, {5u, 2u}}) {
    std::vector<std::uint32_t> mod = conway_polynomial(p, m);
    for (const auto& ov : o.modulus_overrides) {
      if (ov.p == p && ov.modulus.size() == m + 1) mod = ov.modulus;
    }
    ck.truth("modulus of GF(" + str(p) + "^" + str(m) + ") " + str(mod) + " irreducible", is_irreducible(p, mod));
  }
  if (ck.ok()) return std::nullopt;
  r.verdict = Verdict::Fail;
  r.detail = "modulus table is corrupt; no criterion was run";
  return r;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skipped: return "SKIPPED";
  }
  return "?";
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  if (id < 1 || id > kCriteria) throw UsageError("no acceptance criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.title = table()[static_cast<std::size_t>(id - 1)].first;
  const auto t0 = std::chrono::steady_clock::now();
  Checker ck(r);
  try {
    table()[static_cast<std::size_t>(id - 1)].second(ck, opts);
    r.verdict = ck.ok() ? Verdict::Pass : Verdict::Fail;
  } catch (const BudgetExceeded& e) {
    r.verdict = Verdict::Skipped;
    r.detail = e.what();
  } catch (const std::exception& e) {
    r.verdict = Verdict::Fail;
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

AcceptanceRun run_acceptance(const AcceptanceOptions& opts, const std::vector<int>& only) {
  AcceptanceRun run;
  run.preflight_failure = preflight(opts);
  if (run.preflight_failure) return run;
  for (int id = 1; id <= kCriteria; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    run.results.push_back(run_criterion(id, opts));
  }
  return run;
}

std::string format_line(const CriterionResult& r, bool with_timing) {
  std::string s = "[" + std::string(verdict_name(r.verdict)) + "] " + std::to_string(r.id) + " " + r.title;
  if (with_timing) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
    s += buf;
  }
  return s;
}

}  // namespace qh
