#include "qhcodes/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qhcodes/acceptance.hpp"
#include "qhcodes/code.hpp"
#include "qhcodes/error.hpp"
#include "qhcodes/parallel.hpp"
#include "qhcodes/sss.hpp"
#include "qhcodes/variety.hpp"

#ifndef QHCODES_DATA_DIR
#define QHCODES_DATA_DIR "data"
#endif

namespace qh::cli {

namespace {

using json = nlohmann::json;

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// A finished command: JSON document plus the CSV rendering of its main table.
struct Report {
  json payload = json::object();
  json checks = json::array();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  FieldPtr field;
  bool informational = false;  // no checks apply

  template <class A, class B>
  void check(const std::string& name, const A& measured, const B& expected) {
    checks.push_back({{"name", name}, {"measured", measured}, {"expected", expected}, {"pass", json(measured) == json(expected)}});
  }
  void check_true(const std::string& name, bool ok) {
    checks.push_back({{"name", name}, {"measured", ok}, {"expected", true}, {"pass", ok}});
  }
  bool passed() const {
    for (const auto& c : checks) {
      if (!c["pass"].get<bool>()) return false;
    }
    return true;
  }
};

json field_json(const Field& f) {
  return {{"p", f.characteristic()}, {"m", f.degree()}, {"order", f.order()}, {"modulus", f.modulus()},
          {"describe", f.describe()}};
}

json coords_json(std::span<const FieldElem> c) {
  json a = json::array();
  for (auto x : c) a.push_back(x.value);
  return a;
}

template <class K, class V>
json pairs_json(const std::map<K, V>& m, const char* key, const char* value) {
  json a = json::array();
  for (const auto& [k, v] : m) a.push_back({{key, k}, {value, v}});
  return a;
}

std::string join(const std::vector<std::uint32_t>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<std::uint32_t> parse_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    const auto a = tok.find_first_not_of(" \t"), b = tok.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    tok = tok.substr(a, b - a + 1);
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: " + text);
    }
    if (used != tok.size()) throw UsageError("not an integer list: " + text);
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

// --- variety resolution ---------------------------------------------------------

BParams resolve_params(RunConfig& cfg) {
  if (cfg.alpha.has_value() != cfg.beta.has_value()) throw UsageError("--alpha and --beta must be given together");
  if (cfg.alpha && !cfg.auto_params) return BParams{cfg.q, cfg.r, FieldElem{*cfg.alpha}, FieldElem{*cfg.beta}};
  auto p = find_params(cfg.q, cfg.r);
  if (!p) {
    throw ParameterError(cfg.q % 2 == 1 ? "(2)" : "(ii)",
                         "no (alpha, beta) satisfies the conditions for q = " + std::to_string(cfg.q) +
                             ", r = " + std::to_string(cfg.r) + " (exhaustive scan)");
  }
  cfg.alpha = p->alpha.value;
  cfg.beta = p->beta.value;
  return *p;
}

Variety build_variety(RunConfig& cfg, const Budget& budget) {
  const std::string& kind = cfg.variety;
  if (kind == "hermitian") return build_hermitian(cfg.q, cfg.r, budget);
  if (kind == "cone-F") return build_cone_F(cfg.q, cfg.r, budget);
  const BParams p = resolve_params(cfg);
  if (kind == "B") return build_B(p, budget);
  if (kind == "B-inf") return build_B_infinity(p, budget);
  if (kind == "quasi-hermitian") return build_quasi_hermitian(p, budget);
  throw UsageError("unknown variety: " + kind);
}

// Closed-form spectrum when one applies to this variety.
std::optional<PredictedSpectrum> prediction(const Variety& v, const RunConfig& cfg) {
  try {
    if (v.kind() == VarietyKind::B) return predicted_spectrum(cfg.q, cfg.r, VarietyKind::B);
    if (v.kind() == VarietyKind::Hermitian || v.kind() == VarietyKind::QuasiHermitian) {
      return predicted_spectrum(cfg.q, cfg.r, v.kind());
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

json params_json(const Variety& v) {
  if (!v.params()) return nullptr;
  const auto rep = validate_params(*v.params());
  json j = {{"alpha", v.params()->alpha.value}, {"beta", v.params()->beta.value}, {"clause", rep.clause},
            {"invariant", rep.invariant.value}, {"valid", rep.valid}};
  if (!rep.trace.empty()) {
    j["trace"] = rep.trace;
    j["trace_value"] = rep.trace_value.value;
  }
  return j;
}

// --- commands -------------------------------------------------------------------

Report cmd_variety(RunConfig& cfg, const Budget& budget) {
  const Variety v = build_variety(cfg, budget);
  Report rep;
  rep.field = v.space().field_ptr();
  rep.payload["variety"] = v.label();
  rep.payload["params"] = params_json(v);
  rep.payload["N"] = v.size();
  const auto pred = prediction(v, cfg);

  if (cfg.action == "build") {
    json pts = json::array();
    rep.csv_header = {"index"};
    for (unsigned i = 0; i <= v.dim(); ++i) rep.csv_header.push_back("X" + std::to_string(i));
    for (auto p : v.points()) {
      const auto c = v.space().coords(p);
      pts.push_back({{"index", p}, {"coords", coords_json(c)}});
      std::vector<std::string> row{std::to_string(p)};
      for (auto x : c) row.push_back(std::to_string(x.value));
      rep.csv_rows.push_back(std::move(row));
    }
    rep.payload["points"] = std::move(pts);
    if (pred) rep.check("N", v.size(), pred->n_points);
    if (v.kind() == VarietyKind::B) {
      const auto affine = static_cast<std::uint64_t>(std::count_if(
          v.points().begin(), v.points().end(), [&](auto p) { return v.space().coords(p)[0].value != 0; }));
      rep.check("affine points", affine, ipow(cfg.q, 2 * cfg.r - 1));
    }
  } else if (cfg.action == "spectrum") {
    const auto s = hyperplane_spectrum(v, budget);
    rep.payload["spectrum"] = pairs_json(s.counts, "size", "count");
    rep.payload["total"] = s.total;
    rep.csv_header = {"size", "count"};
    for (const auto& [k, c] : s.counts) rep.csv_rows.push_back({std::to_string(k), std::to_string(c)});
    rep.check("hyperplanes counted", s.total, static_cast<std::uint64_t>(v.space().num_hyperplanes()));
    if (pred) {
      rep.payload["predicted"] = {{"N", pred->n_points}, {"sizes", pred->sizes}};
      rep.check("N", v.size(), pred->n_points);
      rep.check("support", s.support(), pred->sizes);
    }
  } else if (cfg.action == "lines") {
    const auto s = line_spectrum(v, budget);
    rep.payload["spectrum"] = pairs_json(s.counts, "size", "count");
    rep.payload["total"] = s.total;
    rep.csv_header = {"size", "count"};
    for (const auto& [k, c] : s.counts) rep.csv_rows.push_back({std::to_string(k), std::to_string(c)});
    rep.check("lines counted", s.total,
              gaussian_binomial(v.field().order(), v.dim() + 1, 2));
    if (v.kind() == VarietyKind::B) {
      const auto allowed = predicted_line_sizes(cfg.q);
      const auto sup = s.support();
      rep.payload["allowed_sizes"] = allowed;
      rep.check_true("sizes within the allowed list",
                     std::includes(allowed.begin(), allowed.end(), sup.begin(), sup.end()));
    }
  } else {
    throw UsageError("unknown variety action: " + cfg.action);
  }
  rep.informational = rep.checks.empty();
  return rep;
}

json weights_json(const WeightDistribution& w) { return pairs_json(w.counts, "weight", "count"); }

Report cmd_code(RunConfig& cfg, const Budget& budget) {
  const Variety v = build_variety(cfg, budget);
  Report rep;
  rep.field = v.space().field_ptr();
  rep.payload["variety"] = v.label();
  rep.payload["params"] = params_json(v);
  const LinearCode c = code_from_variety(v, cfg.p0);
  const std::uint32_t qf = v.field().order();
  rep.payload["n"] = c.n;
  rep.payload["k"] = c.k;
  rep.payload["p0"] = c.columns.front();
  const auto w = weights_via_hyperplanes(c, v, budget);
  const bool brute_ok = ipow(qf, static_cast<unsigned>(c.k)) <= (std::uint64_t{1} << 24);

  if (cfg.action == "weights") {
    rep.payload["weights"] = weights_json(w);
    rep.csv_header = {"weight", "count"};
    for (const auto& [k, a] : w.counts) rep.csv_rows.push_back({std::to_string(k), std::to_string(a)});
    json gen = json::array();
    for (std::size_t i = 0; i < c.k; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < c.n; ++j) row.push_back(c.at(i, j).value);
      gen.push_back(std::move(row));
    }
    rep.payload["generator"] = {{"columns", c.columns}, {"rows", std::move(gen)}};
    rep.check("sum of A_w", w.total(), ipow(qf, static_cast<unsigned>(c.k)));
    if (brute_ok) rep.check("brute-force distribution", weights_json(weights_bruteforce(c, budget)), weights_json(w));
    const std::uint64_t q = cfg.q;
    if (v.kind() == VarietyKind::B && q % 2 == 1 && cfg.r == 3) {
      // Weight enumerator as stated for r = 3, q odd.
      const std::uint64_t q2 = q * q, q3 = q2 * q, q5 = q3 * q2, q6 = q5 * q, m = q2 - 1;
      const std::map<std::uint64_t, std::uint64_t> stated{{0, 1},
                                                          {q5, m},
                                                          {q5 - q3 + 2 * q2 + q - 1, (q6 - q5 + q3) * m},
                                                          {q5 - q3 + 2 * q2, (q2 * q2 - q2) * m},
                                                          {q5 - q3 + q2 + q - 1, (q5 - q3) * m},
                                                          {q5 - q3 + q2, 2 * q2 * m}};
      rep.check("stated weight enumerator (r = 3, q odd)", weights_json(w), pairs_json(stated, "weight", "count"));
    }
  } else if (cfg.action == "minimality") {
    const bool ab = ab_bound_check(w, qf);
    const auto cb = cutting_blocking_check(v, budget);
    json j;
    j["ab_bound"] = {{"pass", ab}, {"w_min", w.min_nonzero()}, {"w_max", w.max_nonzero()}, {"q_f", qf}};
    json jcb = {{"minimal", cb.minimal}};
    if (cb.witness_hyperplane) {
      jcb["witness_hyperplane"] = *cb.witness_hyperplane;
      jcb["witness_coords"] = coords_json(v.space().coords(*cb.witness_hyperplane));
      jcb["witness_rank"] = *cb.witness_rank;
    }
    j["cutting_blocking"] = jcb;
    rep.csv_header = {"method", "minimal", "non_minimal_words", "witness"};
    rep.csv_rows.push_back({"ab-bound", ab ? "pass" : "inconclusive", "", ""});
    rep.csv_rows.push_back({"cutting-blocking", cb.minimal ? "true" : "false", "",
                            cb.witness_hyperplane ? std::to_string(*cb.witness_hyperplane) : ""});
    std::optional<MinimalityReport> bf;
    try {
      bf = minimal_codewords_bruteforce(v, budget);
    } catch (const BudgetExceeded& e) {
      j["brute_force"] = {{"skipped", e.what()}};
    }
    if (bf) {
      json jbf = {{"minimal", bf->minimal},
                  {"non_minimal_words", bf->non_minimal_words},
                  {"non_minimal_by_weight", pairs_json(bf->non_minimal_by_weight, "weight", "count")}};
      if (bf->witness_pair) jbf["witness_pair"] = {bf->witness_pair->first, bf->witness_pair->second};
      j["brute_force"] = jbf;
      rep.csv_rows.push_back({"brute-force", bf->minimal ? "true" : "false", std::to_string(bf->non_minimal_words),
                              bf->witness_pair ? std::to_string(bf->witness_pair->first) + ">" +
                                                     std::to_string(bf->witness_pair->second)
                                               : ""});
      rep.check("cutting-blocking agrees with brute force", cb.minimal, bf->minimal);
      rep.check_true("AB bound implies brute-force minimality", !ab || bf->minimal);
    }
    j["minimal"] = cb.minimal;
    rep.payload["minimality"] = j;
    if (v.kind() == VarietyKind::B && cfg.q % 2 == 0) {
      const std::uint64_t q2 = std::uint64_t{cfg.q} * cfg.q;
      rep.check("cutting-blocking witness", cb.witness_hyperplane.value_or(0),
                v.space().num_hyperplanes() - ipow(qf, cfg.r));
      if (bf) {
        rep.check("non-minimal words by weight", pairs_json(bf->non_minimal_by_weight, "weight", "count"),
                  pairs_json(std::map<std::uint64_t, std::uint64_t>{{ipow(cfg.q, 2 * cfg.r - 1), q2 - 1}}, "weight",
                             "count"));
      }
    } else if (v.kind() == VarietyKind::B || v.kind() == VarietyKind::Hermitian ||
               v.kind() == VarietyKind::QuasiHermitian) {
      rep.check_true("minimal", cb.minimal);
    }
  } else if (cfg.action == "divisibility") {
    const auto g = divisibility(w);
    rep.payload["weights"] = w.nonzero_weights();
    rep.payload["divisor"] = g;
    rep.csv_header = {"divisor", "divisible_by_q"};
    rep.csv_rows.push_back({std::to_string(g), g % cfg.q == 0 ? "true" : "false"});
    if (v.kind() == VarietyKind::B) {
      const bool expect = !(cfg.q % 2 == 1 && cfg.r == 3);
      rep.check("divisible by q", g % cfg.q == 0, expect);
    }
  } else if (cfg.action == "dk") {
    const auto d = higher_weight(v, cfg.k, budget);
    rep.payload["level"] = cfg.k;
    rep.payload["d_k"] = d;
    std::string predicted;
    if (v.kind() == VarietyKind::B && (cfg.k == 1 || cfg.k == cfg.r - 1)) {
      const auto p = predicted_higher_weight_B(cfg.q, cfg.r, cfg.k);
      rep.payload["predicted"] = p;
      predicted = std::to_string(p);
      rep.check("d_k", d, p);
    }
    rep.csv_header = {"level", "d_k", "predicted"};
    rep.csv_rows.push_back({std::to_string(cfg.k), std::to_string(d), predicted});
  } else {
    throw UsageError("unknown code action: " + cfg.action);
  }
  rep.informational = rep.checks.empty();
  return rep;
}

void structure_csv(Report& rep, const AccessStructure& a) {
  rep.csv_header = {"set", "size", "members"};
  for (std::size_t i = 0; i < a.sets.size(); ++i) {
    rep.csv_rows.push_back({std::to_string(i), std::to_string(a.sets[i].size()), join(a.sets[i], ' ')});
  }
}

json structure_json(const AccessStructure& a) {
  return {{"provenance", a.provenance},
          {"participants", a.participants},
          {"sets", a.sets},
          {"stats", {{"count", a.sets.size()}, {"size_profile", pairs_json(a.size_profile(), "size", "count")}}}};
}

ExampleFixture fixture(const RunConfig& cfg) {
  return load_example(cfg.fixture.empty() ? std::string(QHCODES_DATA_DIR) + "/example_q2_hermitian.txt" : cfg.fixture);
}

Report cmd_sss(RunConfig& cfg, const Budget& budget) {
  Report rep;
  if (cfg.action == "develop" || cfg.action == "verify-example") {
    const auto fx = fixture(cfg);
    const PermGroup g(fx.degree, fx.generators);
    const auto a = develop(fx.starters, g, fx.degree);
    rep.payload["degree"] = fx.degree;
    rep.payload["fixed_point"] = fx.fixed_point;
    rep.payload["generators"] = fx.generator_text;
    rep.payload["group_order"] = g.order();
    rep.payload["structure"] = structure_json(a);
    const bool anti = is_antichain(a);
    rep.payload["antichain"] = anti;
    structure_csv(rep, a);
    if (cfg.action == "verify-example") {
      rep.check("group order", g.order(), 576u);
      rep.check("developed sets", a.sets.size(), 64u);
      rep.check("size profile", pairs_json(a.size_profile(), "size", "count"),
                pairs_json(std::map<std::size_t, std::size_t>{{31, 32}, {35, 32}}, "size", "count"));
      rep.check_true("antichain", anti);
      for (std::size_t i = 0; i < fx.generators.size(); ++i) {
        rep.check_true("gamma" + std::to_string(i + 1) + " is an automorphism", is_automorphism(fx.generators[i], a));
      }
    }
    rep.informational = rep.checks.empty();
    return rep;
  }

  const Variety v = build_variety(cfg, budget);
  rep.field = v.space().field_ptr();
  rep.payload["variety"] = v.label();
  rep.payload["params"] = params_json(v);
  const std::uint32_t qf = v.field().order();

  if (cfg.action == "access" || cfg.action == "democracy") {
    const auto a = access_structure(v, cfg.p0, budget);
    if (cfg.action == "access") {
      rep.payload["structure"] = structure_json(a);
      rep.payload["antichain"] = is_antichain(a);
      structure_csv(rep, a);
      rep.check("minimal access sets", a.sets.size(), ipow(qf, v.dim()));
      rep.check_true("antichain", rep.payload["antichain"].get<bool>());
    } else {
      const auto d = democracy_report(a);
      rep.payload["sets"] = a.sets.size();
      rep.payload["participants"] = a.participants;
      rep.payload["histogram"] = pairs_json(d.histogram, "memberships", "participants");
      rep.payload["dictatorial"] = d.dictatorial;
      rep.payload["democratic"] = d.democratic;
      rep.csv_header = {"participant", "memberships"};
      for (std::size_t i = 0; i < d.per_participant.size(); ++i) {
        rep.csv_rows.push_back({std::to_string(i + 1), std::to_string(d.per_participant[i])});
      }
      rep.check("minimal access sets", a.sets.size(), ipow(qf, v.dim()));
      rep.check("memberships per participant",
                pairs_json(d.histogram, "memberships", "participants"),
                pairs_json(std::map<std::uint64_t, std::uint64_t>{{(qf - 1) * ipow(qf, v.dim() - 1), a.participants}},
                           "memberships", "participants"));
    }
    rep.informational = false;
    return rep;
  }

  const Scheme s = make_scheme(v, cfg.p0);
  if (cfg.secret >= qf) throw UsageError("--secret must be a field encoding below " + std::to_string(qf));
  const Dealing d = deal(s, FieldElem{cfg.secret}, cfg.seed);
  rep.payload["p0"] = s.code.columns.front();
  rep.payload["participants"] = s.participants();
  rep.payload["secret"] = cfg.secret;
  if (cfg.action == "deal") {
    json shares = json::array();
    rep.csv_header = {"participant", "share"};
    for (std::size_t i = 0; i < d.shares.size(); ++i) {
      shares.push_back(d.shares[i].value);
      rep.csv_rows.push_back({std::to_string(i + 1), std::to_string(d.shares[i].value)});
    }
    rep.payload["shares"] = std::move(shares);
    rep.informational = true;
  } else if (cfg.action == "recover") {
    if (cfg.set.empty()) throw UsageError("recover needs --set with participant indices");
    AccessSet set = parse_list(cfg.set);
    std::sort(set.begin(), set.end());
    Vec shares;
    for (auto i : set) {
      if (i < 1 || i > s.participants()) throw UsageError("participant " + std::to_string(i) + " out of range");
      shares.push_back(d.shares[i - 1]);
    }
    const auto r = recover(s, set, shares);
    rep.payload["set"] = set;
    rep.payload["status"] = status_name(r.status);
    if (r.status == RecoverStatus::Recovered) rep.payload["recovered"] = r.secret.value;
    rep.csv_header = {"status", "recovered", "secret"};
    rep.csv_rows.push_back({std::string(status_name(r.status)),
                            r.status == RecoverStatus::Recovered ? std::to_string(r.secret.value) : "",
                            std::to_string(cfg.secret)});
    rep.check_true("shares consistent", r.status != RecoverStatus::Inconsistent);
    if (r.status == RecoverStatus::Recovered) rep.check("recovered secret", r.secret.value, cfg.secret);
  } else {
    throw UsageError("unknown sss action: " + cfg.action);
  }
  return rep;
}

std::vector<ModulusOverride> parse_overrides(const std::vector<std::string>& specs) {
  std::vector<ModulusOverride> out;
  for (const auto& s : specs) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("--modulus expects p:c0,c1,...,cm");
    ModulusOverride o;
    o.p = static_cast<std::uint32_t>(std::stoul(s.substr(0, colon)));
    o.modulus = parse_list(s.substr(colon + 1));
    if (o.modulus.size() < 2 || o.modulus.back() != 1) throw UsageError("--modulus must be monic of degree >= 1");
    out.push_back(std::move(o));
  }
  return out;
}

int cmd_verify_all(const RunConfig& cfg, const Budget& budget, std::ostream& out, std::ostream& err) {
  AcceptanceOptions opts;
  opts.budget = budget;
  opts.fixture_path = cfg.fixture;
  opts.seed = cfg.seed;
  opts.modulus_overrides = parse_overrides(cfg.modulus);
  const auto run = run_acceptance(opts);

  json doc = {{"schema", 1}, {"command", "verify-all"}, {"point_order", kPointOrderVersion}, {"seed", cfg.seed}};
  json results = json::array(), timings = json::object();
  int status = kExitPass;
  if (run.preflight_failure) {
    out << format_line(*run.preflight_failure, false) << '\n';
    for (const auto& c : run.preflight_failure->checks) out << "    " << c << '\n';
    out << "    " << run.preflight_failure->detail << '\n';
    results.push_back({{"id", 0}, {"title", run.preflight_failure->title}, {"verdict", "FAIL"},
                       {"checks", run.preflight_failure->checks}});
    status = kExitFail;
  }
  bool any_fail = false, all_skipped = !run.results.empty();
  for (const auto& r : run.results) {
    out << format_line(r) << '\n';
    for (const auto& c : r.checks) out << "    " << c << '\n';
    if (!r.detail.empty()) out << "    " << r.detail << '\n';
    any_fail = any_fail || r.verdict == Verdict::Fail;
    all_skipped = all_skipped && r.verdict == Verdict::Skipped;
    results.push_back({{"id", r.id}, {"title", r.title}, {"verdict", verdict_name(r.verdict)}, {"checks", r.checks},
                       {"detail", r.detail}});
    timings[std::to_string(r.id)] = r.seconds;
  }
  if (!run.preflight_failure) status = any_fail ? kExitFail : (all_skipped ? kExitBudget : kExitPass);
  doc["payload"] = {{"results", results}};
  doc["timings"] = timings;
  doc["exit_status"] = status;
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output);
    if (!f) {
      err << "cannot write " << cfg.output << '\n';
      return kExitUsage;
    }
    f << doc.dump(2) << '\n';
  }
  return status;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

void emit(const Report& rep, const RunConfig& cfg, std::ostream& out) {
  const std::string verdict = rep.informational ? "INFO" : (rep.passed() ? "PASS" : "FAIL");
  const std::string command = cfg.command + " " + cfg.action;
  json config = {{"q", cfg.q},         {"r", cfg.r},           {"variety", cfg.variety}, {"seed", cfg.seed},
                 {"format", cfg.format}, {"budget", cfg.budget}, {"k", cfg.k},             {"secret", cfg.secret}};
  config["alpha"] = cfg.alpha ? json(*cfg.alpha) : json(nullptr);
  config["beta"] = cfg.beta ? json(*cfg.beta) : json(nullptr);
  config["p0"] = cfg.p0 ? json(*cfg.p0) : json(nullptr);
  if (!cfg.set.empty()) config["set"] = cfg.set;
  if (!cfg.fixture.empty()) config["fixture"] = cfg.fixture;

  if (cfg.format == "csv") {
    out << "# schema=1 command=" << command;
    if (rep.field) {
      out << " p=" << rep.field->characteristic() << " m=" << rep.field->degree() << " modulus=";
      out << join(rep.field->modulus(), ':');
    }
    out << " point_order=" << kPointOrderVersion << " seed=" << cfg.seed << " rng=" << kRngName
        << " verdict=" << verdict << '\n';
    for (std::size_t i = 0; i < rep.csv_header.size(); ++i) out << (i ? "," : "") << rep.csv_header[i];
    out << '\n';
    for (const auto& row : rep.csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
      out << '\n';
    }
    return;
  }
  json doc = {{"schema", 1},          {"command", command}, {"config", config}, {"point_order", kPointOrderVersion},
              {"seed", cfg.seed},     {"rng", kRngName},    {"payload", rep.payload},
              {"checks", rep.checks}, {"verdict", verdict}};
  doc["field"] = rep.field ? field_json(*rep.field) : json(nullptr);
  out << doc.dump(2) << '\n';
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--q", cfg.q, "q; the field is GF(q^2)")->check(CLI::Range(2u, 1024u));
  app->add_option("--r", cfg.r, "projective dimension")->check(CLI::Range(1u, 16u));
  app->add_option("--variety", cfg.variety, "B | B-inf | hermitian | quasi-hermitian | cone-F")
      ->check(CLI::IsMember({"B", "B-inf", "hermitian", "quasi-hermitian", "cone-F"}));
  app->add_option("--alpha", cfg.alpha, "alpha as a GF(q^2) encoding");
  app->add_option("--beta", cfg.beta, "beta as a GF(q^2) encoding");
  app->add_flag("--auto-params", cfg.auto_params, "first valid (alpha, beta) in encoding order (default when omitted)");
  app->add_option("--p0", cfg.p0, "global index of the point P0 (default: first point of the variety)");
  app->add_option("--seed", cfg.seed, "seed for dealing");
  app->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--parallel", cfg.parallel, "worker threads (0: all cores)");
  app->add_option("--budget", cfg.budget, "work-unit cap for enumerations");
  app->add_option("--output", cfg.output, "write the report here instead of stdout");
  app->add_option("--k", cfg.k, "higher-weight level for `code dk`");
  app->add_option("--secret", cfg.secret, "secret as a field encoding");
  app->add_option("--set", cfg.set, "participant indices, comma separated");
  app->add_option("--fixture", cfg.fixture, "worked-example fixture file");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Quasi-Hermitian varieties, few-weight codes and Massey secret sharing"};
  app.require_subcommand(1);

  auto* variety = app.add_subcommand("variety", "build a variety and measure its spectra");
  variety->add_option("action", cfg.action, "build | spectrum | lines")
      ->required()
      ->check(CLI::IsMember({"build", "spectrum", "lines"}));
  add_common(variety, cfg);

  auto* code = app.add_subcommand("code", "projective code of a variety");
  code->add_option("action", cfg.action, "weights | minimality | divisibility | dk")
      ->required()
      ->check(CLI::IsMember({"weights", "minimality", "divisibility", "dk"}));
  add_common(code, cfg);

  auto* sss = app.add_subcommand("sss", "secret sharing on the dual code");
  sss->add_option("action", cfg.action, "access | deal | recover | democracy | develop | verify-example")
      ->required()
      ->check(CLI::IsMember({"access", "deal", "recover", "democracy", "develop", "verify-example"}));
  add_common(sss, cfg);

  auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
  add_common(verify, cfg);
  verify->add_option("--modulus", cfg.modulus, "negative control: override a modulus, p:c0,c1,...,cm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  for (auto* sub : {variety, code, sss, verify}) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }
  if (cfg.command == "verify-all") cfg.action.clear();
  set_parallelism(cfg.parallel);
  const Budget budget{cfg.budget};

  try {
    if (cfg.command == "verify-all") return cmd_verify_all(cfg, budget, out, err);
    Report rep;
    if (cfg.command == "variety") rep = cmd_variety(cfg, budget);
    if (cfg.command == "code") rep = cmd_code(cfg, budget);
    if (cfg.command == "sss") rep = cmd_sss(cfg, budget);
    if (cfg.output.empty()) {
      emit(rep, cfg, out);
    } else {
      std::ofstream f(cfg.output);
      if (!f) throw UsageError("cannot write " + cfg.output);
      emit(rep, cfg, f);
    }
    return rep.informational || rep.passed() ? kExitPass : kExitFail;
  } catch (const ParameterError& e) {
    err << "parameter error [" << e.clause() << "]: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CharacteristicError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const PreconditionError& e) {
    err << "refused: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
}

}  // namespace qh::cli
