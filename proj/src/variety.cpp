#include "qhcodes/variety.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "qhcodes/error.hpp"
#include "qhcodes/parallel.hpp"

namespace qh {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

void check_shape(std::uint32_t q, unsigned r) {
  if (r < 3) throw ParameterError("r>=3", "r = " + std::to_string(r) + " is out of scope (r >= 3 required)");
  prime_power(q);
  if (q == 2) throw ParameterError("q>2", "even q>2 required (got q = 2)");
}

// Per-element power tables over GF(q^2).
struct PowerTables {
  std::vector<FieldElem> xq, x2, x2q, xq1;
  explicit PowerTables(const Field& f) {
    const std::uint32_t q = f.subfield_order();
    for (std::uint32_t v = 0; v < f.order(); ++v) {
      const FieldElem x{v};
      xq.push_back(f.pow(x, q));
      x2.push_back(f.mul(x, x));
      x2q.push_back(f.pow(x, 2ull * q));
      xq1.push_back(f.pow(x, q + 1ull));
    }
  }
};

std::vector<std::uint32_t> points_at_infinity_where(const ProjectiveSpace& space,
                                                    const std::function<bool(std::span<const FieldElem>)>& pred) {
  // Points with X_0 = 0 are exactly the first (q^r - 1)/(q - 1) indices.
  const std::size_t n_inf = projective_count(space.field().order(), space.dim() - 1);
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < n_inf; ++i) {
    if (pred(space.coords(i))) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

std::vector<std::uint32_t> B_affine_points(const BParams& params, const ProjectiveSpace& space, const Budget& budget) {
  const Field& f = space.field();
  const unsigned r = params.r;
  const std::uint32_t qf = f.order();
  budget.require(ipow(qf, r) * r, "evaluate the affine equation of B");
  const PowerTables t(f);
  const FieldElem a = params.alpha, aq = t.xq[a.value];
  const FieldElem bb = f.sub(t.xq[params.beta.value], params.beta);  // beta^q - beta

  std::vector<std::uint32_t> out;
  Vec v(r + 1, FieldElem{});
  v[0] = f.one();
  std::vector<std::uint32_t> x(r, 0);
  for (;;) {
    FieldElem s2 = f.zero(), s2q = f.zero(), sq1 = f.zero();
    for (unsigned i = 0; i + 1 < r; ++i) {
      s2 = f.add(s2, t.x2[x[i]]);
      s2q = f.add(s2q, t.x2q[x[i]]);
      sq1 = f.add(sq1, t.xq1[x[i]]);
    }
    const std::uint32_t xr = x[r - 1];
    FieldElem lhs = f.sub(t.xq[xr], FieldElem{xr});
    lhs = f.add(lhs, f.mul(aq, s2q));
    lhs = f.sub(lhs, f.mul(a, s2));
    const FieldElem rhs = f.mul(bb, sq1);
    if (lhs == rhs) {
      for (unsigned i = 0; i < r; ++i) v[i + 1] = FieldElem{x[i]};
      out.push_back(static_cast<std::uint32_t>(space.index_of_normalized(v)));
    }
    unsigned k = r;
    while (k > 0 && ++x[k - 1] == qf) x[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

std::vector<std::uint32_t> B_infinity_points(const BParams& params, const ProjectiveSpace& space) {
  const Field& f = space.field();
  const bool odd = params.q % 2 == 1;
  const unsigned r = params.r;
  return points_at_infinity_where(space, [&](std::span<const FieldElem> c) {
    FieldElem s = f.zero();
    for (unsigned i = 1; i <= r - 1; ++i) s = f.add(s, odd ? f.mul(c[i], c[i]) : c[i]);
    return s == f.zero();
  });
}

std::vector<std::uint32_t> cone_F_points(std::uint32_t q, const ProjectiveSpace& space) {
  const Field& f = space.field();
  const unsigned r = space.dim();
  return points_at_infinity_where(space, [&](std::span<const FieldElem> c) {
    FieldElem s = f.zero();
    for (unsigned i = 1; i <= r - 1; ++i) s = f.add(s, f.pow(c[i], q + 1ull));
    return s == f.zero();
  });
}

std::shared_ptr<const ProjectiveSpace> space_for(std::uint32_t q, unsigned r, const Budget& budget) {
  return make_space(Field::make_quadratic(q), r, budget);
}

void require_valid(const BParams& params) {
  const ValidationReport rep = validate_params(params);
  if (!rep.valid) throw ParameterError(rep.clause, rep.message);
}

}  // namespace

std::string_view kind_name(VarietyKind kind) {
  switch (kind) {
    case VarietyKind::B: return "B";
    case VarietyKind::BInfinity: return "B_inf";
    case VarietyKind::Hermitian: return "hermitian";
    case VarietyKind::QuasiHermitian: return "quasi-hermitian";
    case VarietyKind::ConeF: return "cone-F";
    case VarietyKind::Other: return "other";
  }
  return "?";
}

std::shared_ptr<const ProjectiveSpace> make_space(FieldPtr field, unsigned r, const Budget& budget) {
  static std::mutex mu;
  static std::map<std::pair<const Field*, unsigned>, std::shared_ptr<const ProjectiveSpace>> cache;
  std::lock_guard lock(mu);
  auto key = std::pair{field.get(), r};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto space = std::make_shared<const ProjectiveSpace>(field, r, budget);
  cache.emplace(key, space);
  return space;
}

ValidationReport validate_params(const BParams& params) {
  check_shape(params.q, params.r);
  const auto f = Field::make_quadratic(params.q);
  const std::uint32_t q = params.q;
  if (params.alpha.value >= f->order() || params.beta.value >= f->order()) {
    throw UsageError("alpha/beta encodings must be below " + std::to_string(f->order()));
  }
  if (params.alpha.value == 0) throw ParameterError("alpha!=0", "alpha must be nonzero");
  if (f->in_subfield(params.beta)) throw ParameterError("beta!in GF(q)", "beta must not lie in GF(q)");

  ValidationReport rep;
  const FieldElem nq = f->trace_norm(params.alpha).norm;  // alpha^{q+1}
  if (q % 2 == 1) {
    const FieldElem d = f->sub(f->frobenius_q(params.beta), params.beta);
    rep.invariant = f->add(f->mul(f->from_int(4), nq), f->mul(d, d));
    if (params.r % 2 == 1) {
      rep.clause = "(1)";
      rep.valid = rep.invariant != f->zero();
      rep.message = rep.valid ? "4 alpha^{q+1} + (beta^q - beta)^2 != 0"
                              : "condition (1) fails: 4 alpha^{q+1} + (beta^q - beta)^2 = 0";
    } else {
      rep.clause = "(2)";
      const auto sub = f->subfield();
      const FieldElem y = f->to_subfield(rep.invariant);
      rep.valid = y != sub->zero() && !sub->is_square(y);
      rep.message = rep.valid ? "4 alpha^{q+1} + (beta^q - beta)^2 is a non-square of GF(q)"
                              : "condition (2) fails: 4 alpha^{q+1} + (beta^q - beta)^2 is zero or a square of GF(q)";
    }
  } else {
    const FieldElem s = f->add(f->frobenius_q(params.beta), params.beta);
    rep.invariant = f->div(nq, f->mul(s, s));
    if (params.r % 2 == 1) {
      rep.clause = "(i)";
      rep.valid = true;
      rep.message = "q even, r odd: no further condition";
    } else {
      rep.clause = "(ii)";
      const auto sub = f->subfield();
      rep.trace = "absolute trace GF(q) -> GF(2)";
      rep.trace_value = sub->trace_to_prime(f->to_subfield(rep.invariant));
      rep.valid = rep.trace_value == sub->zero();
      rep.message = rep.valid ? "Tr(alpha^{q+1}/(beta^q + beta)^2) = 0"
                              : "condition (ii) fails: Tr(alpha^{q+1}/(beta^q + beta)^2) = 1";
    }
  }
  return rep;
}

std::optional<BParams> find_params(std::uint32_t q, unsigned r) {
  check_shape(q, r);
  const auto f = Field::make_quadratic(q);
  for (std::uint32_t a = 1; a < f->order(); ++a) {
    for (std::uint32_t b = 0; b < f->order(); ++b) {
      if (f->in_subfield(FieldElem{b})) continue;
      const BParams p{q, r, FieldElem{a}, FieldElem{b}};
      if (validate_params(p).valid) return p;
    }
  }
  return std::nullopt;
}

std::uint64_t count_valid_params(std::uint32_t q, unsigned r) {
  check_shape(q, r);
  const auto f = Field::make_quadratic(q);
  std::uint64_t n = 0;
  for (std::uint32_t a = 1; a < f->order(); ++a) {
    for (std::uint32_t b = 0; b < f->order(); ++b) {
      if (f->in_subfield(FieldElem{b})) continue;
      n += validate_params(BParams{q, r, FieldElem{a}, FieldElem{b}}).valid ? 1 : 0;
    }
  }
  return n;
}

Variety::Variety(std::string label, VarietyKind kind, std::shared_ptr<const ProjectiveSpace> space,
                 std::vector<std::uint32_t> points)
    : label_(std::move(label)), kind_(kind), space_(std::move(space)), points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
    throw UsageError("variety point list contains duplicates");
  }
  members_ = PointSet(space_->num_points());
  std::vector<FieldElem> coords;
  coords.reserve(points_.size() * (space_->dim() + 1));
  for (auto p : points_) {
    if (p >= space_->num_points()) throw UsageError("point index out of range");
    members_.set(p);
    auto c = space_->coords(p);
    coords.insert(coords.end(), c.begin(), c.end());
  }
  planes_ = std::make_shared<const kernels::DigitPlanes>(space_->field_ptr(), space_->dim(), coords);
}

std::optional<std::size_t> Variety::local_index(std::size_t global_index) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), global_index);
  if (it == points_.end() || *it != global_index) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

Variety build_B(const BParams& params, const Budget& budget) {
  require_valid(params);
  auto space = space_for(params.q, params.r, budget);
  auto pts = B_affine_points(params, *space, budget);
  auto inf = B_infinity_points(params, *space);
  pts.insert(pts.end(), inf.begin(), inf.end());
  Variety v("B", VarietyKind::B, space, std::move(pts));
  v.set_params(params);
  return v;
}

Variety build_B_infinity(const BParams& params, const Budget& budget) {
  require_valid(params);
  auto space = space_for(params.q, params.r, budget);
  Variety v("B_inf", VarietyKind::BInfinity, space, B_infinity_points(params, *space));
  v.set_params(params);
  return v;
}

Variety build_hermitian(std::uint32_t q, unsigned r, const Budget& budget) {
  if (r < 1) throw UsageError("r must be positive");
  auto space = space_for(q, r, budget);
  const Field& f = space->field();
  budget.require(std::uint64_t{space->num_points()} * (r + 1), "enumerate the Hermitian variety");
  std::vector<std::uint32_t> pts;
  for (std::size_t i = 0; i < space->num_points(); ++i) {
    FieldElem s = f.zero();
    for (FieldElem x : space->coords(i)) s = f.add(s, f.pow(x, q + 1ull));
    if (s == f.zero()) pts.push_back(static_cast<std::uint32_t>(i));
  }
  return Variety("hermitian", VarietyKind::Hermitian, space, std::move(pts));
}

Variety build_cone_F(std::uint32_t q, unsigned r, const Budget& budget) {
  if (r < 2) throw UsageError("the cone F needs r >= 2");
  auto space = space_for(q, r, budget);
  return Variety("cone-F", VarietyKind::ConeF, space, cone_F_points(q, *space));
}

Variety build_quasi_hermitian(const BParams& params, const Budget& budget) {
  require_valid(params);
  auto space = space_for(params.q, params.r, budget);
  auto pts = B_affine_points(params, *space, budget);
  auto cone = cone_F_points(params.q, *space);
  pts.insert(pts.end(), cone.begin(), cone.end());
  Variety v("quasi-hermitian", VarietyKind::QuasiHermitian, space, std::move(pts));
  v.set_params(params);
  return v;
}

std::vector<std::uint64_t> SpectrumReport::support() const {
  std::vector<std::uint64_t> out;
  for (const auto& [size, count] : counts) out.push_back(size);
  return out;
}

std::vector<std::uint32_t> hyperplane_section_sizes(const Variety& v, const Budget& budget) {
  const auto& space = v.space();
  const std::size_t nh = space.num_hyperplanes();
  budget.require(std::uint64_t{nh} * v.size(), "hyperplane sections of " + v.label());
  std::vector<std::uint32_t> sizes(nh);
  const auto& planes = v.planes();
  parallel_for(nh, [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<std::uint64_t> scratch(planes.words());
    for (std::size_t h = begin; h < end; ++h) {
      sizes[h] = static_cast<std::uint32_t>(planes.section(space.coords(h), scratch));
    }
  });
  return sizes;
}

std::vector<PointSet> hyperplane_sections(const Variety& v, const Budget& budget) {
  const auto& space = v.space();
  const std::size_t nh = space.num_hyperplanes();
  budget.require(std::uint64_t{nh} * v.size(), "hyperplane sections of " + v.label());
  std::vector<PointSet> out(nh, PointSet(v.size()));
  const auto& planes = v.planes();
  parallel_for(nh, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t h = begin; h < end; ++h) planes.section(space.coords(h), out[h].words());
  });
  return out;
}

SpectrumReport hyperplane_spectrum(const Variety& v, const Budget& budget) {
  SpectrumReport rep;
  rep.variety = v.label();
  rep.subject = "hyperplanes";
  rep.n_points = v.size();
  for (auto s : hyperplane_section_sizes(v, budget)) {
    ++rep.counts[s];
    ++rep.total;
  }
  return rep;
}

SpectrumReport line_spectrum(const Variety& v, const Budget& budget) {
  SpectrumReport rep;
  rep.variety = v.label();
  rep.subject = "lines";
  rep.n_points = v.size();
  const auto& space = v.space();
  const std::uint64_t qf = space.field().order();
  budget.require(gaussian_binomial(qf, space.dim() + 1, 2) * (qf + 1), "line sections of " + v.label());
  for_each_line(
      space,
      [&](const Line&, std::span<const std::uint32_t> pts) {
        std::uint64_t c = 0;
        for (auto p : pts) c += v.contains(p) ? 1 : 0;
        ++rep.counts[c];
        ++rep.total;
      },
      budget);
  return rep;
}

PredictedSpectrum predicted_spectrum(std::uint32_t q_u, unsigned r, VarietyKind kind) {
  const std::int64_t q = q_u;
  auto P = [&](int e) -> std::int64_t { return e < 0 ? 0 : static_cast<std::int64_t>(ipow(q_u, static_cast<unsigned>(e))); };
  const std::int64_t q2m1 = q * q - 1;
  const int ri = static_cast<int>(r);
  PredictedSpectrum out;
  std::vector<std::int64_t> s;

  if (kind == VarietyKind::Hermitian || kind == VarietyKind::QuasiHermitian) {
    if (r < 2) throw ParameterError("r>=2", "Hermitian intersection numbers need r >= 2");
    prime_power(q_u);
    const std::int64_t sgn = (r % 2 == 0) ? 1 : -1;  // (-1)^r
    out.n_points = static_cast<std::uint64_t>((P(ri + 1) + sgn) * (P(ri) - sgn) / q2m1);
    const std::int64_t a = (P(ri) - sgn) * (P(ri - 1) + sgn) / q2m1;  // |H(r-1, q^2)|
    s = {a, a - sgn * P(ri - 1)};
  } else if (kind == VarietyKind::B) {
    check_shape(q_u, r);
    const std::int64_t c1 = (P(2 * (ri - 2)) - 1) / q2m1;       // (q^{2(r-2)} - 1)/(q^2 - 1)
    const std::int64_t c2 = (P(2 * (ri - 2)) - q * q) / q2m1;   // (q^{2(r-2)} - q^2)/(q^2 - 1)
    const std::int64_t top = P(2 * ri - 3);
    if (q % 2 == 1) {
      if (r % 2 == 1) {
        out.n_points = static_cast<std::uint64_t>(P(2 * ri - 1) + P(ri - 1) + (P(2 * (ri - 1)) - q * q) / q2m1 + 1);
        s = {q * q * c1 + P(ri - 1) + 1,
             top - P(ri - 2) + P(ri - 3) + c1,
             top + c2 + 1,
             top + P(ri - 1) - P(ri - 2) + P(ri - 3) + c1,
             top + P(ri - 1) + c2 + 1};
      } else {
        out.n_points = static_cast<std::uint64_t>(P(2 * ri - 1) + (P(2 * (ri - 1)) - q * q) / q2m1 + 1);
        s = {q * q * c1 + 1,
             top - P(ri - 1) + P(ri - 2) + c1,
             top + c2 - P(ri - 2) + 1,
             top + c2 + 1,
             top + c2 + P(ri - 2) + 1};
      }
    } else {
      const std::int64_t c3 = (P(2 * (ri - 1)) - 1) / q2m1;  // (q^{2(r-1)} - 1)/(q^2 - 1)
      out.n_points = static_cast<std::uint64_t>(P(2 * ri - 1) + c3);
      if (r % 2 == 1) {
        s = {c3, top - P(ri - 2) + c1, top + c1, top + P(ri - 1) - P(ri - 2) + c1, top + c3};
      } else {
        s = {c3, top - P(ri - 1) + P(ri - 2) + c1, top + c1, top + P(ri - 2) + c1, top + c3};
      }
    }
  } else {
    throw UsageError("no closed-form spectrum for variety kind " + std::string(kind_name(kind)));
  }
  for (auto x : s) out.sizes.push_back(static_cast<std::uint64_t>(x));
  std::sort(out.sizes.begin(), out.sizes.end());
  out.sizes.erase(std::unique(out.sizes.begin(), out.sizes.end()), out.sizes.end());
  return out;
}

std::vector<std::uint64_t> predicted_line_sizes(std::uint32_t q) {
  std::vector<std::uint64_t> v{0, 1, 2, q - 1ull, q, q + 1ull, q + 2ull, 2ull * q - 1, 2ull * q, 1ull * q * q + 1};
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace qh
