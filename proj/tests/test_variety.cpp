#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "oracle.hpp"
#include "qhcodes/error.hpp"
#include "qhcodes/variety.hpp"

using namespace qh;

namespace {

using Coords = std::vector<std::uint32_t>;

// Direct evaluation of the defining equations over a schoolbook field.
struct BOracle {
  oracle::NaiveField f;
  std::uint32_t q;
  unsigned r;
  std::uint32_t alpha, beta;

  std::uint32_t sum_pow(const Coords& x, std::uint64_t e) const {
    std::uint32_t s = 0;
    for (unsigned i = 1; i <= r - 1; ++i) s = f.add(s, f.pow(x[i], e));
    return s;
  }
  // Affine equation at (1, x_1, ..., x_r).
  bool affine(const Coords& x) const {
    const std::uint32_t xr = x[r];
    const std::uint32_t lhs = f.add(f.sub(f.pow(xr, q), xr),
                                    f.sub(f.mul(f.pow(alpha, q), sum_pow(x, 2 * q)), f.mul(alpha, sum_pow(x, 2))));
    const std::uint32_t rhs = f.mul(f.sub(f.pow(beta, q), beta), sum_pow(x, q + 1));
    return lhs == rhs;
  }
  // Leading form at X_0 = 0: alpha^q (X_1^2 + ... + X_{r-1}^2)^q.
  bool at_infinity(const Coords& x) const { return sum_pow(x, 2) == 0; }
  bool contains(const Coords& x) const { return x[0] == 1 ? affine(x) : at_infinity(x); }
};

std::set<Coords> oracle_set(const oracle::NaiveField& f, unsigned r, const std::function<bool(const Coords&)>& in) {
  std::set<Coords> out;
  for (const auto& p : oracle::points(f, r)) {
    if (in(p)) out.insert(p);
  }
  return out;
}

std::set<Coords> library_set(const Variety& v) {
  std::set<Coords> out;
  for (auto p : v.points()) {
    Coords c;
    for (auto x : v.space().coords(p)) c.push_back(x.value);
    out.insert(c);
  }
  return out;
}

std::uint32_t hermitian_sum(const oracle::NaiveField& f, const Coords& x, std::size_t from, std::size_t to,
                            std::uint32_t q) {
  std::uint32_t s = 0;
  for (std::size_t i = from; i < to; ++i) s = f.add(s, f.pow(x[i], q + 1));
  return s;
}

FieldElem imaginary_unit(const Field& f) {
  for (std::uint32_t x = 0; x < f.order(); ++x) {
    if (f.mul(FieldElem{x}, FieldElem{x}) == f.neg(f.one())) return FieldElem{x};
  }
  return FieldElem{0};
}

}  // namespace

TEST(Variety, BMatchesDirectEquationEvaluation) {
  for (auto [q, r] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 3}, {4, 3}, {5, 3}}) {
    const auto p = find_params(q, r);
    ASSERT_TRUE(p.has_value());
    const Variety v = build_B(*p);
    const oracle::NaiveField nf{v.field().characteristic(), v.field().modulus()};
    const BOracle o{nf, q, r, p->alpha.value, p->beta.value};
    EXPECT_EQ(library_set(v), oracle_set(nf, r, [&](const Coords& x) { return o.contains(x); })) << q << "," << r;
    EXPECT_TRUE(v.contains(v.space().index_of(std::vector<FieldElem>{FieldElem{1}, {}, {}, {}})));
  }
}

TEST(Variety, OtherValidParametersAgreeWithTheEquation) {
  // A few more valid pairs at q = 3, scanned in encoding order.
  const auto f = Field::make_quadratic(3);
  int tried = 0;
  for (std::uint32_t a = 1; a < 9 && tried < 4; ++a) {
    for (std::uint32_t b = 0; b < 9 && tried < 4; ++b) {
      const BParams p{3, 3, FieldElem{a}, FieldElem{b}};
      if (f->in_subfield(FieldElem{b}) || !validate_params(p).valid) continue;
      ++tried;
      const Variety v = build_B(p);
      const oracle::NaiveField nf{3, f->modulus()};
      const BOracle o{nf, 3, 3, a, b};
      EXPECT_EQ(library_set(v), oracle_set(nf, 3, [&](const Coords& x) { return o.contains(x); }));
      EXPECT_EQ(v.size(), 262u);
    }
  }
  EXPECT_EQ(tried, 4);
}

TEST(Variety, ParameterValidation) {
  const auto f = Field::make_quadratic(3);
  const FieldElem i = imaginary_unit(*f);
  ASSERT_NE(i.value, 0u);
  const FieldElem one_plus_i = f->add(f->one(), i);
  const auto ok = validate_params({3, 3, one_plus_i, i});
  EXPECT_TRUE(ok.valid);
  EXPECT_EQ(ok.clause, "(1)");
  EXPECT_EQ(ok.invariant, f->one());
  const auto bad = validate_params({3, 3, f->one(), i});
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.invariant, f->zero());

  EXPECT_EQ(count_valid_params(3, 4), 0u);
  EXPECT_FALSE(find_params(3, 4).has_value());
  EXPECT_GT(count_valid_params(3, 3), 0u);
  EXPECT_GT(count_valid_params(4, 3), 0u);
  EXPECT_GT(count_valid_params(4, 4), 0u);

  EXPECT_THROW(validate_params({2, 3, FieldElem{1}, FieldElem{2}}), ParameterError);
  EXPECT_THROW(validate_params({3, 2, one_plus_i, i}), ParameterError);
  EXPECT_THROW(validate_params({3, 3, one_plus_i, f->one()}), ParameterError);  // beta in GF(q)
  try {
    build_B({2, 3, FieldElem{1}, FieldElem{2}});
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("even q>2 required"), std::string::npos);
  }
  EXPECT_EQ(validate_params(*find_params(4, 3)).clause, "(i)");
  const auto even = validate_params(*find_params(4, 4));
  EXPECT_EQ(even.clause, "(ii)");
  EXPECT_FALSE(even.trace.empty());
}

TEST(Variety, DefaultParameters) {
  const auto p3 = find_params(3, 3);
  EXPECT_EQ(p3->alpha.value, 3u);
  EXPECT_EQ(p3->beta.value, 3u);
  const auto p4 = find_params(4, 3);
  EXPECT_EQ(p4->alpha.value, 1u);
  EXPECT_EQ(p4->beta.value, 2u);
}

TEST(Variety, HermitianConeAndQuasiHermitianMatchOracles) {
  for (std::uint32_t q : {2u, 3u}) {
    const Variety h = build_hermitian(q, 3);
    const oracle::NaiveField nf{h.field().characteristic(), h.field().modulus()};
    EXPECT_EQ(library_set(h),
              oracle_set(nf, 3, [&](const Coords& x) { return hermitian_sum(nf, x, 0, 4, q) == 0; }));
    const Variety cone = build_cone_F(q, 3);
    const auto cone_set =
        oracle_set(nf, 3, [&](const Coords& x) { return x[0] == 0 && hermitian_sum(nf, x, 1, 3, q) == 0; });
    EXPECT_EQ(library_set(cone), cone_set);
  }
  EXPECT_EQ(build_hermitian(2, 3).size(), 45u);
  EXPECT_EQ(build_hermitian(3, 3).size(), 280u);
  EXPECT_EQ(build_cone_F(3, 3).size(), 37u);

  const auto p = *find_params(3, 3);
  const Variety b = build_B(p), binf = build_B_infinity(p), qh = build_quasi_hermitian(p);
  const Variety cone = build_cone_F(3, 3);
  std::set<std::uint32_t> expected;
  for (auto x : b.points())
    if (!binf.contains(x)) expected.insert(x);
  for (auto x : cone.points()) expected.insert(x);
  EXPECT_EQ(std::set<std::uint32_t>(qh.points().begin(), qh.points().end()), expected);
  EXPECT_EQ(qh.size(), 280u);
  EXPECT_EQ(binf.size(), 19u);
}

TEST(Variety, HermitianCurveNeedsNoParameters) {
  EXPECT_EQ(build_hermitian(2, 2).size(), 9u);
}

TEST(Variety, SpectraOfB) {
  const auto b33 = build_B(*find_params(3, 3));
  const auto s = hyperplane_spectrum(b33);
  EXPECT_EQ(s.total, 820u);
  // Measured counts; the first moment sum_s s * count = N * |points per plane| pins them.
  const std::map<std::uint64_t, std::uint64_t> measured{{19, 1}, {26, 486}, {28, 72}, {35, 243}, {37, 18}};
  EXPECT_EQ(s.counts, measured);
  std::uint64_t incidences = 0;
  for (const auto& [k, c] : s.counts) incidences += k * c;
  EXPECT_EQ(incidences, 262u * 91u);
  EXPECT_EQ(s.support(), predicted_spectrum(3, 3, VarietyKind::B).sizes);

  const auto b43 = build_B(*find_params(4, 3));
  EXPECT_EQ(b43.size(), 1041u);
  const auto s43 = hyperplane_spectrum(b43);
  EXPECT_EQ(s43.support(), predicted_spectrum(4, 3, VarietyKind::B).sizes);
  EXPECT_EQ(s43.support(), (std::vector<std::uint64_t>{17, 61, 65, 77, 81}));
}

TEST(Variety, SpectraOfHermitianAndQuasiHermitian) {
  const std::map<std::uint64_t, std::uint64_t> two_values{{28, 540}, {37, 280}};
  EXPECT_EQ(hyperplane_spectrum(build_hermitian(3, 3)).counts, two_values);
  EXPECT_EQ(hyperplane_spectrum(build_quasi_hermitian(*find_params(3, 3))).counts, two_values);
  EXPECT_EQ(hyperplane_spectrum(build_hermitian(2, 3)).counts,
            (std::map<std::uint64_t, std::uint64_t>{{9, 40}, {13, 45}}));
}

TEST(Variety, PredictedSizes) {
  EXPECT_EQ(predicted_spectrum(3, 3, VarietyKind::B).n_points, 262u);
  EXPECT_EQ(predicted_spectrum(4, 4, VarietyKind::B).n_points, 16657u);
  EXPECT_EQ(predicted_spectrum(3, 4, VarietyKind::B).n_points, 2278u);
  EXPECT_EQ(predicted_spectrum(3, 3, VarietyKind::Hermitian).n_points, 280u);
}

TEST(Variety, LineSpectrum) {
  const auto v = build_B(*find_params(3, 3));
  const auto s = line_spectrum(v);
  EXPECT_EQ(s.total, 7462u);
  EXPECT_EQ(s.counts, (std::map<std::uint64_t, std::uint64_t>{{1, 8}, {2, 4455}, {4, 81}, {5, 2916}, {10, 2}}));
  const auto allowed = predicted_line_sizes(3);
  for (auto k : s.support()) EXPECT_TRUE(std::find(allowed.begin(), allowed.end(), k) != allowed.end()) << k;
}

TEST(Variety, SectionSizesDoNotDependOnTheKernel) {
  // The kernel is fixed when the digit planes are built.
  kernels::force_isa(kernels::Isa::Scalar);
  const auto v_scalar = build_B(*find_params(4, 3));
  kernels::reset_isa();
  const auto v_fast = build_B(*find_params(4, 3));
  EXPECT_EQ(v_scalar.planes().isa(), kernels::Isa::Scalar);
  EXPECT_EQ(hyperplane_section_sizes(v_scalar), hyperplane_section_sizes(v_fast));
}

TEST(Variety, BudgetIsEnforced) {
  EXPECT_THROW(hyperplane_spectrum(build_B(*find_params(3, 3)), Budget{1000}), BudgetExceeded);
}
