#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "oracle.hpp"
#include "qhcodes/error.hpp"
#include "qhcodes/gf.hpp"

using namespace qh;

namespace {

// Published Conway polynomials (low to high).
const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> kConway = {
    {{2, 1}, {1, 1}},          {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},
    {{2, 4}, {1, 1, 0, 0, 1}}, {{2, 5}, {1, 0, 1, 0, 0, 1}}, {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
    {{3, 1}, {1, 1}},          {{3, 2}, {2, 2, 1}},       {{3, 3}, {1, 2, 0, 1}},
    {{3, 4}, {2, 0, 0, 2, 1}}, {{5, 1}, {3, 1}},          {{5, 2}, {2, 4, 1}},
    {{5, 3}, {3, 3, 0, 1}},    {{7, 1}, {4, 1}},          {{7, 2}, {3, 6, 1}},
    {{11, 2}, {2, 7, 1}},      {{13, 2}, {2, 12, 1}},
};

std::vector<std::pair<std::uint32_t, std::uint32_t>> small_fields() {
  return {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 2}, {7, 2}};
}

}  // namespace

TEST(Gf, ConwayPolynomialsMatchPublishedTable) {
  for (const auto& [pm, poly] : kConway) {
    EXPECT_EQ(conway_polynomial(pm.first, pm.second), poly) << pm.first << "^" << pm.second;
  }
}

TEST(Gf, MakeRejectsBadInput) {
  EXPECT_THROW(Field::make(4, 1), UsageError);
  EXPECT_THROW(Field::make(2, 0), UsageError);
  EXPECT_THROW(Field::make(2, 21), UsageError);
  EXPECT_THROW(Field::with_modulus(2, {1, 0, 1}), UsageError);  // x^2 + 1 = (x + 1)^2
}

TEST(Gf, OrderAndLagrange) {
  const auto f4 = Field::make(2, 2);
  EXPECT_EQ(f4->order(), 4u);
  const auto f9 = Field::make(3, 2);
  for (std::uint32_t x = 1; x < 9; ++x) EXPECT_EQ(f9->pow(FieldElem{x}, 8), f9->one());
}

// Every product and sum agrees with schoolbook arithmetic modulo the same
// polynomial, exhaustively for q_f <= 81.
TEST(Gf, ArithmeticMatchesNaiveOracle) {
  for (auto [p, m] : small_fields()) {
    const auto f = Field::make(p, m);
    const oracle::NaiveField nf{p, f->modulus()};
    for (std::uint32_t a = 0; a < f->order(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        ASSERT_EQ(f->add(FieldElem{a}, FieldElem{b}).value, nf.add(a, b)) << f->describe();
        ASSERT_EQ(f->mul(FieldElem{a}, FieldElem{b}).value, nf.mul(a, b)) << f->describe();
        ASSERT_EQ(f->sub(FieldElem{a}, FieldElem{b}).value, nf.sub(a, b)) << f->describe();
      }
    }
  }
}

TEST(Gf, LargeFieldWithoutTablesMatchesOracleRandomly) {
  const auto f = Field::make(2, 18);  // above the table limit
  ASSERT_FALSE(f->uses_tables());
  const oracle::NaiveField nf{2, f->modulus()};
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint32_t> pick(0, f->order() - 1);
  for (int i = 0; i < 2000; ++i) {
    const std::uint32_t a = pick(rng), b = pick(rng);
    ASSERT_EQ(f->mul(FieldElem{a}, FieldElem{b}).value, nf.mul(a, b));
    if (a) ASSERT_EQ(f->mul(FieldElem{a}, f->inv(FieldElem{a})), f->one());
  }
}

TEST(Gf, FieldAxiomsRandomized) {
  std::mt19937_64 rng(5);
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 8}, {3, 6}, {5, 4}, {7, 4}, {31, 2}}) {
    const auto f = Field::make(p, m);
    std::uniform_int_distribution<std::uint32_t> pick(0, f->order() - 1);
    for (int i = 0; i < 3000; ++i) {
      const FieldElem a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
      ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
      ASSERT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
      ASSERT_EQ(f->add(a, f->neg(a)), f->zero());
      if (a.value) ASSERT_EQ(f->div(f->mul(a, b), a), b);
    }
  }
}

TEST(Gf, EncodingRoundTripsAndTablesInvert) {
  for (auto [p, m] : small_fields()) {
    const auto f = Field::make(p, m);
    for (std::uint32_t x = 0; x < f->order(); ++x) {
      EXPECT_EQ(f->from_digits(f->digits(FieldElem{x})).value, x);
      if (x) EXPECT_EQ(f->exp(f->log(FieldElem{x})).value, x);
    }
    // The primitive element generates the whole multiplicative group.
    std::set<std::uint32_t> seen;
    FieldElem g = f->one();
    for (std::uint32_t k = 0; k + 1 < f->order(); ++k, g = f->mul(g, f->primitive())) seen.insert(g.value);
    EXPECT_EQ(seen.size(), f->order() - 1);
  }
}

TEST(Gf, FrobeniusIsAnInvolutiveAutomorphismFixingTheSubfield) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto f = Field::make_quadratic(q);
    std::size_t fixed = 0;
    for (std::uint32_t x = 0; x < f->order(); ++x) {
      const FieldElem a{x};
      EXPECT_EQ(f->frobenius_q(f->frobenius_q(a)), a);
      EXPECT_EQ(f->frobenius_q(a), f->pow(a, q));
      if (f->frobenius_q(a) == a) {
        ++fixed;
        EXPECT_TRUE(f->in_subfield(a));
      }
      if (f->order() <= 81) {
        for (std::uint32_t y = 0; y < f->order(); ++y) {
          const FieldElem b{y};
          ASSERT_EQ(f->frobenius_q(f->add(a, b)), f->add(f->frobenius_q(a), f->frobenius_q(b)));
          ASSERT_EQ(f->frobenius_q(f->mul(a, b)), f->mul(f->frobenius_q(a), f->frobenius_q(b)));
        }
      }
    }
    EXPECT_EQ(fixed, q);
    EXPECT_EQ(f->subfield_elements().size(), q);
  }
}

TEST(Gf, TraceAndNorm) {
  const auto f = Field::make_quadratic(3);
  EXPECT_EQ(f->trace_norm(f->zero()).trace, f->zero());
  EXPECT_EQ(f->trace_norm(f->zero()).norm, f->zero());
  std::map<std::uint32_t, int> norm_hits;
  for (std::uint32_t x = 0; x < 9; ++x) {
    const auto tn = f->trace_norm(FieldElem{x});
    EXPECT_TRUE(f->in_subfield(tn.trace));
    EXPECT_TRUE(f->in_subfield(tn.norm));
    if (x) ++norm_hits[tn.norm.value];
    for (std::uint32_t y = 0; y < 9; ++y) {
      EXPECT_EQ(f->trace_norm(f->mul(FieldElem{x}, FieldElem{y})).norm,
                f->mul(tn.norm, f->trace_norm(FieldElem{y}).norm));
    }
  }
  ASSERT_EQ(norm_hits.size(), 2u);
  for (const auto& [v, c] : norm_hits) EXPECT_EQ(c, 4) << v;
}

TEST(Gf, SubfieldEmbeddingRoundTrips) {
  for (std::uint32_t q : {3u, 4u, 5u, 8u, 9u}) {
    const auto f = Field::make_quadratic(q);
    const auto sub = f->subfield();
    ASSERT_EQ(sub->order(), q);
    for (auto e : f->subfield_elements()) EXPECT_EQ(f->from_subfield(f->to_subfield(e)), e);
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        EXPECT_EQ(f->from_subfield(sub->mul(FieldElem{a}, FieldElem{b})),
                  f->mul(f->from_subfield(FieldElem{a}), f->from_subfield(FieldElem{b})));
      }
    }
  }
}

TEST(Gf, Squares) {
  const auto f3 = Field::make(3, 1);
  EXPECT_TRUE(f3->is_square(f3->one()));
  EXPECT_FALSE(f3->is_square(FieldElem{2}));
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}, {3, 2}, {7, 1}, {5, 2}}) {
    const auto f = Field::make(p, m);
    std::set<std::uint32_t> squares;
    for (std::uint32_t y = 0; y < f->order(); ++y) squares.insert(f->mul(FieldElem{y}, FieldElem{y}).value);
    std::size_t count = 0;
    for (std::uint32_t x = 0; x < f->order(); ++x) {
      EXPECT_EQ(f->is_square(FieldElem{x}), squares.count(x) == 1);
      count += f->is_square(FieldElem{x});
    }
    EXPECT_EQ(count, (f->order() + 1) / 2);
  }
  EXPECT_THROW(Field::make(2, 2)->is_square(FieldElem{1}), CharacteristicError);
}

TEST(Gf, AbsoluteTrace) {
  const auto f4 = Field::make(2, 2);
  int zeros = 0;
  for (std::uint32_t x = 0; x < 4; ++x) {
    const FieldElem a{x};
    EXPECT_EQ(f4->trace_to_prime(a), f4->add(a, f4->mul(a, a)));
    zeros += f4->trace_to_prime(a) == f4->zero();
  }
  EXPECT_EQ(zeros, 2);
  // m copies of a prime-field element, m = 3 = p.
  const auto f27 = Field::make(3, 3);
  for (std::uint32_t x = 0; x < 3; ++x) EXPECT_EQ(f27->trace_to_prime(FieldElem{x}), f27->zero());
  // Idempotent on GF(p): trace lands in GF(p) and is GF(p)-linear.
  const auto f16 = Field::make(2, 4);
  for (std::uint32_t x = 0; x < 16; ++x) EXPECT_LT(f16->trace_to_prime(FieldElem{x}).value, 2u);
}

TEST(Gf, DeterministicAcrossInstances) {
  const auto a = Field::make(5, 2);
  const auto b = Field::with_modulus(5, conway_polynomial(5, 2));
  for (std::uint32_t x = 0; x < 25; ++x) {
    for (std::uint32_t y = 0; y < 25; ++y) EXPECT_EQ(a->mul(FieldElem{x}, FieldElem{y}), b->mul(FieldElem{x}, FieldElem{y}));
  }
}
