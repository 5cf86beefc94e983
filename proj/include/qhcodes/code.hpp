#pragma once

// Projective codes C(V): the generator matrix has the points of V as columns.
// The codeword of the functional h has weight N - |V cap h|, so weights and
// minimality reduce to hyperplane sections of V.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhcodes/budget.hpp"
#include "qhcodes/variety.hpp"

namespace qh {

struct LinearCode {
  FieldPtr field;
  std::size_t n = 0;
  std::size_t k = 0;
  // Row-major k x n.
  std::vector<FieldElem> generator;
  // Global point index of each column; column 0 is P0.
  std::vector<std::uint32_t> columns;
  std::string source;

  FieldElem at(std::size_t row, std::size_t col) const { return generator[row * n + col]; }
  Vec column(std::size_t col) const;
};

// Columns are the normalized points of v, P0 first, then the rest in
// canonical order. P0 defaults to the first point of v. Throws
// PreconditionError with the measured rank if v does not span PG(r, q_f).
LinearCode code_from_variety(const Variety& v, std::optional<std::uint32_t> p0 = std::nullopt);

struct WeightDistribution {
  std::size_t n = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // weight -> A_w, including A_0

  std::uint64_t total() const;
  std::uint64_t min_nonzero() const;
  std::uint64_t max_nonzero() const;
  std::vector<std::uint64_t> nonzero_weights() const;
  bool operator==(const WeightDistribution&) const = default;
};

// A_{N-s} = (q_f - 1) * #{hyperplanes meeting v in s points}.
WeightDistribution weights_via_hyperplanes(const LinearCode& c, const Variety& v, const Budget& budget = {});
// Enumerates all q_f^k codewords u G.
WeightDistribution weights_bruteforce(const LinearCode& c, const Budget& budget = {});

// d_k = n - max |V cap S| over subspaces S of codimension k.
std::uint64_t higher_weight(const Variety& v, unsigned level, const Budget& budget = {});
// Closed forms for d_1 and d_{r-1} of C(B).
std::uint64_t predicted_higher_weight_B(std::uint32_t q, unsigned r, unsigned level);

// gcd of the nonzero weights.
std::uint64_t divisibility(const WeightDistribution& w);
// w_min q_f > w_max (q_f - 1), exact.
bool ab_bound_check(const WeightDistribution& w, std::uint32_t field_order);

struct MinimalityReport {
  bool minimal = true;
  std::string method;  // "ab-bound", "cutting-blocking" or "brute-force"
  // cutting-blocking: first hyperplane whose section does not span it.
  std::optional<std::uint32_t> witness_hyperplane;
  std::optional<std::size_t> witness_rank;
  // brute-force: (covered, covering) hyperplanes with sec(covered) in sec(covering).
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness_pair;
  std::uint64_t non_minimal_words = 0;
  std::map<std::uint64_t, std::uint64_t> non_minimal_by_weight;
  std::vector<std::uint32_t> covered_hyperplanes;
};

MinimalityReport cutting_blocking_check(const Variety& v, const Budget& budget = {});
MinimalityReport minimal_codewords_bruteforce(const Variety& v, const Budget& budget = {});

}  // namespace qh
