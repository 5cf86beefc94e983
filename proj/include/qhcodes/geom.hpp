#pragma once

// Points, hyperplanes and subspaces of PG(r, q_f).
//
// Coordinates are normalized so that the leftmost nonzero entry is 1. The
// canonical order of points (and, dually, of hyperplanes) is lexicographic on
// the normalized coordinate encodings, X_0 most significant. In that order the
// index of a point with leading coordinate at position j and tail digits
// x_{j+1}..x_r is (q^{r-j} - 1)/(q - 1) + sum_{i>j} x_i q^{r-i}.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qhcodes/budget.hpp"
#include "qhcodes/gf.hpp"

namespace qh {

using Vec = std::vector<FieldElem>;

struct ProjPoint {
  Vec coords;
  auto operator<=>(const ProjPoint&) const = default;
};

struct Hyperplane {
  Vec coords;
  auto operator<=>(const Hyperplane&) const = default;
};

// A line, identified by its two smallest points in canonical order.
struct Line {
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  auto operator<=>(const Line&) const = default;
};

// Row-reduced echelon basis of a subspace.
struct SubspaceBasis {
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return rows.size(); }
};

// Point-order version echoed in reports; bump if the ordering ever changes.
inline constexpr int kPointOrderVersion = 1;

// Throws UsageError on the zero vector.
Vec normalize(const Field& f, std::span<const FieldElem> v);
FieldElem dot(const Field& f, std::span<const FieldElem> a, std::span<const FieldElem> b);
bool incident(const Field& f, const ProjPoint& p, const Hyperplane& h);

std::uint64_t projective_count(std::uint64_t q, unsigned r);  // (q^{r+1}-1)/(q-1)
// Number of k-dimensional subspaces of an n-dimensional vector space over GF(q).
std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned k);

class ProjectiveSpace {
 public:
  ProjectiveSpace(FieldPtr field, unsigned r, const Budget& budget = {});

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  unsigned dim() const { return r_; }
  std::size_t num_points() const { return count_; }
  std::size_t num_hyperplanes() const { return count_; }

  // Normalized coordinates of the point (or hyperplane) with this index.
  std::span<const FieldElem> coords(std::size_t index) const {
    return {coords_.data() + index * (r_ + 1), r_ + 1};
  }
  ProjPoint point(std::size_t index) const;
  Hyperplane hyperplane(std::size_t index) const;

  // Index of the point spanned by v (any nonzero representative).
  std::size_t index_of(std::span<const FieldElem> v) const;
  // Same, for a vector already known to be normalized.
  std::size_t index_of_normalized(std::span<const FieldElem> v) const;

  bool incident(std::size_t point, std::size_t hyperplane) const;

 private:
  FieldPtr field_;
  unsigned r_;
  std::size_t count_;
  std::vector<FieldElem> coords_;
  std::vector<std::uint64_t> qpow_;
};

std::vector<ProjPoint> enumerate_points(FieldPtr field, unsigned r, const Budget& budget = {});
std::vector<Hyperplane> enumerate_hyperplanes(FieldPtr field, unsigned r, const Budget& budget = {});

// Echelon basis of the span. Empty input gives rank 0.
SubspaceBasis span_rank(const Field& f, std::span<const Vec> vectors);
// Rank only; stops early once `stop_at` is reached.
std::size_t rank_of(const Field& f, std::span<const Vec> vectors, std::size_t stop_at = SIZE_MAX);
// Coefficients x with sum_j x_j columns[j] = target, free variables set to 0;
// nullopt when target is outside the span.
std::optional<Vec> solve_combination(const Field& f, std::span<const Vec> columns,
                                     std::span<const FieldElem> target);

// Calls fn once per vector subspace of dimension `vector_dim`, with its RREF
// basis. Enumeration is deterministic.
void for_each_subspace(const ProjectiveSpace& space, unsigned vector_dim,
                       const std::function<void(const SubspaceBasis&)>& fn,
                       const Budget& budget = {});
// Indices of the points of the subspace spanned by an RREF basis.
std::vector<std::uint32_t> subspace_points(const ProjectiveSpace& space, const SubspaceBasis& basis);

// Calls fn once per line with the line's canonical pair and its q_f + 1 points.
void for_each_line(const ProjectiveSpace& space,
                   const std::function<void(const Line&, std::span<const std::uint32_t>)>& fn,
                   const Budget& budget = {});
std::vector<Line> enumerate_lines(const ProjectiveSpace& space, const Budget& budget = {});

// Quadratic Veronese map PG(r) -> PG((r^2 + 3r)/2): monomials x_i x_j, i <= j,
// in the order x_0^2, x_0 x_1, ..., x_0 x_r, x_1^2, ..., x_r^2.
ProjPoint veronese2(const Field& f, const ProjPoint& p);

}  // namespace qh
