#include "qhcodes/geom.hpp"

#include <algorithm>
#include <string>

#include "qhcodes/error.hpp"

namespace qh {

Vec normalize(const Field& f, std::span<const FieldElem> v) {
  auto lead = std::find_if(v.begin(), v.end(), [](FieldElem x) { return x.value != 0; });
  if (lead == v.end()) throw UsageError("the zero vector is not a projective point");
  Vec out(v.begin(), v.end());
  if (lead->value == 1) return out;
  const FieldElem s = f.inv(*lead);
  for (auto& x : out) x = f.mul(x, s);
  return out;
}

FieldElem dot(const Field& f, std::span<const FieldElem> a, std::span<const FieldElem> b) {
  if (a.size() != b.size()) throw UsageError("dimension mismatch in dot product");
  FieldElem acc = f.zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

bool incident(const Field& f, const ProjPoint& p, const Hyperplane& h) {
  return dot(f, p.coords, h.coords) == f.zero();
}

std::uint64_t projective_count(std::uint64_t q, unsigned r) {
  std::uint64_t n = 0, t = 1;
  for (unsigned i = 0; i <= r; ++i) {
    n += t;
    t *= q;
  }
  return n;
}

std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned k) {
  if (k > n) return 0;
  // Computed as a product of ratios, keeping each step exact.
  unsigned __int128 num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    unsigned __int128 a = 1, b = 1;
    for (unsigned j = 0; j < n - i; ++j) a *= q;
    for (unsigned j = 0; j < i + 1; ++j) b *= q;
    num *= (a - 1);
    den *= (b - 1);
  }
  return static_cast<std::uint64_t>(num / den);
}

ProjectiveSpace::ProjectiveSpace(FieldPtr field, unsigned r, const Budget& budget)
    : field_(std::move(field)), r_(r) {
  if (r < 1) throw UsageError("projective dimension must be at least 1");
  const std::uint64_t q = field_->order();
  qpow_.assign(r + 2, 1);
  for (unsigned i = 1; i < r + 2; ++i) {
    if (qpow_[i - 1] > (std::uint64_t{1} << 40)) throw BudgetExceeded("PG(" + std::to_string(r) + "," + std::to_string(q) + ") is too large to enumerate");
    qpow_[i] = qpow_[i - 1] * q;
  }
  const std::uint64_t n = projective_count(q, r);
  if (n >= (std::uint64_t{1} << 31)) throw BudgetExceeded("point count exceeds 2^31");
  budget.require(n * (r + 1), "enumerate PG(" + std::to_string(r) + "," + std::to_string(q) + ")");
  count_ = static_cast<std::size_t>(n);
  coords_.resize(count_ * (r + 1));
  std::size_t idx = 0;
  for (unsigned j = r + 1; j-- > 0;) {
    const std::uint64_t tail = qpow_[r - j];
    for (std::uint64_t s = 0; s < tail; ++s, ++idx) {
      FieldElem* c = coords_.data() + idx * (r + 1);
      c[j] = field_->one();
      std::uint64_t t = s;
      for (unsigned i = r; i > j; --i) {
        c[i] = FieldElem{static_cast<std::uint32_t>(t % q)};
        t /= q;
      }
    }
  }
}

ProjPoint ProjectiveSpace::point(std::size_t index) const {
  auto c = coords(index);
  return ProjPoint{Vec(c.begin(), c.end())};
}

Hyperplane ProjectiveSpace::hyperplane(std::size_t index) const {
  auto c = coords(index);
  return Hyperplane{Vec(c.begin(), c.end())};
}

std::size_t ProjectiveSpace::index_of_normalized(std::span<const FieldElem> v) const {
  if (v.size() != r_ + 1) throw UsageError("dimension mismatch: expected " + std::to_string(r_ + 1) + " coordinates");
  unsigned j = 0;
  while (j <= r_ && v[j].value == 0) ++j;
  if (j > r_ || v[j].value != 1) throw UsageError("vector is not normalized");
  const std::uint64_t q = field_->order();
  std::uint64_t suffix = 0;
  for (unsigned i = j + 1; i <= r_; ++i) suffix = suffix * q + v[i].value;
  return static_cast<std::size_t>((qpow_[r_ - j] - 1) / (q - 1) + suffix);
}

std::size_t ProjectiveSpace::index_of(std::span<const FieldElem> v) const {
  const Vec n = normalize(*field_, v);
  return index_of_normalized(n);
}

bool ProjectiveSpace::incident(std::size_t point, std::size_t hyperplane) const {
  return dot(*field_, coords(point), coords(hyperplane)) == field_->zero();
}

std::vector<ProjPoint> enumerate_points(FieldPtr field, unsigned r, const Budget& budget) {
  const ProjectiveSpace space(std::move(field), r, budget);
  std::vector<ProjPoint> out;
  out.reserve(space.num_points());
  for (std::size_t i = 0; i < space.num_points(); ++i) out.push_back(space.point(i));
  return out;
}

std::vector<Hyperplane> enumerate_hyperplanes(FieldPtr field, unsigned r, const Budget& budget) {
  const ProjectiveSpace space(std::move(field), r, budget);
  std::vector<Hyperplane> out;
  out.reserve(space.num_hyperplanes());
  for (std::size_t i = 0; i < space.num_hyperplanes(); ++i) out.push_back(space.hyperplane(i));
  return out;
}

namespace {

// In-place reduction to RREF; returns pivot columns, rows truncated to rank.
std::vector<std::size_t> reduce(const Field& f, std::vector<Vec>& rows, std::size_t stop_at) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t width = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size() && rank < stop_at; ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][col].value == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    const FieldElem s = f.inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = f.mul(x, s);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col].value == 0) continue;
      const FieldElem c = rows[i][col];
      for (std::size_t k = col; k < width; ++k) rows[i][k] = f.sub(rows[i][k], f.mul(c, rows[rank][k]));
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

}  // namespace

SubspaceBasis span_rank(const Field& f, std::span<const Vec> vectors) {
  SubspaceBasis b;
  if (vectors.empty()) return b;
  const std::size_t width = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != width) throw UsageError("span_rank: vectors of different lengths");
  }
  b.rows.assign(vectors.begin(), vectors.end());
  b.pivots = reduce(f, b.rows, SIZE_MAX);
  return b;
}

std::size_t rank_of(const Field& f, std::span<const Vec> vectors, std::size_t stop_at) {
  std::vector<Vec> rows(vectors.begin(), vectors.end());
  return reduce(f, rows, stop_at).size();
}

std::optional<Vec> solve_combination(const Field& f, std::span<const Vec> columns,
                                     std::span<const FieldElem> target) {
  const std::size_t n = columns.size(), dim = target.size();
  for (const auto& c : columns) {
    if (c.size() != dim) throw UsageError("solve_combination: dimension mismatch");
  }
  std::vector<Vec> rows(dim, Vec(n + 1));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = columns[j][i];
    rows[i][n] = target[i];
  }
  const auto pivots = reduce(f, rows, SIZE_MAX);
  Vec x(n, f.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == n) return std::nullopt;
    x[pivots[i]] = rows[i][n];
  }
  return x;
}

void for_each_subspace(const ProjectiveSpace& space, unsigned vector_dim,
                       const std::function<void(const SubspaceBasis&)>& fn, const Budget& budget) {
  const unsigned n = space.dim() + 1;
  if (vector_dim == 0 || vector_dim > n) throw UsageError("subspace dimension out of range");
  const std::uint32_t q = space.field().order();
  const std::uint64_t total = gaussian_binomial(q, n, vector_dim);
  budget.require(total * projective_count(q, vector_dim - 1), "subspace enumeration");

  std::vector<std::size_t> piv(vector_dim);
  for (unsigned i = 0; i < vector_dim; ++i) piv[i] = i;
  SubspaceBasis b;
  b.rows.assign(vector_dim, Vec(n));
  for (;;) {
    // Free entries: row a, columns after piv[a] that are not pivots.
    std::vector<std::pair<unsigned, unsigned>> free;
    for (unsigned a = 0; a < vector_dim; ++a) {
      for (unsigned c = static_cast<unsigned>(piv[a]) + 1; c < n; ++c) {
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(a, c);
      }
    }
    for (auto& row : b.rows) std::fill(row.begin(), row.end(), FieldElem{});
    for (unsigned a = 0; a < vector_dim; ++a) b.rows[a][piv[a]] = FieldElem{1};
    b.pivots = piv;
    std::vector<std::uint32_t> digit(free.size(), 0);
    for (;;) {
      for (std::size_t k = 0; k < free.size(); ++k) b.rows[free[k].first][free[k].second] = FieldElem{digit[k]};
      fn(b);
      bool carry = true;
      for (std::size_t k = free.size(); carry && k-- > 0;) {
        if (++digit[k] < q) {
          carry = false;
        } else {
          digit[k] = 0;
        }
      }
      if (carry) break;
    }
    // Next pivot combination in lexicographic order.
    int i = static_cast<int>(vector_dim) - 1;
    while (i >= 0 && piv[i] == n - vector_dim + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++piv[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < vector_dim; ++j) piv[j] = piv[j - 1] + 1;
  }
}

std::vector<std::uint32_t> subspace_points(const ProjectiveSpace& space, const SubspaceBasis& basis) {
  const Field& f = space.field();
  const std::size_t t = basis.rank();
  const std::size_t width = space.dim() + 1;
  std::vector<std::uint32_t> out;
  if (t == 0) return out;
  out.reserve(projective_count(f.order(), static_cast<unsigned>(t - 1)));
  // Normalized coefficient vectors over the RREF rows give normalized points.
  std::vector<std::uint32_t> lam(t, 0);
  Vec v(width);
  for (std::size_t lead = t; lead-- > 0;) {
    std::fill(lam.begin(), lam.end(), 0);
    lam[lead] = 1;
    for (;;) {
      std::fill(v.begin(), v.end(), FieldElem{});
      for (std::size_t a = lead; a < t; ++a) {
        if (lam[a] == 0) continue;
        const FieldElem c{lam[a]};
        for (std::size_t k = 0; k < width; ++k) v[k] = f.add(v[k], f.mul(c, basis.rows[a][k]));
      }
      out.push_back(static_cast<std::uint32_t>(space.index_of_normalized(v)));
      std::size_t k = t;
      bool done = true;
      while (k-- > lead + 1) {
        if (++lam[k] < f.order()) {
          done = false;
          break;
        }
        lam[k] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

void for_each_line(const ProjectiveSpace& space,
                   const std::function<void(const Line&, std::span<const std::uint32_t>)>& fn,
                   const Budget& budget) {
  for_each_subspace(
      space, 2,
      [&](const SubspaceBasis& b) {
        auto pts = subspace_points(space, b);
        std::uint32_t lo = UINT32_MAX, hi = UINT32_MAX;
        for (auto p : pts) {
          if (p < lo) {
            hi = lo;
            lo = p;
          } else if (p < hi) {
            hi = p;
          }
        }
        fn(Line{lo, hi}, pts);
      },
      budget);
}

std::vector<Line> enumerate_lines(const ProjectiveSpace& space, const Budget& budget) {
  std::vector<Line> out;
  for_each_line(space, [&](const Line& l, std::span<const std::uint32_t>) { out.push_back(l); }, budget);
  return out;
}

ProjPoint veronese2(const Field& f, const ProjPoint& p) {
  const auto& x = p.coords;
  Vec img;
  img.reserve(x.size() * (x.size() + 1) / 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i; j < x.size(); ++j) img.push_back(f.mul(x[i], x[j]));
  }
  return ProjPoint{normalize(f, img)};
}

}  // namespace qh
