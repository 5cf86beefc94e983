#include "qhcodes/code.hpp"

#include <algorithm>
#include <numeric>

#include "qhcodes/error.hpp"
#include "qhcodes/parallel.hpp"

namespace qh {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

constexpr std::uint64_t kMaxBruteForceWords = std::uint64_t{1} << 24;

}  // namespace

Vec LinearCode::column(std::size_t col) const {
  Vec out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = at(i, col);
  return out;
}

LinearCode code_from_variety(const Variety& v, std::optional<std::uint32_t> p0) {
  if (v.size() == 0) throw PreconditionError("the empty point set does not define a code");
  const auto& space = v.space();
  const std::uint32_t first = p0.value_or(v.points().front());
  if (!v.contains(first)) throw UsageError("P0 = " + std::to_string(first) + " is not a point of " + v.label());

  std::vector<Vec> cols;
  cols.reserve(v.size());
  for (auto p : v.points()) cols.emplace_back(space.coords(p).begin(), space.coords(p).end());
  const std::size_t rank = rank_of(v.field(), cols, space.dim() + 1);
  if (rank < space.dim() + 1) {
    throw PreconditionError(v.label() + " spans a subspace of rank " + std::to_string(rank) + " < " +
                            std::to_string(space.dim() + 1) + "; it lies in a hyperplane");
  }

  LinearCode c;
  c.field = space.field_ptr();
  c.n = v.size();
  c.k = space.dim() + 1;
  c.source = v.label();
  c.columns.push_back(first);
  for (auto p : v.points()) {
    if (p != first) c.columns.push_back(p);
  }
  c.generator.resize(c.k * c.n);
  for (std::size_t j = 0; j < c.n; ++j) {
    auto x = space.coords(c.columns[j]);
    for (std::size_t i = 0; i < c.k; ++i) c.generator[i * c.n + j] = x[i];
  }
  return c;
}

std::uint64_t WeightDistribution::total() const {
  std::uint64_t t = 0;
  for (const auto& [w, a] : counts) t += a;
  return t;
}

std::vector<std::uint64_t> WeightDistribution::nonzero_weights() const {
  std::vector<std::uint64_t> out;
  for (const auto& [w, a] : counts) {
    if (w != 0 && a != 0) out.push_back(w);
  }
  return out;
}

std::uint64_t WeightDistribution::min_nonzero() const {
  auto w = nonzero_weights();
  return w.empty() ? 0 : w.front();
}

std::uint64_t WeightDistribution::max_nonzero() const {
  auto w = nonzero_weights();
  return w.empty() ? 0 : w.back();
}

WeightDistribution weights_via_hyperplanes(const LinearCode& c, const Variety& v, const Budget& budget) {
  if (c.k != v.dim() + 1 || c.n != v.size()) {
    throw UsageError("weights_via_hyperplanes needs the full code of the variety (k = r + 1)");
  }
  WeightDistribution w;
  w.n = c.n;
  w.counts[0] = 1;
  const std::uint64_t mult = c.field->order() - 1;
  for (auto s : hyperplane_section_sizes(v, budget)) w.counts[c.n - s] += mult;
  return w;
}

WeightDistribution weights_bruteforce(const LinearCode& c, const Budget& budget) {
  const Field& f = *c.field;
  const std::uint32_t qf = f.order();
  const std::uint64_t words = ipow(qf, static_cast<unsigned>(c.k));
  if (words > kMaxBruteForceWords) {
    throw BudgetExceeded("brute-force weight enumeration is capped at 2^24 codewords, the code has " +
                         std::to_string(words));
  }
  budget.require(words * c.n, "brute-force weight enumeration");

  // scaled[i][lambda] = lambda * row i.
  std::vector<std::vector<Vec>> scaled(c.k, std::vector<Vec>(qf, Vec(c.n)));
  for (std::size_t i = 0; i < c.k; ++i) {
    for (std::uint32_t l = 0; l < qf; ++l) {
      for (std::size_t j = 0; j < c.n; ++j) scaled[i][l][j] = f.mul(FieldElem{l}, c.at(i, j));
    }
  }

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(parallelism(), qf));
  std::vector<std::vector<std::uint64_t>> hist(workers, std::vector<std::uint64_t>(c.n + 1, 0));
  parallel_for(qf, [&](std::size_t begin, std::size_t end, std::size_t worker) {
    auto& h = hist[worker];
    std::vector<Vec> partial(c.k + 1, Vec(c.n));
    // Depth-first over u_1..u_{k-1} once u_0 is fixed.
    auto descend = [&](auto&& self, std::size_t level) -> void {
      if (level == c.k) {
        std::size_t wt = 0;
        for (auto x : partial[level]) wt += x.value != 0;
        ++h[wt];
        return;
      }
      for (std::uint32_t l = 0; l < qf; ++l) {
        const Vec& add = scaled[level][l];
        for (std::size_t j = 0; j < c.n; ++j) partial[level + 1][j] = f.add(partial[level][j], add[j]);
        self(self, level + 1);
      }
    };
    for (std::size_t u0 = begin; u0 < end; ++u0) {
      partial[1] = scaled[0][u0];
      descend(descend, 1);
    }
  });

  WeightDistribution w;
  w.n = c.n;
  for (std::size_t wt = 0; wt <= c.n; ++wt) {
    std::uint64_t a = 0;
    for (const auto& h : hist) a += h[wt];
    if (a) w.counts[wt] = a;
  }
  return w;
}

std::uint64_t higher_weight(const Variety& v, unsigned level, const Budget& budget) {
  const unsigned r = v.dim();
  if (level < 1 || level > r) throw UsageError("higher weight level must lie in [1, r]");
  std::uint64_t best = 0;
  if (level == 1) {
    for (auto s : hyperplane_section_sizes(v, budget)) best = std::max<std::uint64_t>(best, s);
  } else if (level == r - 1) {
    best = line_spectrum(v, budget).counts.rbegin()->first;
  } else if (level == r) {
    best = v.size() > 0 ? 1 : 0;
  } else {
    const auto& space = v.space();
    const unsigned vdim = r + 1 - level;
    budget.require(gaussian_binomial(space.field().order(), r + 1, vdim) *
                       projective_count(space.field().order(), vdim - 1),
                   "subspaces of codimension " + std::to_string(level));
    for_each_subspace(
        space, vdim,
        [&](const SubspaceBasis& b) {
          std::uint64_t c = 0;
          for (auto p : subspace_points(space, b)) c += v.contains(p);
          best = std::max(best, c);
        },
        budget);
  }
  return v.size() - best;
}

std::uint64_t predicted_higher_weight_B(std::uint32_t q, unsigned r, unsigned level) {
  if (r < 3) throw ParameterError("r>=3", "closed forms need r >= 3");
  const std::uint64_t q2 = std::uint64_t{q} * q;
  const std::uint64_t top = ipow(q, 2 * r - 1);
  const std::uint64_t c1 = (ipow(q, 2 * (r - 2)) - 1) / (q2 - 1);
  if (level == 1) {
    if (q % 2 == 0) return top - ipow(q, 2 * r - 3);
    const std::uint64_t base = top - ipow(q, 2 * r - 3) + ipow(q, 2 * (r - 2));
    return r % 2 == 1 ? base : base - ipow(q, r - 2);
  }
  if (level == r - 1) {
    if (q % 2 == 0) {
      // q^{2r-1} + q^{2(r-2)} + ... + q^4
      std::uint64_t s = top;
      for (unsigned e = 4; e <= 2 * (r - 2); e += 2) s += ipow(q, e);
      return s;
    }
    const std::uint64_t base = top + q2 * c1 - q2;
    return r % 2 == 1 ? base + ipow(q, r - 1) : base;
  }
  throw UsageError("closed forms exist only for d_1 and d_{r-1}");
}

std::uint64_t divisibility(const WeightDistribution& w) {
  std::uint64_t g = 0;
  for (auto x : w.nonzero_weights()) g = std::gcd(g, x);
  return g;
}

bool ab_bound_check(const WeightDistribution& w, std::uint32_t field_order) {
  const std::uint64_t lo = w.min_nonzero(), hi = w.max_nonzero();
  if (hi == 0) return false;
  return static_cast<unsigned __int128>(lo) * field_order > static_cast<unsigned __int128>(hi) * (field_order - 1);
}

MinimalityReport cutting_blocking_check(const Variety& v, const Budget& budget) {
  const auto& space = v.space();
  const std::size_t nh = space.num_hyperplanes();
  const unsigned r = v.dim();
  budget.require(std::uint64_t{nh} * v.size() * (r + 1), "cutting-blocking check of " + v.label());
  const auto& planes = v.planes();
  const auto coords = planes.coords();

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(parallelism(), nh));
  std::vector<std::optional<std::pair<std::uint32_t, std::size_t>>> first_fail(workers);
  parallel_for(nh, [&](std::size_t begin, std::size_t end, std::size_t worker) {
    std::vector<std::uint64_t> bits(planes.words());
    std::vector<Vec> rows;
    for (std::size_t h = begin; h < end; ++h) {
      planes.section(space.coords(h), bits);
      rows.clear();
      for (std::size_t w = 0; w < bits.size(); ++w) {
        for (std::uint64_t x = bits[w]; x; x &= x - 1) {
          const std::size_t t = w * 64 + static_cast<std::size_t>(__builtin_ctzll(x));
          rows.emplace_back(coords.begin() + t * (r + 1), coords.begin() + (t + 1) * (r + 1));
        }
      }
      const std::size_t rank = rank_of(v.field(), rows, r);
      if (rank < r) {
        first_fail[worker] = std::pair{static_cast<std::uint32_t>(h), rank};
        return;
      }
    }
  });

  MinimalityReport rep;
  rep.method = "cutting-blocking";
  for (const auto& ff : first_fail) {
    if (!ff) continue;
    rep.minimal = false;
    rep.witness_hyperplane = ff->first;
    rep.witness_rank = ff->second;
    break;
  }
  return rep;
}

MinimalityReport minimal_codewords_bruteforce(const Variety& v, const Budget& budget) {
  const std::size_t nh = v.space().num_hyperplanes();
  budget.require(std::uint64_t{nh} * nh, "pairwise section containment of " + v.label());
  const auto sections = hyperplane_sections(v, budget);
  std::vector<std::uint64_t> size(nh);
  for (std::size_t h = 0; h < nh; ++h) size[h] = sections[h].count();
  std::vector<std::uint32_t> order(nh);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return size[a] < size[b]; });
  std::vector<std::size_t> pos(nh);
  for (std::size_t i = 0; i < nh; ++i) pos[order[i]] = i;

  // covering[h] = first hyperplane (in size order) whose section contains that of h.
  std::vector<std::int64_t> covering(nh, -1);
  parallel_for(nh, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t h = begin; h < end; ++h) {
      // Sections of equal size precede h in the order too; start at the first one.
      std::size_t i = pos[h];
      while (i > 0 && size[order[i - 1]] == size[h]) --i;
      for (; i < nh; ++i) {
        const std::uint32_t g = order[i];
        if (g == h) continue;
        if (sections[h].is_subset_of(sections[g])) {
          covering[h] = g;
          break;
        }
      }
    }
  });

  MinimalityReport rep;
  rep.method = "brute-force";
  const std::uint64_t mult = v.field().order() - 1;
  for (std::size_t h = 0; h < nh; ++h) {
    if (covering[h] < 0) continue;
    if (rep.minimal) rep.witness_pair = std::pair{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(covering[h])};
    rep.minimal = false;
    rep.covered_hyperplanes.push_back(static_cast<std::uint32_t>(h));
    rep.non_minimal_words += mult;
    rep.non_minimal_by_weight[v.size() - size[h]] += mult;
  }
  return rep;
}

}  // namespace qh
