#include <atomic>
#include <bit>
#include <cstdlib>
#include <string>

#include "internal.hpp"
#include "qhcodes/error.hpp"

namespace qh::kernels {

namespace {

std::atomic<int> g_forced{-1};

Isa best_supported() {
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
  return Isa::Portable;
}

Isa from_env() {
  const char* env = std::getenv("QHCODES_KERNEL");
  if (env == nullptr) return best_supported();
  const std::string v(env);
  if (v == "scalar") return Isa::Scalar;
  if (v == "portable") return Isa::Portable;
  if (v == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
  return best_supported();
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Portable: return "portable";
    case Isa::Avx2: return "avx2";
  }
  return "?";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
    case Isa::Portable:
      return true;
    case Isa::Avx2:
#if defined(QHCODES_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  static const Isa env = from_env();
  return env;
}

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw UsageError("kernel variant not supported on this CPU: " + std::string(isa_name(isa)));
  g_forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() { g_forced.store(-1, std::memory_order_relaxed); }

// --- bitsets -----------------------------------------------------------------

namespace detail {

std::uint64_t popcount_portable(const std::uint64_t* a, std::size_t n) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::uint64_t>(std::popcount(a[i]));
  return c;
}

std::uint64_t and_count_portable(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return c;
}

bool is_subset_portable(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

}  // namespace detail

std::uint64_t popcount(std::span<const std::uint64_t> words, Isa isa) {
#if defined(QHCODES_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::popcount_avx2(words.data(), words.size());
#endif
  (void)isa;
  return detail::popcount_portable(words.data(), words.size());
}

std::uint64_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, Isa isa) {
  if (a.size() != b.size()) throw UsageError("and_count: bitset sizes differ");
#if defined(QHCODES_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::and_count_avx2(a.data(), b.data(), a.size());
#endif
  (void)isa;
  return detail::and_count_portable(a.data(), b.data(), a.size());
}

bool is_subset(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, Isa isa) {
  if (a.size() != b.size()) throw UsageError("is_subset: bitset sizes differ");
#if defined(QHCODES_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::is_subset_avx2(a.data(), b.data(), a.size());
#endif
  (void)isa;
  return detail::is_subset_portable(a.data(), b.data(), a.size());
}

// --- sections ------------------------------------------------------------------

std::uint64_t section_reference(const Field& f, unsigned width, std::span<const FieldElem> coords,
                                std::span<const FieldElem> h, std::span<std::uint64_t> out) {
  if (h.size() != width) throw UsageError("hyperplane has the wrong dimension");
  const std::size_t n = coords.size() / width;
  if (out.size() * 64 < n) throw UsageError("section output too small");
  std::fill(out.begin(), out.end(), 0);
  std::uint64_t count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    FieldElem acc = f.zero();
    for (unsigned i = 0; i < width; ++i) acc = f.add(acc, f.mul(h[i], coords[t * width + i]));
    if (acc.value == 0) {
      out[t / 64] |= std::uint64_t{1} << (t % 64);
      ++count;
    }
  }
  return count;
}

DigitPlanes::DigitPlanes(FieldPtr field, unsigned r, std::span<const FieldElem> coords)
    : field_(std::move(field)), width_(r + 1), isa_(active_isa()) {
  if (coords.size() % width_ != 0) throw UsageError("coordinate array is not a multiple of r + 1");
  n_ = coords.size() / width_;
  words_ = ((n_ + 255) / 256) * 4;
  bytes_ = words_ * 64;
  coords_.assign(coords.begin(), coords.end());
  const std::uint32_t p = field_->characteristic(), m = field_->degree();
  valid_.assign(words_, 0);
  for (std::size_t t = 0; t < n_; ++t) valid_[t / 64] |= std::uint64_t{1} << (t % 64);

  if (p == 2) {
    bits_.assign(std::size_t{width_} * m * words_, 0);
  } else if (p < 256) {
    digits_.assign(std::size_t{width_} * m * bytes_, 0);
  }
  for (std::size_t t = 0; t < n_; ++t) {
    for (unsigned i = 0; i < width_; ++i) {
      std::uint32_t v = coords_[t * width_ + i].value;
      for (std::uint32_t j = 0; j < m; ++j, v /= p) {
        const std::size_t plane = std::size_t{i} * m + j;
        const std::uint32_t d = v % p;
        if (p == 2) {
          if (d) bits_[plane * words_ + t / 64] |= std::uint64_t{1} << (t % 64);
        } else if (p < 256) {
          digits_[plane * bytes_ + t] = static_cast<std::uint8_t>(d);
        }
      }
    }
  }
}

DigitPlanes::Functional DigitPlanes::functional(std::span<const FieldElem> h) const {
  const Field& f = *field_;
  const std::uint32_t p = f.characteristic(), m = f.degree();
  Functional fn;
  fn.planes.resize(m);
  fn.coefs.resize(m);
  std::uint32_t basis = 1;  // encoding of x^j
  std::vector<FieldElem> powers(m);
  for (std::uint32_t j = 0; j < m; ++j, basis *= p) powers[j] = FieldElem{basis};
  for (unsigned i = 0; i < width_; ++i) {
    if (h[i].value == 0) continue;
    for (std::uint32_t j = 0; j < m; ++j) {
      std::uint32_t v = f.mul(h[i], powers[j]).value;
      for (std::uint32_t d = 0; d < m; ++d, v /= p) {
        const std::uint32_t c = v % p;
        if (c == 0) continue;
        fn.planes[d].push_back(i * m + j);
        fn.coefs[d].push_back(static_cast<std::uint8_t>(c));
      }
    }
  }
  return fn;
}

DigitPlanes::Layout DigitPlanes::layout() const {
  return Layout{field_->characteristic(), field_->degree(), width_, n_, words_, bytes_,
                bits_.data(), digits_.data(), valid_.data()};
}

std::uint64_t DigitPlanes::section(std::span<const FieldElem> h, std::span<std::uint64_t> out, Isa isa) const {
  if (h.size() != width_) throw UsageError("hyperplane has the wrong dimension");
  if (out.size() != words_) throw UsageError("section output has the wrong size");
  const std::uint32_t p = field_->characteristic();
  if (isa == Isa::Scalar || (p != 2 && p >= 256)) return section_reference(*field_, width_, coords_, h, out);
  const Functional fn = functional(h);
  const Layout l = layout();
#if defined(QHCODES_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::section_avx2(l, fn, out.data());
#endif
  return detail::section_portable(l, fn, out.data());
}

namespace detail {

std::uint64_t section_portable(const Layout& l, const Functional& fn, std::uint64_t* out) {
  std::uint64_t count = 0;
  const std::size_t outputs = fn.planes.size();
  if (l.p == 2) {
    for (std::size_t w = 0; w < l.words; ++w) {
      std::uint64_t nz = 0;
      for (std::size_t d = 0; d < outputs; ++d) {
        std::uint64_t acc = 0;
        for (std::uint32_t k : fn.planes[d]) acc ^= l.bits[k * l.words + w];
        nz |= acc;
      }
      out[w] = ~nz & l.valid[w];
      count += static_cast<std::uint64_t>(std::popcount(out[w]));
    }
    return count;
  }
  std::uint32_t acc[64];
  for (std::size_t w = 0; w < l.words; ++w) {
    std::uint64_t nz = 0;
    const std::size_t base = w * 64;
    for (std::size_t d = 0; d < outputs; ++d) {
      std::fill(std::begin(acc), std::end(acc), 0u);
      for (std::size_t k = 0; k < fn.planes[d].size(); ++k) {
        const std::uint8_t* src = l.digits + fn.planes[d][k] * l.bytes + base;
        const std::uint32_t c = fn.coefs[d][k];
        for (int t = 0; t < 64; ++t) acc[t] += c * src[t];
      }
      for (int t = 0; t < 64; ++t) {
        if (acc[t] % l.p) nz |= std::uint64_t{1} << t;
      }
    }
    out[w] = ~nz & l.valid[w];
    count += static_cast<std::uint64_t>(std::popcount(out[w]));
  }
  return count;
}

}  // namespace detail

}  // namespace qh::kernels
