// AVX2 variants. This translation unit is compiled with -mavx2 -mpopcnt and
// only entered after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "internal.hpp"

namespace qh::kernels::detail {

namespace {

// Popcount of the four 64-bit lanes, nibble lookup.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::uint64_t hsum_epi64(__m256i v) {
  return static_cast<std::uint64_t>(_mm256_extract_epi64(v, 0)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 1)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 2)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 3));
}

std::uint64_t section_char2(const Layout& l, const Functional& fn, std::uint64_t* out) {
  __m256i total = _mm256_setzero_si256();
  const std::size_t outputs = fn.planes.size();
  for (std::size_t w = 0; w < l.words; w += 4) {
    __m256i nz = _mm256_setzero_si256();
    for (std::size_t d = 0; d < outputs; ++d) {
      __m256i acc = _mm256_setzero_si256();
      for (std::uint32_t k : fn.planes[d]) {
        acc = _mm256_xor_si256(
            acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(l.bits + k * l.words + w)));
      }
      nz = _mm256_or_si256(nz, acc);
    }
    const __m256i valid = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(l.valid + w));
    const __m256i hit = _mm256_andnot_si256(nz, valid);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + w), hit);
    total = _mm256_add_epi64(total, popcount_epi64(hit));
  }
  return hsum_epi64(total);
}

// Odd p <= 7: digits are bytes; products and running sums stay below 16 and
// are reduced with 16-entry shuffles.
std::uint64_t section_small_odd(const Layout& l, const Functional& fn, std::uint64_t* out) {
  alignas(16) std::uint8_t modtab[16];
  for (int i = 0; i < 16; ++i) modtab[i] = static_cast<std::uint8_t>(i % l.p);
  const __m256i mod = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(modtab)));
  __m256i multab[8];
  for (std::uint32_t c = 0; c < l.p; ++c) {
    alignas(16) std::uint8_t t[16];
    for (std::uint32_t i = 0; i < 16; ++i) t[i] = static_cast<std::uint8_t>((i * c) % l.p);
    multab[c] = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(t)));
  }
  const std::size_t outputs = fn.planes.size();
  const __m256i zero = _mm256_setzero_si256();
  std::uint64_t count = 0;
  for (std::size_t w = 0; w < l.words; ++w) {
    std::uint64_t word = 0;
    for (std::size_t half = 0; half < 2; ++half) {
      const std::size_t base = w * 64 + half * 32;
      __m256i nz = zero;
      for (std::size_t d = 0; d < outputs; ++d) {
        __m256i acc = zero;
        for (std::size_t k = 0; k < fn.planes[d].size(); ++k) {
          const __m256i v =
              _mm256_loadu_si256(reinterpret_cast<const __m256i*>(l.digits + fn.planes[d][k] * l.bytes + base));
          const __m256i prod = _mm256_shuffle_epi8(multab[fn.coefs[d][k]], v);
          acc = _mm256_shuffle_epi8(mod, _mm256_add_epi8(acc, prod));
        }
        nz = _mm256_or_si256(nz, acc);
      }
      const auto mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(nz, zero)));
      word |= std::uint64_t{mask} << (half * 32);
    }
    out[w] = word & l.valid[w];
    count += static_cast<std::uint64_t>(_mm_popcnt_u64(out[w]));
  }
  return count;
}

}  // namespace

std::uint64_t section_avx2(const Layout& l, const Functional& fn, std::uint64_t* out) {
  if (l.p == 2) return section_char2(l, fn, out);
  if (l.p <= 7) return section_small_odd(l, fn, out);
  return section_portable(l, fn, out);
}

std::uint64_t popcount_avx2(const std::uint64_t* a, std::size_t n) {
  __m256i total = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    total = _mm256_add_epi64(total, popcount_epi64(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i))));
  }
  std::uint64_t c = hsum_epi64(total);
  for (; i < n; ++i) c += static_cast<std::uint64_t>(_mm_popcnt_u64(a[i]));
  return c;
}

std::uint64_t and_count_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  __m256i total = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)),
                                       _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)));
    total = _mm256_add_epi64(total, popcount_epi64(x));
  }
  std::uint64_t c = hsum_epi64(total);
  for (; i < n; ++i) c += static_cast<std::uint64_t>(_mm_popcnt_u64(a[i] & b[i]));
  return c;
}

bool is_subset_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // testc(vb, va) is 1 iff (~vb & va) == 0
    if (!_mm256_testc_si256(vb, va)) return false;
  }
  for (; i < n; ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

}  // namespace qh::kernels::detail
