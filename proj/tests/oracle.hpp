#pragma once

// Test-side oracles. Nothing here calls into the library's arithmetic: the
// field is schoolbook polynomial arithmetic modulo an explicit modulus, and
// projective objects are enumerated by brute force.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace oracle {

struct NaiveField {
  std::uint32_t p;
  std::vector<std::uint32_t> modulus;  // monic, low to high

  std::uint32_t m() const { return static_cast<std::uint32_t>(modulus.size() - 1); }
  std::uint32_t order() const {
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < m(); ++i) q *= p;
    return q;
  }
  std::vector<std::uint32_t> digits(std::uint32_t x) const {
    std::vector<std::uint32_t> d(m());
    for (auto& c : d) {
      c = x % p;
      x /= p;
    }
    return d;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& d) const {
    std::uint32_t x = 0;
    for (std::size_t i = d.size(); i-- > 0;) x = x * p + d[i];
    return x;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    auto x = digits(a), y = digits(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % p;
    return encode(x);
  }
  std::uint32_t neg(std::uint32_t a) const {
    auto x = digits(a);
    for (auto& c : x) c = (p - c) % p;
    return encode(x);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const auto x = digits(a), y = digits(b);
    std::vector<std::uint64_t> prod(2 * m(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    for (std::size_t k = prod.size(); k-- > m();) {
      const auto c = prod[k];
      if (!c) continue;
      for (std::size_t i = 0; i <= m(); ++i) {
        prod[k - m() + i] = (prod[k - m() + i] + (p - c) * modulus[i]) % p;
      }
    }
    std::vector<std::uint32_t> d(m());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<std::uint32_t>(prod[i]);
    return encode(d);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e--) r = mul(r, a);
    return r;
  }
};

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// All normalized points of PG(r, |F|), ascending in lexicographic order with
// coordinate 0 most significant.
inline std::vector<std::vector<std::uint32_t>> points(const NaiveField& f, unsigned r) {
  std::vector<std::vector<std::uint32_t>> out;
  const std::uint32_t q = f.order();
  std::vector<std::uint32_t> v(r + 1, 0);
  const std::uint64_t total = ipow(q, r + 1);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (unsigned i = r + 1; i-- > 0;) {
      v[i] = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] == 1) out.push_back(v);
  }
  return out;
}

inline std::uint32_t dot(const NaiveField& f, const std::vector<std::uint32_t>& a,
                         const std::vector<std::uint32_t>& b) {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

}  // namespace oracle
