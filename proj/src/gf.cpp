#include "qhcodes/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qhcodes/error.hpp"

namespace qh {

namespace {

constexpr std::uint32_t kNoLog = 0xffffffffu;

using Poly = std::vector<std::uint64_t>;  // coefficients over GF(p), low to high

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t modpow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a * b reduced modulo the monic f; inputs have degree < deg f.
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t d = prod.size(); d-- > m;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    for (std::size_t k = 0; k < m; ++k) prod[d - m + k] = (prod[d - m + k] + (p - c) * f[k]) % p;
    prod[d] = 0;
  }
  prod.resize(m, 0);
  return prod;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  Poly r(m, 0);
  r[0] = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly x_mod(const Poly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  Poly x(m, 0);
  if (m == 1) {
    x[0] = (p - f[0] % p) % p;
  } else {
    x[1] = 1;
  }
  return x;
}

bool is_one(const Poly& a) {
  if (a.empty() || a[0] != 1) return false;
  return std::all_of(a.begin() + 1, a.end(), [](std::uint64_t c) { return c == 0; });
}

// Generic remainder and gcd, used only by the irreducibility test.
Poly poly_rem(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = modpow(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] = (a[shift + k] + (p - c) * b[k]) % p;
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_primitive_poly(const Poly& f, std::uint64_t p) {
  const std::uint32_t m = static_cast<std::uint32_t>(f.size() - 1);
  const std::uint64_t n = ipow(p, m) - 1;
  const Poly x = x_mod(f, p);
  if (!is_one(powmod(x, n, f, p))) return false;
  for (std::uint64_t l : prime_factors(n)) {
    if (is_one(powmod(x, n / l, f, p))) return false;
  }
  return true;
}

// Evaluates the polynomial `g` (over GF(p)) at the residue `y` modulo f.
Poly eval_at(const std::vector<std::uint32_t>& g, const Poly& y, const Poly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  Poly acc(m, 0);
  for (std::size_t i = g.size(); i-- > 0;) {
    acc = mulmod(acc, y, f, p);
    acc[0] = (acc[0] + g[i]) % p;
  }
  return acc;
}

std::string poly_to_string(const std::vector<std::uint32_t>& f) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (f[i] != 1 || i == 0) os << f[i];
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  return first ? "0" : os.str();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) throw UsageError("not a prime power: " + std::to_string(q));
  const auto factors = prime_factors(q);
  if (factors.size() != 1) throw UsageError("not a prime power: " + std::to_string(q));
  std::uint32_t e = 0;
  for (std::uint64_t t = q; t > 1; t /= factors[0]) ++e;
  return {static_cast<std::uint32_t>(factors[0]), e};
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly) {
  if (poly.size() < 2 || poly.back() != 1) return false;
  const std::uint32_t m = static_cast<std::uint32_t>(poly.size() - 1);
  if (m == 1) return true;
  Poly f(poly.begin(), poly.end());
  for (auto& c : f) c %= p;
  const Poly x = x_mod(f, p);
  // x^{p^k} mod f for k = 0..m
  std::vector<Poly> frob{x};
  for (std::uint32_t k = 1; k <= m; ++k) frob.push_back(powmod(frob.back(), p, f, p));
  if (frob[m] != x) return false;
  for (std::uint64_t l : prime_factors(m)) {
    Poly d = frob[m / l];
    d.resize(m, 0);
    d[1] = (d[1] + p - 1) % p;  // minus x
    trim(d);
    if (d.empty()) return false;
    const Poly g = poly_gcd(f, d, p);
    if (g.size() != 1) return false;
  }
  return true;
}

const std::vector<std::uint32_t>& conway_polynomial(std::uint32_t p, std::uint32_t m) {
  static std::recursive_mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> memo;

  if (!is_prime(p)) throw UsageError("characteristic is not prime: " + std::to_string(p));
  if (m == 0) throw UsageError("extension degree must be positive");
  if (ipow(p, m) > kMaxFieldOrder) {
    throw UsageError("no Conway polynomial available for p^m = " + std::to_string(p) + "^" +
                     std::to_string(m) + " (limit " + std::to_string(kMaxFieldOrder) + ")");
  }

  std::lock_guard lock(mu);
  if (auto it = memo.find({p, m}); it != memo.end()) return it->second;

  std::vector<std::uint32_t> divisors;
  for (std::uint32_t d = 1; d < m; ++d) {
    if (m % d == 0) divisors.push_back(d);
  }
  for (std::uint32_t d : divisors) conway_polynomial(p, d);

  const std::uint64_t order = ipow(p, m);
  // b_i = (-1)^{m-i} a_i; candidates are ordered lexicographically on
  // (b_{m-1}, ..., b_0).
  std::vector<std::uint32_t> b(m, 0);
  for (std::uint64_t count = 0; count < order; ++count) {
    std::uint64_t t = count;
    for (std::uint32_t i = 0; i < m; ++i) {
      b[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    Poly f(m + 1);
    for (std::uint32_t i = 0; i < m; ++i) f[i] = ((m - i) % 2 == 0) ? b[i] : (p - b[i]) % p;
    f[m] = 1;
    if (f[0] == 0) continue;
    if (!is_primitive_poly(f, p)) continue;
    bool compatible = true;
    for (std::uint32_t d : divisors) {
      const std::uint64_t e = (order - 1) / (ipow(p, d) - 1);
      const Poly y = powmod(x_mod(f, p), e, f, p);
      const Poly v = eval_at(memo.at({p, d}), y, f, p);
      if (!std::all_of(v.begin(), v.end(), [](std::uint64_t c) { return c == 0; })) {
        compatible = false;
        break;
      }
    }
    if (!compatible) continue;
    std::vector<std::uint32_t> out(f.begin(), f.end());
    return memo.emplace(std::pair{p, m}, std::move(out)).first->second;
  }
  throw UsageError("Conway polynomial search failed for " + std::to_string(p) + "^" +
                   std::to_string(m));
}

// ---------------------------------------------------------------------------

std::shared_ptr<const Field> Field::make(std::uint32_t p, std::uint32_t m) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const Field>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({p, m}); it != cache.end()) return it->second;
  }
  auto modulus = conway_polynomial(p, m);
  std::shared_ptr<const Field> f(new Field(p, std::move(modulus), true));
  std::lock_guard lock(mu);
  return cache.emplace(std::pair{p, m}, std::move(f)).first->second;
}

std::shared_ptr<const Field> Field::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw UsageError("characteristic is not prime: " + std::to_string(p));
  if (modulus.size() < 2) throw UsageError("modulus must have degree >= 1");
  const std::uint32_t m = static_cast<std::uint32_t>(modulus.size() - 1);
  if (ipow(p, m) > kMaxTableOrder) {
    throw UsageError("custom moduli are supported up to order " + std::to_string(kMaxTableOrder));
  }
  for (auto c : modulus) {
    if (c >= p) throw UsageError("modulus coefficient out of range");
  }
  if (modulus.back() != 1) throw UsageError("modulus must be monic");
  if (!is_irreducible(p, modulus)) {
    throw UsageError("modulus " + poly_to_string(modulus) + " is reducible over GF(" +
                     std::to_string(p) + ")");
  }
  return std::shared_ptr<const Field>(new Field(p, std::move(modulus), false));
}

std::shared_ptr<const Field> Field::make_quadratic(std::uint32_t q) {
  const auto [p, e] = prime_power(q);
  return make(p, 2 * e);
}

Field::Field(std::uint32_t p, std::vector<std::uint32_t> modulus, bool modulus_is_primitive)
    : p_(p),
      m_(static_cast<std::uint32_t>(modulus.size() - 1)),
      order_(static_cast<std::uint32_t>(ipow(p, static_cast<std::uint32_t>(modulus.size() - 1)))),
      modulus_(std::move(modulus)) {
  if (modulus_is_primitive) {
    // x is a root of the modulus; for m = 1 that residue is the constant -a_0.
    primitive_ = FieldElem{m_ == 1 ? (p_ - modulus_[0]) % p_ : p_};
  } else {
    const std::uint64_t n = order_ - 1;
    const auto factors = prime_factors(n);
    for (std::uint32_t g = 1; g < order_; ++g) {
      const FieldElem cand{g};
      bool ok = pow(cand, n) == one();
      for (auto l : factors) ok = ok && pow(cand, n / l) != one();
      if (ok) {
        primitive_ = cand;
        break;
      }
    }
  }
  if (order_ <= kMaxTableOrder) build_tables();
  if (m_ % 2 == 0) build_subfield();
}

void Field::build_tables() {
  const std::uint32_t n = order_ - 1;
  std::vector<std::uint32_t> exp(n), log(order_, kNoLog);
  FieldElem cur = one();
  for (std::uint32_t k = 0; k < n; ++k) {
    if (log[cur.value] != kNoLog) throw UsageError("element " + std::to_string(primitive_.value) + " is not primitive");
    exp[k] = cur.value;
    log[cur.value] = k;
    cur = poly_mul(cur, primitive_);
  }
  std::vector<std::uint32_t> zech(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    const FieldElem s = digit_add(one(), FieldElem{exp[k]}, false);
    zech[k] = s.value == 0 ? kNoLog : log[s.value];
  }
  exp_ = std::move(exp);
  log_ = std::move(log);
  zech_ = std::move(zech);
}

void Field::build_subfield() {
  const std::uint32_t q = subfield_order();
  subfield_ = make(p_, m_ / 2);
  subfield_elems_.push_back(zero());
  for (std::uint32_t k = 0; k + 1 < q; ++k) subfield_elems_.push_back(pow(primitive_, std::uint64_t{k} * (q + 1)));
  std::sort(subfield_elems_.begin(), subfield_elems_.end());

  // Image of the subfield's primitive element: a root of its modulus.
  const auto& sub_mod = subfield_->modulus();
  auto is_root = [&](FieldElem y) {
    FieldElem acc = zero();
    for (std::size_t i = sub_mod.size(); i-- > 0;) acc = add(mul(acc, y), from_int(sub_mod[i]));
    return acc == zero();
  };
  FieldElem rho = pow(primitive_, q + 1);
  if (!is_root(rho)) {
    auto it = std::find_if(subfield_elems_.begin(), subfield_elems_.end(), is_root);
    if (it == subfield_elems_.end()) throw UsageError("subfield embedding not found");
    rho = *it;
  }
  subfield_root_image_ = rho;
  to_sub_.assign(order_, kNoLog);
  to_sub_[0] = 0;
  FieldElem img = one();
  FieldElem pre = subfield_->one();
  for (std::uint32_t k = 0; k + 1 < q; ++k) {
    to_sub_[img.value] = pre.value;
    img = mul(img, rho);
    pre = subfield_->mul(pre, subfield_->primitive());
  }
}

std::string Field::describe() const {
  return "GF(" + std::to_string(order_) + ") = GF(" + std::to_string(p_) + ")[x]/(" +
         poly_to_string(modulus_) + ")";
}

FieldElem Field::element(std::uint32_t encoding) const {
  if (encoding >= order_) {
    throw UsageError("encoding " + std::to_string(encoding) + " out of range for GF(" +
                     std::to_string(order_) + ")");
  }
  return FieldElem{encoding};
}

std::vector<std::uint32_t> Field::digits(FieldElem x) const {
  std::vector<std::uint32_t> d(m_);
  std::uint32_t v = x.value;
  for (std::uint32_t i = 0; i < m_; ++i) {
    d[i] = v % p_;
    v /= p_;
  }
  return d;
}

FieldElem Field::from_digits(std::span<const std::uint32_t> d) const {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i] % p_;
  return FieldElem{v};
}

FieldElem Field::digit_add(FieldElem a, FieldElem b, bool subtract) const {
  if (p_ == 2) return FieldElem{a.value ^ b.value};
  std::uint32_t out = 0, scale = 1, x = a.value, y = b.value;
  for (std::uint32_t i = 0; i < m_; ++i) {
    const std::uint32_t dx = x % p_, dy = y % p_;
    const std::uint32_t s = subtract ? (dx + p_ - dy) % p_ : (dx + dy) % p_;
    out += s * scale;
    scale *= p_;
    x /= p_;
    y /= p_;
  }
  return FieldElem{out};
}

FieldElem Field::poly_mul(FieldElem a, FieldElem b) const {
  const Poly f(modulus_.begin(), modulus_.end());
  auto to_poly = [&](FieldElem e) {
    const auto d = digits(e);
    return Poly(d.begin(), d.end());
  };
  const Poly r = mulmod(to_poly(a), to_poly(b), f, p_);
  std::uint32_t v = 0;
  for (std::size_t i = r.size(); i-- > 0;) v = v * p_ + static_cast<std::uint32_t>(r[i]);
  return FieldElem{v};
}

FieldElem Field::add(FieldElem a, FieldElem b) const {
  if (p_ == 2) return FieldElem{a.value ^ b.value};
  if (exp_.empty()) return digit_add(a, b, false);
  if (a.value == 0) return b;
  if (b.value == 0) return a;
  const std::uint32_t n = order_ - 1;
  const std::uint32_t la = log_[a.value], lb = log_[b.value];
  const std::uint32_t z = zech_[(lb + n - la) % n];
  if (z == kNoLog) return zero();
  return FieldElem{exp_[(la + z) % n]};
}

FieldElem Field::neg(FieldElem a) const {
  if (p_ == 2 || a.value == 0) return a;
  if (exp_.empty()) return digit_add(zero(), a, true);
  const std::uint32_t n = order_ - 1;
  return FieldElem{exp_[(log_[a.value] + n / 2) % n]};
}

FieldElem Field::sub(FieldElem a, FieldElem b) const {
  if (exp_.empty()) return digit_add(a, b, true);
  return add(a, neg(b));
}

FieldElem Field::mul(FieldElem a, FieldElem b) const {
  if (a.value == 0 || b.value == 0) return zero();
  if (exp_.empty()) return poly_mul(a, b);
  const std::uint32_t n = order_ - 1;
  return FieldElem{exp_[(log_[a.value] + log_[b.value]) % n]};
}

FieldElem Field::inv(FieldElem a) const {
  if (a.value == 0) throw UsageError("inverse of zero");
  if (exp_.empty()) return pow(a, order_ - 2);
  const std::uint32_t n = order_ - 1;
  return FieldElem{exp_[(n - log_[a.value]) % n]};
}

FieldElem Field::div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

FieldElem Field::pow(FieldElem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.value == 0) return zero();
  if (!exp_.empty()) {
    const std::uint64_t n = order_ - 1;
    return FieldElem{exp_[(std::uint64_t{log_[a.value]} * (e % n)) % n]};
  }
  FieldElem r = one();
  while (e) {
    if (e & 1) r = poly_mul(r, a);
    a = poly_mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldElem Field::from_int(std::int64_t n) const {
  const std::int64_t p = p_;
  return FieldElem{static_cast<std::uint32_t>(((n % p) + p) % p)};
}

std::uint32_t Field::log(FieldElem x) const {
  if (exp_.empty()) throw UsageError("discrete log tables unavailable for " + describe());
  if (x.value == 0 || x.value >= order_) throw UsageError("log of zero");
  return log_[x.value];
}

FieldElem Field::exp(std::uint64_t k) const {
  if (exp_.empty()) return pow(primitive_, k);
  return FieldElem{exp_[k % (order_ - 1)]};
}

FieldElem Field::trace_to_prime(FieldElem x) const {
  FieldElem acc = zero(), y = x;
  for (std::uint32_t i = 0; i < m_; ++i) {
    acc = add(acc, y);
    y = pow(y, p_);
  }
  return acc;
}

bool Field::is_square(FieldElem x) const {
  if (p_ == 2) {
    throw CharacteristicError("is_square is not meaningful in characteristic 2 (every element is a square)");
  }
  if (x.value == 0) return true;
  if (!exp_.empty()) return log_[x.value] % 2 == 0;
  return pow(x, (order_ - 1) / 2) == one();
}

void Field::require_split() const {
  if (m_ % 2 != 0) {
    throw UsageError(describe() + " has odd degree; no GF(q) inside GF(q^2) split");
  }
}

std::uint32_t Field::subfield_order() const {
  require_split();
  return static_cast<std::uint32_t>(ipow(p_, m_ / 2));
}

FieldElem Field::frobenius_q(FieldElem x) const { return pow(x, subfield_order()); }

TraceNorm Field::trace_norm(FieldElem x) const {
  const FieldElem xq = frobenius_q(x);
  TraceNorm tn{add(x, xq), mul(x, xq)};
  if (!in_subfield(tn.trace) || !in_subfield(tn.norm)) {
    throw Error("internal: trace/norm left the subfield");
  }
  return tn;
}

bool Field::in_subfield(FieldElem x) const {
  require_split();
  return to_sub_[x.value] != kNoLog;
}

std::span<const FieldElem> Field::subfield_elements() const {
  require_split();
  return subfield_elems_;
}

std::shared_ptr<const Field> Field::subfield() const {
  require_split();
  return subfield_;
}

FieldElem Field::to_subfield(FieldElem x) const {
  require_split();
  const std::uint32_t y = to_sub_.at(x.value);
  if (y == kNoLog) throw UsageError("element " + std::to_string(x.value) + " is not in GF(q)");
  return FieldElem{y};
}

FieldElem Field::from_subfield(FieldElem y) const {
  require_split();
  if (y.value == 0) return zero();
  return pow(subfield_root_image_, subfield_->log(y));
}

}  // namespace qh
