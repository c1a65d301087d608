#include "gl3adlv/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gl3 {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; (std::int64_t)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

using Poly = std::vector<int>; // ascending coefficients mod p

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, int p) {
  std::vector<int> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  int deg = (int)mod.size() - 1;
  for (int i = (int)prod.size() - 1; i >= deg; --i) {
    int c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    // mod is monic: subtract c * x^{i-deg} * mod
    for (int j = 0; j < deg; ++j)
      prod[i - deg + j] = ((prod[i - deg + j] - c * mod[j]) % p + p) % p;
  }
  prod.resize(deg);
  return prod;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& mod, int p) {
  Poly r(mod.size() - 1, 0);
  r[0] = 1;
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, mod, p);
    base = poly_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, int p) {
  auto deg_of = [](const Poly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
      if (f[i] != 0) return i;
    return -1;
  };
  while (deg_of(b) >= 0) {
    int da = deg_of(a), db = deg_of(b);
    if (da < db) {
      std::swap(a, b);
      continue;
    }
    // kill leading term of a
    int lb = b[db];
    int inv_lb = 1;
    for (int x = 1; x < p; ++x)
      if (lb * x % p == 1) { inv_lb = x; break; }
    int c = a[da] * inv_lb % p;
    for (int i = 0; i <= db; ++i)
      a[da - db + i] = ((a[da - db + i] - c * b[i]) % p + p) % p;
  }
  return a;
}

bool poly_is_x(const Poly& f) {
  for (size_t i = 0; i < f.size(); ++i) {
    int want = (i == 1) ? 1 : 0;
    if (f[i] != want) return false;
  }
  return true;
}

bool is_irreducible(const Poly& mod, int p) {
  int deg = (int)mod.size() - 1;
  Poly x(deg, 0);
  if (deg == 1) return true;
  x[1] = 1;
  // x^{p^deg} == x mod f
  Poly xp = x;
  for (int i = 0; i < deg; ++i) xp = poly_powmod(xp, p, mod, p);
  if (!poly_is_x(xp)) return false;
  for (std::uint64_t r : prime_factors((std::uint64_t)deg)) {
    Poly xr = x;
    for (std::uint64_t i = 0; i < (std::uint64_t)deg / r; ++i)
      xr = poly_powmod(xr, p, mod, p);
    // gcd(xr - x, f) must be constant
    Poly diff = xr;
    diff[1] = ((diff[1] - 1) % p + p) % p;
    Poly g = poly_gcd(mod, diff, p);
    int dg = -1;
    for (int i = (int)g.size() - 1; i >= 0; --i)
      if (g[i] != 0) { dg = i; break; }
    if (dg != 0) return false;
  }
  return true;
}

} // namespace

FieldCtx::FieldCtx(int p, int s, int m) : p_(p), s_(s), m_(m), deg_(s * m) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (s < 1 || m < 1) throw std::invalid_argument("s, m must be >= 1");
  q_ = ipow((std::uint64_t)p, s);
  order_ = ipow((std::uint64_t)p, deg_);
  if (order_ > (1u << 20))
    throw std::invalid_argument("field order q^m exceeds 2^20");

  // lexicographically smallest irreducible monic modulus: minimize the base-p
  // value of the non-leading coefficient vector
  modulus_.assign(deg_ + 1, 0);
  modulus_[deg_] = 1;
  bool found = false;
  for (std::uint64_t v = 0; v < order_; ++v) {
    std::uint64_t t = v;
    for (int i = 0; i < deg_; ++i) {
      modulus_[i] = int(t % p);
      t /= p;
    }
    if (is_irreducible(modulus_, p)) {
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("no irreducible modulus found");

  // discrete-log tables over a generator
  std::uint64_t n = order_ - 1;
  auto fs = prime_factors(n);
  felem gen = 0;
  for (felem g = (p_ == 2 && deg_ == 1) ? 1u : 2u; g < order_; ++g) {
    bool ok = true;
    for (std::uint64_t f : fs) {
      // g^{n/f} != 1 via polynomial power
      felem acc = 1, base = g;
      std::uint64_t e = n / f;
      while (e) {
        if (e & 1) acc = mul_poly(acc, base);
        base = mul_poly(base, base);
        e >>= 1;
      }
      if (acc == 1) { ok = false; break; }
    }
    if (ok) { gen = g; break; }
  }
  if (gen == 0 && order_ == 2) gen = 1;
  if (gen == 0) throw std::logic_error("no generator found");

  exp_.resize(n);
  log_.assign(order_, 0);
  felem cur = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = cur;
    log_[cur] = (std::uint32_t)i;
    cur = mul_poly(cur, gen);
  }

  for (felem a = 0; a < order_; ++a)
    if (in_base_field(a)) base_elems_.push_back(a);
}

felem FieldCtx::mul_poly(felem a, felem b) const {
  Poly pa = Poly(deg_, 0), pb = Poly(deg_, 0);
  {
    std::uint64_t t = a;
    for (int i = 0; i < deg_; ++i) { pa[i] = int(t % p_); t /= p_; }
    t = b;
    for (int i = 0; i < deg_; ++i) { pb[i] = int(t % p_); t /= p_; }
  }
  Poly pr = poly_mulmod(pa, pb, modulus_, p_);
  felem r = 0;
  for (int i = deg_ - 1; i >= 0; --i) r = felem(r * p_ + pr[i]);
  return r;
}

felem FieldCtx::add(felem a, felem b) const {
  felem r = 0, mult = 1;
  for (int i = 0; i < deg_; ++i) {
    int da = int(a % p_), db = int(b % p_);
    a /= p_;
    b /= p_;
    r += mult * felem((da + db) % p_);
    mult *= p_;
  }
  return r;
}

felem FieldCtx::neg(felem a) const {
  felem r = 0, mult = 1;
  for (int i = 0; i < deg_; ++i) {
    int da = int(a % p_);
    a /= p_;
    r += mult * felem((p_ - da) % p_);
    mult *= p_;
  }
  return r;
}

felem FieldCtx::sub(felem a, felem b) const { return add(a, neg(b)); }

felem FieldCtx::mul(felem a, felem b) const {
  if (a == 0 || b == 0) return 0;
  std::uint64_t n = order_ - 1;
  return exp_[((std::uint64_t)log_[a] + log_[b]) % n];
}

felem FieldCtx::inv(felem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  std::uint64_t n = order_ - 1;
  return exp_[(n - log_[a]) % n];
}

felem FieldCtx::pow(felem a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  std::uint64_t n = order_ - 1;
  // log may exceed 32 bits after multiply; use unsigned __int128
  unsigned __int128 le = (unsigned __int128)log_[a] * (e % n);
  return exp_[(std::uint64_t)(le % n)];
}

felem FieldCtx::frobenius(felem a, int k) const {
  if (a == 0) return 0;
  std::uint64_t n = order_ - 1;
  std::uint64_t qe = 1;
  for (int i = 0; i < k; ++i) qe = qe * (q_ % n) % n;
  unsigned __int128 le = (unsigned __int128)log_[a] * qe;
  return exp_[(std::uint64_t)(le % n)];
}

felem FieldCtx::from_digits(const std::vector<int>& digits) const {
  felem r = 0;
  for (int i = deg_ - 1; i >= 0; --i) {
    int d = i < (int)digits.size() ? digits[i] : 0;
    if (d < 0 || d >= p_) throw std::invalid_argument("digit out of range");
    r = felem(r * p_ + d);
  }
  return r;
}

std::vector<int> FieldCtx::digits(felem a) const {
  std::vector<int> ds(deg_);
  for (int i = 0; i < deg_; ++i) {
    ds[i] = int(a % p_);
    a /= p_;
  }
  return ds;
}

std::string FieldCtx::to_string(felem a) const {
  std::ostringstream os;
  auto ds = digits(a);
  os << "[";
  for (int i = 0; i < deg_; ++i) os << (i ? "," : "") << ds[i];
  os << "]";
  return os.str();
}

} // namespace gl3
