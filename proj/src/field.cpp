#include "ss5/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "ss5/poly.hpp"

namespace ss5 {

struct FieldData {
  std::uint32_t p = 0;
  int k = 0;
  bool small = false;
  std::vector<std::uint32_t> modulus;
  std::array<std::uint64_t, kMaxDegree> negm{};
  BigInt q;
  // frob[t][i] = (g^i)^(p^t)
  std::vector<std::vector<FieldElem>> frob;
  std::vector<std::int8_t> legendre;
  FieldElem nonresidue{};
};

namespace {

FieldElem mul_raw(const FieldData& d, const FieldElem& a, const FieldElem& b) {
  FieldElem r;
  const std::uint64_t p = d.p;
  const int k = d.k;
  if (k == 1) {
    r.c[0] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.c[0]) * b.c[0] % p);
    return r;
  }
  std::uint64_t acc[2 * kMaxDegree - 1] = {};
  if (d.small) {
    for (int i = 0; i < k; ++i) {
      const std::uint64_t ai = a.c[i];
      if (!ai) continue;
      for (int j = 0; j < k; ++j) acc[i + j] += ai * b.c[j];
    }
    for (int i = 2 * k - 2; i >= k; --i) {
      const std::uint64_t t = acc[i] % p;
      if (!t) continue;
      for (int j = 0; j < k; ++j) acc[i - k + j] += t * d.negm[j];
    }
  } else {
    for (int i = 0; i < k; ++i) {
      const std::uint64_t ai = a.c[i];
      if (!ai) continue;
      for (int j = 0; j < k; ++j) acc[i + j] = (acc[i + j] + ai * b.c[j] % p) % p;
    }
    for (int i = 2 * k - 2; i >= k; --i) {
      const std::uint64_t t = acc[i] % p;
      if (!t) continue;
      for (int j = 0; j < k; ++j) acc[i - k + j] = (acc[i - k + j] + t * d.negm[j] % p) % p;
    }
  }
  for (int i = 0; i < k; ++i) r.c[i] = static_cast<std::uint32_t>(acc[i] % p);
  return r;
}

FieldElem pow_raw(const FieldData& d, FieldElem a, std::uint64_t e) {
  FieldElem r;
  r.c[0] = 1;
  while (e) {
    if (e & 1) r = mul_raw(d, r, a);
    e >>= 1;
    if (e) a = mul_raw(d, a, a);
  }
  return r;
}

FieldElem frob_raw(const FieldData& d, const FieldElem& a, int t) {
  t %= d.k;
  if (t < 0) t += d.k;
  if (t == 0 || d.k == 1) return a;
  const auto& cols = d.frob[t];
  std::uint64_t acc[kMaxDegree] = {};
  const std::uint64_t p = d.p;
  for (int i = 0; i < d.k; ++i) {
    const std::uint64_t ai = a.c[i];
    if (!ai) continue;
    for (int j = 0; j < d.k; ++j) acc[j] = (acc[j] + ai * cols[i].c[j]) % p;
  }
  FieldElem r;
  for (int j = 0; j < d.k; ++j) r.c[j] = static_cast<std::uint32_t>(acc[j]);
  return r;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::uint32_t, int>, FieldCtx>& ext_cache() {
  static std::map<std::pair<std::uint32_t, int>, FieldCtx> c;
  return c;
}

std::uint32_t tonelli_shanks(std::uint32_t a, std::uint32_t p) {
  if (a == 0) return 0;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  std::uint32_t s = 0, t = p - 1;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  std::uint32_t z = 2;
  while (legendre(z, p) != -1) ++z;
  std::uint64_t m = s, c = pow_mod(z, t, p), x = pow_mod(a, (t + 1) / 2, p), b = pow_mod(a, t, p);
  while (b != 1) {
    std::uint64_t i = 0, bb = b;
    while (bb != 1) {
      bb = bb * bb % p;
      ++i;
    }
    std::uint64_t f = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) f = f * f % p;
    x = x * f % p;
    c = f * f % p;
    b = b * c % p;
    m = i;
  }
  return static_cast<std::uint32_t>(x);
}

}  // namespace

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  if (nr == 0) throw FieldError("inverse of zero");
  while (nr) {
    const std::int64_t q = r / nr;
    t = t - q * nt;
    std::swap(t, nt);
    r = r - q * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

int legendre(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

FieldCtx FieldCtx::prime(std::uint32_t p) { return from_modulus(p, {0, 1}); }

FieldCtx FieldCtx::from_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime_u32(p) || p == 2) throw FieldError("characteristic must be an odd prime below 2^32");
  if (p >= (1u << 31)) throw FieldError("characteristic must be below 2^31");
  if (modulus.size() < 2) throw FieldError("modulus must have positive degree");
  const int k = static_cast<int>(modulus.size()) - 1;
  if (k > kMaxDegree) throw FieldError("extension degree exceeds " + std::to_string(kMaxDegree));
  for (auto& m : modulus) {
    if (m >= p) throw FieldError("modulus coefficient out of range");
  }
  if (modulus.back() != 1) throw FieldError("modulus must be monic");

  auto d = std::make_shared<FieldData>();
  d->p = p;
  d->k = k;
  d->small = p < (1u << 16);
  d->modulus = modulus;
  for (int i = 0; i < k; ++i) d->negm[i] = (p - modulus[i]) % p;
  d->q = 1;
  for (int i = 0; i < k; ++i) d->q *= p;
  if (p <= (1u << 20)) {
    d->legendre.assign(p, 0);
    for (std::uint64_t x = 1; x < p; ++x) d->legendre[x * x % p] = 1;
    for (std::uint32_t x = 1; x < p; ++x)
      if (!d->legendre[x]) d->legendre[x] = -1;
  }

  if (k > 1) {
    FieldCtx fp = FieldCtx::prime(p);
    UniPoly m;
    for (auto v : modulus) m.c.push_back(fp.from_int(v));
    if (!poly::is_irreducible(fp, m)) throw FieldError("modulus is not irreducible");
    // Frobenius tables.
    FieldElem g{};
    g.c[1] = 1;
    d->frob.assign(k, {});
    FieldElem gp = pow_raw(*d, g, p);
    FieldElem gpt = g;
    for (int t = 1; t < k; ++t) {
      gpt = t == 1 ? gp : pow_raw(*d, gpt, p);
      auto& cols = d->frob[t];
      cols.resize(k);
      FieldElem acc{};
      acc.c[0] = 1;
      for (int i = 0; i < k; ++i) {
        cols[i] = acc;
        acc = mul_raw(*d, acc, gpt);
      }
    }
  }
  FieldCtx F(d);
  // Smallest non-square by index, for Tonelli-Shanks.
  for (std::uint64_t i = 1;; ++i) {
    FieldElem z = F.from_index(i);
    if (F.quadratic_character(z) == -1) {
      d->nonresidue = z;
      break;
    }
  }
  return F;
}

std::uint32_t FieldCtx::p() const { return d_->p; }
int FieldCtx::k() const { return d_->k; }
const std::vector<std::uint32_t>& FieldCtx::modulus() const { return d_->modulus; }
const BigInt& FieldCtx::order() const { return d_->q; }
std::uint64_t FieldCtx::order_u64() const {
  if (d_->q > BigInt(std::numeric_limits<std::uint64_t>::max())) throw FieldError("field order exceeds 64 bits");
  return static_cast<std::uint64_t>(d_->q);
}

bool FieldCtx::same_as(const FieldCtx& o) const {
  if (d_ == o.d_) return true;
  if (!d_ || !o.d_) return false;
  return d_->p == o.d_->p && d_->modulus == o.d_->modulus;
}

FieldElem FieldCtx::one() const {
  FieldElem r;
  r.c[0] = 1;
  return r;
}

FieldElem FieldCtx::from_int(std::int64_t v) const {
  FieldElem r;
  std::int64_t m = v % static_cast<std::int64_t>(d_->p);
  if (m < 0) m += d_->p;
  r.c[0] = static_cast<std::uint32_t>(m);
  return r;
}

FieldElem FieldCtx::gen() const {
  if (d_->k == 1) return from_int(-static_cast<std::int64_t>(d_->modulus[0]));
  FieldElem r;
  r.c[1] = 1;
  return r;
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  FieldElem r;
  const std::uint32_t p = d_->p;
  for (int i = 0; i < d_->k; ++i) {
    std::uint32_t s = a.c[i] + b.c[i];
    r.c[i] = s >= p ? s - p : s;
  }
  return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
  FieldElem r;
  const std::uint32_t p = d_->p;
  for (int i = 0; i < d_->k; ++i) r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + p - b.c[i];
  return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const {
  FieldElem r;
  for (int i = 0; i < d_->k; ++i) r.c[i] = a.c[i] ? d_->p - a.c[i] : 0;
  return r;
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const { return mul_raw(*d_, a, b); }

FieldElem FieldCtx::scale(const FieldElem& a, std::uint32_t s) const {
  FieldElem r;
  s %= d_->p;
  for (int i = 0; i < d_->k; ++i)
    r.c[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.c[i]) * s % d_->p);
  return r;
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  if (is_zero(a)) throw FieldError("inverse of zero");
  if (d_->k == 1) return from_int(inv_mod(a.c[0], d_->p));
  FieldElem conj = one();
  for (int t = 1; t < d_->k; ++t) conj = mul(conj, frob_raw(*d_, a, t));
  const std::uint32_t n = mul(conj, a).c[0];
  return scale(conj, inv_mod(n, d_->p));
}

FieldElem FieldCtx::pow_small(const FieldElem& a, std::uint64_t e) const { return pow_raw(*d_, a, e); }

FieldElem FieldCtx::pow(const FieldElem& a, std::uint64_t e) const { return pow_raw(*d_, a, e); }

FieldElem FieldCtx::pow(const FieldElem& a, const BigInt& e) const {
  if (e < 0) return pow(inv(a), BigInt(-e));
  FieldElem r = one();
  if (e == 0) return r;
  const std::size_t bits = boost::multiprecision::msb(e);
  for (std::size_t i = bits + 1; i-- > 0;) {
    r = mul(r, r);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) r = mul(r, a);
  }
  return r;
}

FieldElem FieldCtx::frobenius(const FieldElem& a, int times) const { return frob_raw(*d_, a, times); }

bool FieldCtx::is_zero(const FieldElem& a) const {
  for (int i = 0; i < d_->k; ++i)
    if (a.c[i]) return false;
  return true;
}

bool FieldCtx::is_one(const FieldElem& a) const {
  if (a.c[0] != 1) return false;
  for (int i = 1; i < d_->k; ++i)
    if (a.c[i]) return false;
  return true;
}

bool FieldCtx::in_prime_field(const FieldElem& a) const {
  for (int i = 1; i < d_->k; ++i)
    if (a.c[i]) return false;
  return true;
}

bool FieldCtx::in_subfield(const FieldElem& a, int e) const {
  if (e <= 0 || d_->k % e != 0) throw FieldError("subfield degree must divide k");
  return frobenius(a, e) == a;
}

std::uint32_t FieldCtx::norm(const FieldElem& a) const {
  if (d_->k == 1) return a.c[0];
  FieldElem r = a;
  for (int t = 1; t < d_->k; ++t) r = mul(r, frob_raw(*d_, a, t));
  return r.c[0];
}

FieldElem FieldCtx::relative_norm(const FieldElem& a, int e) const {
  if (e <= 0 || d_->k % e != 0) throw FieldError("subfield degree must divide k");
  FieldElem r = a;
  for (int t = e; t < d_->k; t += e) r = mul(r, frob_raw(*d_, a, t));
  return r;
}

int FieldCtx::quadratic_character(const FieldElem& a) const {
  const std::uint32_t n = norm(a);
  if (!d_->legendre.empty()) return d_->legendre[n];
  return legendre(n, d_->p);
}

bool FieldCtx::residue_test(const FieldElem& a, std::uint64_t g) const {
  // a^((q-1)/g) = N(a)^((p^j-1)/g) with N the norm to F_{p^j}, j = ord_g(p).
  int j = 1;
  std::uint64_t pj = d_->p % g;
  while (pj != 1 % g) {
    pj = pj * (d_->p % g) % g;
    ++j;
  }
  if (j == 1) {
    const std::uint32_t n = norm(a);
    return pow_mod(n, (d_->p - 1) / g, d_->p) == 1;
  }
  BigInt e = 1;
  for (int i = 0; i < j; ++i) e *= d_->p;
  e = (e - 1) / g;
  return is_one(pow(relative_norm(a, j), e));
}

std::uint64_t FieldCtx::nth_root_count(const FieldElem& a, std::uint64_t n) const {
  if (n == 0) throw FieldError("n must be positive");
  if (is_zero(a)) return 1;
  const std::uint64_t qm1 = static_cast<std::uint64_t>((d_->q - 1) % n);
  const std::uint64_t g = std::gcd(n, qm1 == 0 ? n : qm1);
  if (g == 1) return 1;
  if (g == 2) return quadratic_character(a) == 1 ? 2 : 0;
  return residue_test(a, g) ? g : 0;
}

std::optional<FieldElem> FieldCtx::sqrt(const FieldElem& a) const {
  if (is_zero(a)) return zero();
  if (quadratic_character(a) != 1) return std::nullopt;
  FieldElem x;
  if (d_->k == 1) {
    x = from_int(tonelli_shanks(a.c[0], d_->p));
  } else if (d_->q % 4 == 3) {
    x = pow(a, BigInt((d_->q + 1) / 4));
  } else {
    BigInt t = d_->q - 1;
    unsigned s = 0;
    while (!boost::multiprecision::bit_test(t, 0)) {
      t >>= 1;
      ++s;
    }
    FieldElem c = pow(d_->nonresidue, t);
    x = pow(a, BigInt((t + 1) / 2));
    FieldElem b = pow(a, t);
    unsigned m = s;
    while (!is_one(b)) {
      unsigned i = 0;
      FieldElem bb = b;
      while (!is_one(bb)) {
        bb = sqr(bb);
        ++i;
      }
      FieldElem f = c;
      for (unsigned j = 0; j + 1 < m - i; ++j) f = sqr(f);
      x = mul(x, f);
      c = sqr(f);
      b = mul(b, c);
      m = i;
    }
  }
  FieldElem y = neg(x);
  return less(y, x) ? y : x;
}

std::string FieldCtx::encode(const FieldElem& a) const {
  std::string s;
  for (int i = 0; i < d_->k; ++i) {
    if (i) s += ',';
    s += std::to_string(a.c[i]);
  }
  return s;
}

FieldElem FieldCtx::decode(const std::string& s) const {
  FieldElem r;
  std::stringstream ss(s);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= d_->k) throw FieldError("too many coordinates in '" + s + "'");
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      throw FieldError("bad field element '" + s + "'");
    }
    if (pos != tok.size() && tok.find_first_not_of(' ', pos) != std::string::npos)
      throw FieldError("bad field element '" + s + "'");
    if (v < 0 || v >= static_cast<long long>(d_->p)) throw FieldError("coordinate out of range in '" + s + "'");
    r.c[i++] = static_cast<std::uint32_t>(v);
  }
  if (i != d_->k) throw FieldError("expected " + std::to_string(d_->k) + " coordinates in '" + s + "'");
  return r;
}

bool FieldCtx::less(const FieldElem& a, const FieldElem& b) const {
  for (int i = d_->k; i-- > 0;)
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  return false;
}

FieldElem FieldCtx::from_index(std::uint64_t idx) const {
  FieldElem r;
  for (int i = 0; i < d_->k; ++i) {
    r.c[i] = static_cast<std::uint32_t>(idx % d_->p);
    idx /= d_->p;
  }
  return r;
}

std::uint64_t FieldCtx::index(const FieldElem& a) const {
  std::uint64_t r = 0;
  for (int i = d_->k; i-- > 0;) r = r * d_->p + a.c[i];
  return r;
}

FieldCtx make_extension(std::uint32_t p, int k) {
  if (k < 1 || k > kMaxDegree) throw FieldError("extension degree out of range: " + std::to_string(k));
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = ext_cache().find({p, k});
    if (it != ext_cache().end()) return it->second;
  }
  FieldCtx F;
  if (k == 1) {
    F = FieldCtx::prime(p);
  } else {
    FieldCtx fp = FieldCtx::prime(p);
    std::vector<std::uint32_t> digits(k, 0);
    for (;;) {
      UniPoly m;
      for (int i = 0; i < k; ++i) m.c.push_back(fp.from_int(digits[i]));
      m.c.push_back(fp.one());
      if (digits[0] != 0 && poly::is_irreducible(fp, m)) {
        std::vector<std::uint32_t> mod(digits);
        mod.push_back(1);
        F = FieldCtx::from_modulus(p, mod);
        break;
      }
      int i = 0;
      while (i < k && ++digits[i] == p) digits[i++] = 0;
      if (i == k) throw FieldError("no irreducible polynomial found");
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex());
  return ext_cache().emplace(std::make_pair(p, k), F).first->second;
}

FieldCtx make_extension(const FieldCtx& base, int k) {
  if (base.k() != 1) {
    FieldCtx F = make_extension(base.p(), base.k() * k);
    return F;
  }
  return make_extension(base.p(), k);
}

Embedding::Embedding(const FieldCtx& small, const FieldCtx& big) : small_(small), big_(big) {
  if (small.p() != big.p() || big.k() % small.k() != 0) throw FieldError("no embedding between these fields");
  if (small.k() == 1) return;
  FieldCtx fp = FieldCtx::prime(small.p());
  UniPoly m;
  for (auto v : small.modulus()) m.c.push_back(fp.from_int(v));
  auto rs = poly::roots_in_extension(fp, m, big);
  if (rs.empty()) throw FieldError("modulus has no root in target field");
  powers_.resize(small.k());
  FieldElem acc = big.one();
  for (int i = 0; i < small.k(); ++i) {
    powers_[i] = acc;
    acc = big.mul(acc, rs.front());
  }
}

FieldElem Embedding::operator()(const FieldElem& a) const {
  if (small_.k() == 1) return big_.from_int(a.c[0]);
  FieldElem r{};
  for (int i = 0; i < small_.k(); ++i)
    if (a.c[i]) r = big_.add(r, big_.scale(powers_[i], a.c[i]));
  return r;
}

}  // namespace ss5
