#include "ss5/poly.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ss5 {
namespace poly {

namespace {

bool elem_zero(const FieldCtx& F, const FieldElem& a) { return F.is_zero(a); }

// Schoolbook product over F_p on raw residues.
std::vector<std::uint32_t> mul_fp(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                  std::uint32_t p) {
  std::vector<std::uint32_t> r(a.size() + b.size() - 1, 0);
  const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
  // Accumulate up to 2^63 before reducing.
  const std::size_t chunk = std::max<std::uint64_t>(1, (std::uint64_t(1) << 63) / std::max<std::uint64_t>(pp, 1));
  std::vector<std::uint64_t> acc(r.size(), 0);
  for (std::size_t i0 = 0; i0 < a.size(); i0 += chunk) {
    const std::size_t i1 = std::min(a.size(), i0 + chunk);
    for (std::size_t i = i0; i < i1; ++i) {
      const std::uint64_t ai = a[i];
      if (!ai) continue;
      std::uint64_t* dst = acc.data() + i;
      for (std::size_t j = 0; j < b.size(); ++j) dst[j] += ai * b[j];
    }
    for (auto& v : acc) v %= p;
  }
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint32_t>(acc[i]);
  return r;
}

}  // namespace

UniPoly trim(UniPoly f) {
  while (!f.c.empty()) {
    const auto& b = f.c.back();
    bool z = true;
    for (auto v : b.c)
      if (v) {
        z = false;
        break;
      }
    if (!z) break;
    f.c.pop_back();
  }
  return f;
}

UniPoly constant(const FieldElem& a) { return trim(UniPoly{{a}}); }

UniPoly monomial(const FieldCtx& F, const FieldElem& a, int deg) {
  if (F.is_zero(a)) return {};
  UniPoly r;
  r.c.assign(deg + 1, F.zero());
  r.c[deg] = a;
  return r;
}

UniPoly x(const FieldCtx& F) { return monomial(F, F.one(), 1); }

UniPoly from_ints(const FieldCtx& F, const std::vector<std::int64_t>& cs) {
  UniPoly r;
  for (auto v : cs) r.c.push_back(F.from_int(v));
  return trim(r);
}

UniPoly add(const FieldCtx& F, const UniPoly& a, const UniPoly& b) {
  UniPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), F.zero());
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size() && i < b.c.size())
      r.c[i] = F.add(a.c[i], b.c[i]);
    else
      r.c[i] = i < a.c.size() ? a.c[i] : b.c[i];
  }
  return trim(std::move(r));
}

UniPoly sub(const FieldCtx& F, const UniPoly& a, const UniPoly& b) {
  UniPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), F.zero());
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    const FieldElem ai = i < a.c.size() ? a.c[i] : F.zero();
    const FieldElem bi = i < b.c.size() ? b.c[i] : F.zero();
    r.c[i] = F.sub(ai, bi);
  }
  return trim(std::move(r));
}

UniPoly neg(const FieldCtx& F, const UniPoly& a) {
  UniPoly r = a;
  for (auto& v : r.c) v = F.neg(v);
  return r;
}

UniPoly scale(const FieldCtx& F, const UniPoly& a, const FieldElem& s) {
  UniPoly r = a;
  for (auto& v : r.c) v = F.mul(v, s);
  return trim(std::move(r));
}

UniPoly mul(const FieldCtx& F, const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (F.k() == 1) {
    std::vector<std::uint32_t> ra(a.c.size()), rb(b.c.size());
    for (std::size_t i = 0; i < ra.size(); ++i) ra[i] = a.c[i].c[0];
    for (std::size_t i = 0; i < rb.size(); ++i) rb[i] = b.c[i].c[0];
    auto rr = mul_fp(ra, rb, F.p());
    UniPoly r;
    r.c.resize(rr.size());
    for (std::size_t i = 0; i < rr.size(); ++i) r.c[i].c[0] = rr[i];
    return trim(std::move(r));
  }
  UniPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (elem_zero(F, a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
  }
  return trim(std::move(r));
}

UniPoly shift(const UniPoly& a, int n) {
  if (a.is_zero()) return a;
  UniPoly r;
  r.c.assign(n, FieldElem{});
  r.c.insert(r.c.end(), a.c.begin(), a.c.end());
  return r;
}

std::pair<UniPoly, UniPoly> divrem(const FieldCtx& F, const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw FieldError("polynomial division by zero");
  if (a.degree() < b.degree()) return {{}, a};
  const int db = b.degree();
  const FieldElem linv = F.inv(b.lead());
  if (F.k() == 1) {
    const std::uint64_t p = F.p();
    std::vector<std::uint64_t> r(a.c.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c[i].c[0];
    std::vector<std::uint64_t> nb(db + 1);
    for (int i = 0; i <= db; ++i) nb[i] = (p - b.c[i].c[0]) % p;
    const std::uint64_t li = linv.c[0];
    UniPoly q;
    q.c.assign(a.degree() - db + 1, F.zero());
    for (int i = a.degree(); i >= db; --i) {
      const std::uint64_t t = r[i] % p * li % p;
      q.c[i - db].c[0] = static_cast<std::uint32_t>(t);
      if (!t) continue;
      std::uint64_t* dst = r.data() + (i - db);
      for (int j = 0; j < db; ++j) dst[j] = (dst[j] + t * nb[j]) % p;
      r[i] = 0;
    }
    UniPoly rem;
    rem.c.resize(db);
    for (int i = 0; i < db; ++i) rem.c[i].c[0] = static_cast<std::uint32_t>(r[i] % p);
    return {trim(std::move(q)), trim(std::move(rem))};
  }
  UniPoly r = a;
  UniPoly q;
  q.c.assign(a.degree() - db + 1, F.zero());
  for (int i = a.degree(); i >= db; --i) {
    if (F.is_zero(r.c[i])) continue;
    const FieldElem t = F.mul(r.c[i], linv);
    q.c[i - db] = t;
    for (int j = 0; j <= db; ++j) r.c[i - db + j] = F.sub(r.c[i - db + j], F.mul(t, b.c[j]));
  }
  r.c.resize(db);
  return {trim(std::move(q)), trim(std::move(r))};
}

UniPoly mod(const FieldCtx& F, const UniPoly& a, const UniPoly& b) { return divrem(F, a, b).second; }

UniPoly div_exact(const FieldCtx& F, const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divrem(F, a, b);
  if (!r.is_zero()) throw FieldError("inexact polynomial division");
  return q;
}

UniPoly monic(const FieldCtx& F, const UniPoly& a) {
  if (a.is_zero()) return a;
  return scale(F, a, F.inv(a.lead()));
}

UniPoly gcd(const FieldCtx& F, const UniPoly& a0, const UniPoly& b0) {
  UniPoly a = a0, b = b0;
  while (!b.is_zero()) {
    UniPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

UniPoly derivative(const FieldCtx& F, const UniPoly& a) {
  UniPoly r;
  for (std::size_t i = 1; i < a.c.size(); ++i) r.c.push_back(F.scale(a.c[i], static_cast<std::uint32_t>(i % F.p())));
  return trim(std::move(r));
}

FieldElem eval(const FieldCtx& F, const UniPoly& a, const FieldElem& x) {
  FieldElem r = F.zero();
  for (std::size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
  return r;
}

UniPoly pow(const FieldCtx& F, const UniPoly& a, std::uint64_t e) {
  UniPoly r = constant(F.one()), b = a;
  while (e) {
    if (e & 1) r = mul(F, r, b);
    e >>= 1;
    if (e) b = mul(F, b, b);
  }
  return r;
}

UniPoly powmod(const FieldCtx& F, const UniPoly& a, std::uint64_t e, const UniPoly& m) {
  UniPoly r = mod(F, constant(F.one()), m), b = mod(F, a, m);
  while (e) {
    if (e & 1) r = mod(F, mul(F, r, b), m);
    e >>= 1;
    if (e) b = mod(F, mul(F, b, b), m);
  }
  return r;
}

UniPoly powmod(const FieldCtx& F, const UniPoly& a, const BigInt& e, const UniPoly& m) {
  UniPoly r = mod(F, constant(F.one()), m);
  if (e == 0) return r;
  const UniPoly b = mod(F, a, m);
  const std::size_t bits = boost::multiprecision::msb(e);
  for (std::size_t i = bits + 1; i-- > 0;) {
    r = mod(F, mul(F, r, r), m);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) r = mod(F, mul(F, r, b), m);
  }
  return r;
}

UniPoly embed(const Embedding& E, const UniPoly& a) {
  UniPoly r;
  for (const auto& v : a.c) r.c.push_back(E(v));
  return trim(std::move(r));
}

namespace {

std::vector<int> prime_divisors(int n) {
  std::vector<int> r;
  for (int d = 2; d <= n; ++d) {
    if (n % d == 0) {
      r.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  return r;
}

// x^(q^i) mod f for i = 1..n.
UniPoly frob_x(const FieldCtx& F, const UniPoly& h, const UniPoly& f) { return powmod(F, h, F.order(), f); }

// p-th root of a polynomial whose exponents are all multiples of p.
UniPoly pth_root(const FieldCtx& F, const UniPoly& f) {
  UniPoly r;
  const std::size_t p = F.p();
  for (std::size_t i = 0; i < f.c.size(); i += p) r.c.push_back(F.frobenius(f.c[i], F.k() - 1));
  return trim(std::move(r));
}

void squarefree(const FieldCtx& F, const UniPoly& f, int mult, std::vector<Factor>& out) {
  if (f.degree() < 1) return;
  UniPoly g = derivative(F, f);
  if (g.is_zero()) {
    squarefree(F, pth_root(F, f), mult * static_cast<int>(F.p()), out);
    return;
  }
  UniPoly c = gcd(F, f, g);
  UniPoly w = div_exact(F, f, c);
  int i = 1;
  while (w.degree() > 0) {
    UniPoly y = gcd(F, w, c);
    UniPoly fac = div_exact(F, w, y);
    if (fac.degree() > 0) out.push_back({monic(F, fac), i * mult});
    ++i;
    w = y;
    c = div_exact(F, c, y);
  }
  if (c.degree() > 0) squarefree(F, pth_root(F, c), mult * static_cast<int>(F.p()), out);
}

void equal_degree(const FieldCtx& F, const UniPoly& f, int d, std::mt19937_64& rng, std::vector<UniPoly>& out) {
  const int n = f.degree();
  if (n == d) {
    out.push_back(monic(F, f));
    return;
  }
  BigInt qd = 1;
  for (int i = 0; i < d; ++i) qd *= F.order();
  const BigInt e = (qd - 1) / 2;
  for (;;) {
    UniPoly h;
    h.c.resize(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < F.k(); ++j) h.c[i].c[j] = static_cast<std::uint32_t>(rng() % F.p());
    h = trim(std::move(h));
    if (h.degree() < 1) continue;
    UniPoly g = gcd(F, h, f);
    if (g.degree() <= 0) {
      UniPoly u = sub(F, powmod(F, h, e, f), constant(F.one()));
      g = gcd(F, u, f);
    }
    if (g.degree() > 0 && g.degree() < n) {
      equal_degree(F, g, d, rng, out);
      equal_degree(F, div_exact(F, f, g), d, rng, out);
      return;
    }
  }
}

// Distinct degree factorisation of a monic squarefree polynomial.
std::vector<std::pair<UniPoly, int>> distinct_degree(const FieldCtx& F, UniPoly f, int max_deg) {
  std::vector<std::pair<UniPoly, int>> out;
  const UniPoly X = x(F);
  UniPoly h = mod(F, X, f);
  for (int i = 1; f.degree() >= 2 * i && i <= max_deg; ++i) {
    h = frob_x(F, h, f);
    UniPoly g = gcd(F, sub(F, h, X), f);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = div_exact(F, f, g);
      h = mod(F, h, f);
    }
  }
  if (f.degree() > 0 && f.degree() <= max_deg) out.emplace_back(f, f.degree());
  return out;
}

bool poly_less(const FieldCtx& F, const UniPoly& a, const UniPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.c.size(); i-- > 0;) {
    if (a.c[i] == b.c[i]) continue;
    return F.less(a.c[i], b.c[i]);
  }
  return false;
}

}  // namespace

bool less(const FieldCtx& F, const UniPoly& a, const UniPoly& b) { return poly_less(F, a, b); }

bool is_irreducible(const FieldCtx& F, const UniPoly& f0) {
  if (f0.degree() < 1) return false;
  if (f0.degree() == 1) return true;
  const UniPoly f = monic(F, f0);
  const int n = f.degree();
  const UniPoly X = x(F);
  std::vector<UniPoly> xq(n + 1);
  xq[0] = mod(F, X, f);
  for (int i = 1; i <= n; ++i) xq[i] = frob_x(F, xq[i - 1], f);
  if (!(xq[n] == mod(F, X, f))) return false;
  for (int r : prime_divisors(n)) {
    if (gcd(F, sub(F, xq[n / r], X), f).degree() != 0) return false;
  }
  return true;
}

bool is_squarefree(const FieldCtx& F, const UniPoly& f) {
  if (f.degree() < 1) return true;
  return gcd(F, f, derivative(F, f)).degree() == 0;
}

std::vector<Factor> factor(const FieldCtx& F, const UniPoly& f0) {
  if (f0.is_zero()) throw FieldError("cannot factor the zero polynomial");
  std::vector<Factor> sf, out;
  squarefree(F, monic(F, f0), 1, sf);
  std::mt19937_64 rng(0x5eed5eedULL);
  for (const auto& [g, m] : sf) {
    for (auto& [h, d] : distinct_degree(F, g, g.degree())) {
      std::vector<UniPoly> parts;
      equal_degree(F, h, d, rng, parts);
      for (auto& pp : parts) out.push_back({pp, m});
    }
  }
  // Merge equal factors that arose from different squarefree layers.
  std::sort(out.begin(), out.end(), [&](const Factor& a, const Factor& b) { return poly_less(F, a.f, b.f); });
  std::vector<Factor> merged;
  for (auto& fa : out) {
    if (!merged.empty() && merged.back().f == fa.f)
      merged.back().mult += fa.mult;
    else
      merged.push_back(fa);
  }
  return merged;
}

std::vector<FieldElem> roots(const FieldCtx& F, const UniPoly& f0) {
  if (f0.is_zero()) throw FieldError("roots of the zero polynomial");
  std::vector<FieldElem> out;
  if (f0.degree() < 1) return out;
  const UniPoly f = monic(F, f0);
  const UniPoly X = x(F);
  UniPoly g = gcd(F, sub(F, frob_x(F, mod(F, X, f), f), X), f);
  if (g.degree() < 1) return out;
  std::mt19937_64 rng(0x0f00dULL + g.degree());
  std::vector<UniPoly> lin;
  equal_degree(F, g, 1, rng, lin);
  for (auto& l : lin) out.push_back(F.neg(l.c[0]));
  std::sort(out.begin(), out.end(), [&](const FieldElem& a, const FieldElem& b) { return F.less(a, b); });
  return out;
}

std::vector<FieldElem> roots_in_extension(const FieldCtx& base, const UniPoly& f, const FieldCtx& ext) {
  if (ext.k() % base.k() != 0 || ext.p() != base.p()) throw FieldError("not an extension of the base field");
  const int rel = ext.k() / base.k();
  std::vector<FieldElem> out;
  if (f.degree() < 1) return out;
  std::optional<Embedding> emb;
  if (base.k() > 1) emb.emplace(base, ext);
  for (const auto& fa : factor(base, f)) {
    const int e = fa.f.degree();
    if (rel % e != 0) continue;
    UniPoly lifted;
    if (emb)
      lifted = embed(*emb, fa.f);
    else
      for (const auto& v : fa.f.c) lifted.c.push_back(ext.from_int(v.c[0]));
    lifted = trim(std::move(lifted));
    FieldElem r;
    if (e == 1) {
      r = ext.neg(ext.div(lifted.c[0], lifted.c[1]));
    } else {
      // One root by splitting over ext, then its conjugates over base.
      std::mt19937_64 rng(0xabcdefULL + e);
      std::vector<UniPoly> lin;
      equal_degree(ext, monic(ext, lifted), 1, rng, lin);
      r = ext.neg(lin.front().c[0]);
    }
    FieldElem cur = r;
    for (int i = 0; i < e; ++i) {
      out.push_back(cur);
      cur = ext.frobenius(cur, base.k());
    }
  }
  std::sort(out.begin(), out.end(), [&](const FieldElem& a, const FieldElem& b) { return ext.less(a, b); });
  return out;
}

int splitting_degree(const FieldCtx& F, const UniPoly& f) {
  int l = 1;
  for (const auto& fa : factor(F, f)) l = std::lcm(l, fa.f.degree());
  return l;
}

FieldElem power_product_coeff(const FieldCtx& F, const std::vector<std::pair<UniPoly, std::uint64_t>>& factors,
                              std::uint64_t n) {
  auto trunc = [&](UniPoly a) {
    if (a.c.size() > n + 1) a.c.resize(n + 1);
    return trim(std::move(a));
  };
  UniPoly acc = constant(F.one());
  for (const auto& [f, e0] : factors) {
    UniPoly r = constant(F.one()), b = trunc(f);
    std::uint64_t e = e0;
    while (e) {
      if (e & 1) r = trunc(mul(F, r, b));
      e >>= 1;
      if (e) b = trunc(mul(F, b, b));
    }
    acc = trunc(mul(F, acc, r));
  }
  return n < acc.c.size() ? acc.c[n] : F.zero();
}

std::string to_string(const FieldCtx& F, const UniPoly& a, const std::string& var) {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (F.is_zero(a.c[i])) continue;
    if (!s.empty()) s += " + ";
    std::string c = F.encode(a.c[i]);
    if (F.k() > 1) c = "(" + c + ")";
    if (i == 0)
      s += c;
    else {
      s += c + "*" + var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

std::vector<std::string> encode(const FieldCtx& F, const UniPoly& a) {
  std::vector<std::string> r;
  for (const auto& v : a.c) r.push_back(F.encode(v));
  return r;
}

UniPoly decode(const FieldCtx& F, const std::vector<std::string>& cs) {
  UniPoly r;
  for (const auto& s : cs) r.c.push_back(F.decode(s));
  return trim(std::move(r));
}

}  // namespace poly

UniPoly resultant(const FieldCtx& F, const PolyOverPoly& f0, const PolyOverPoly& g0) {
  auto trimz = [](PolyOverPoly a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    return a;
  };
  const PolyOverPoly f = trimz(f0), g = trimz(g0);
  if (f.empty() || g.empty()) return {};
  const int m = static_cast<int>(f.size()) - 1, n = static_cast<int>(g.size()) - 1;
  const int N = m + n;
  if (N == 0) return poly::constant(F.one());
  std::vector<std::vector<UniPoly>> M(N, std::vector<UniPoly>(N));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = f[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = g[n - j];
  // Bareiss elimination.
  bool negate = false;
  UniPoly prev = poly::constant(F.one());
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k].is_zero()) {
      int r = k + 1;
      while (r < N && M[r][k].is_zero()) ++r;
      if (r == N) return {};
      std::swap(M[k], M[r]);
      negate = !negate;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        UniPoly t = poly::sub(F, poly::mul(F, M[i][j], M[k][k]), poly::mul(F, M[i][k], M[k][j]));
        M[i][j] = poly::div_exact(F, t, prev);
      }
      M[i][k] = {};
    }
    prev = M[k][k];
  }
  UniPoly det = M[N - 1][N - 1];
  if (negate) det = poly::neg(F, det);
  return det;
}

namespace bipoly {

BiPoly trim(BiPoly f) {
  for (auto& row : f.c) {
    while (!row.empty()) {
      bool z = true;
      for (auto v : row.back().c)
        if (v) z = false;
      if (!z) break;
      row.pop_back();
    }
  }
  while (!f.c.empty() && f.c.back().empty()) f.c.pop_back();
  return f;
}

bool is_zero(const BiPoly& f) {
  for (const auto& row : f.c)
    for (const auto& v : row)
      for (auto w : v.c)
        if (w) return false;
  return true;
}

FieldElem at(const BiPoly& f, int i, int j) {
  if (i < 0 || j < 0 || i >= static_cast<int>(f.c.size()) || j >= static_cast<int>(f.c[i].size())) return {};
  return f.c[i][j];
}

void set(BiPoly& f, int i, int j, const FieldElem& v) {
  if (static_cast<int>(f.c.size()) <= i) f.c.resize(i + 1);
  if (static_cast<int>(f.c[i].size()) <= j) f.c[i].resize(j + 1);
  f.c[i][j] = v;
}

FieldElem eval(const FieldCtx& F, const BiPoly& f, const FieldElem& x, const FieldElem& y) {
  FieldElem r = F.zero();
  for (std::size_t i = f.c.size(); i-- > 0;) {
    FieldElem row = F.zero();
    for (std::size_t j = f.c[i].size(); j-- > 0;) row = F.add(F.mul(row, y), f.c[i][j]);
    r = F.add(F.mul(r, x), row);
  }
  return r;
}

BiPoly add(const FieldCtx& F, const BiPoly& a, const BiPoly& b) {
  BiPoly r = a;
  for (std::size_t i = 0; i < b.c.size(); ++i)
    for (std::size_t j = 0; j < b.c[i].size(); ++j) set(r, i, j, F.add(at(r, i, j), b.c[i][j]));
  return trim(std::move(r));
}

BiPoly sub(const FieldCtx& F, const BiPoly& a, const BiPoly& b) {
  BiPoly r = a;
  for (std::size_t i = 0; i < b.c.size(); ++i)
    for (std::size_t j = 0; j < b.c[i].size(); ++j) set(r, i, j, F.sub(at(r, i, j), b.c[i][j]));
  return trim(std::move(r));
}

BiPoly scale(const FieldCtx& F, const BiPoly& a, const FieldElem& s) {
  BiPoly r = a;
  for (auto& row : r.c)
    for (auto& v : row) v = F.mul(v, s);
  return trim(std::move(r));
}

BiPoly mul(const FieldCtx& F, const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  if (is_zero(a) || is_zero(b)) return r;
  std::size_t dy = 0;
  for (const auto& row : a.c) dy = std::max(dy, row.size());
  std::size_t ey = 0;
  for (const auto& row : b.c) ey = std::max(ey, row.size());
  r.c.assign(a.c.size() + b.c.size() - 1, std::vector<FieldElem>(dy + ey, F.zero()));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < a.c[i].size(); ++j) {
      if (F.is_zero(a.c[i][j])) continue;
      for (std::size_t u = 0; u < b.c.size(); ++u)
        for (std::size_t v = 0; v < b.c[u].size(); ++v)
          r.c[i + u][j + v] = F.add(r.c[i + u][j + v], F.mul(a.c[i][j], b.c[u][v]));
    }
  return trim(std::move(r));
}

namespace {
// Taylor shift g(t) -> g(t + a).
std::vector<FieldElem> taylor_shift(const FieldCtx& F, std::vector<FieldElem> g, const FieldElem& a) {
  const int n = static_cast<int>(g.size());
  for (int i = 0; i < n; ++i)
    for (int j = n - 2; j >= i; --j) g[j] = F.add(g[j], F.mul(a, g[j + 1]));
  return g;
}
}  // namespace

BiPoly translate(const FieldCtx& F, const BiPoly& f, const FieldElem& a, const FieldElem& b) {
  BiPoly r = f;
  for (auto& row : r.c) row = taylor_shift(F, row, b);
  std::size_t dy = 0;
  for (const auto& row : r.c) dy = std::max(dy, row.size());
  for (auto& row : r.c) row.resize(dy, F.zero());
  for (std::size_t j = 0; j < dy; ++j) {
    std::vector<FieldElem> col(r.c.size());
    for (std::size_t i = 0; i < r.c.size(); ++i) col[i] = r.c[i][j];
    col = taylor_shift(F, col, a);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i][j] = col[i];
  }
  return trim(std::move(r));
}

UniPoly at_y0(const BiPoly& f) {
  UniPoly r;
  for (const auto& row : f.c) r.c.push_back(row.empty() ? FieldElem{} : row[0]);
  return poly::trim(std::move(r));
}

PolyOverPoly as_poly_in_y(const BiPoly& f) {
  std::size_t dy = 0;
  for (const auto& row : f.c) dy = std::max(dy, row.size());
  PolyOverPoly r(dy);
  for (std::size_t j = 0; j < dy; ++j) {
    UniPoly col;
    for (std::size_t i = 0; i < f.c.size(); ++i) col.c.push_back(j < f.c[i].size() ? f.c[i][j] : FieldElem{});
    r[j] = poly::trim(std::move(col));
  }
  return r;
}

UniPoly at_x(const FieldCtx& F, const BiPoly& f, const FieldElem& x0) {
  std::size_t dy = 0;
  for (const auto& row : f.c) dy = std::max(dy, row.size());
  UniPoly r;
  r.c.assign(dy, F.zero());
  FieldElem xp = F.one();
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    for (std::size_t j = 0; j < f.c[i].size(); ++j) r.c[j] = F.add(r.c[j], F.mul(xp, f.c[i][j]));
    xp = F.mul(xp, x0);
  }
  return poly::trim(std::move(r));
}

}  // namespace bipoly

}  // namespace ss5
