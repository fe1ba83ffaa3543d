#include "ss5/m8.hpp"

#include <algorithm>

namespace ss5::m8 {

namespace {

std::uint64_t A_of(std::uint32_t p) { return (static_cast<std::uint64_t>(p) * p - 1) / 4; }

void require_3mod4(std::uint32_t p) {
  if (p < 3 || !is_prime_u32(p)) throw PreconditionError("p must be an odd prime");
  if (p % 4 != 3) throw PreconditionError("p must be 3 mod 4, got " + std::to_string(p));
}

std::uint32_t small_binom(std::uint32_t n, std::uint32_t k, std::uint32_t p) {
  if (k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    num = num * ((n - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  return static_cast<std::uint32_t>(num * inv_mod(static_cast<std::uint32_t>(den), p) % p);
}

std::vector<std::uint32_t> binom_row(std::uint64_t n, std::uint32_t p) {
  std::vector<std::uint32_t> r(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) r[k] = binom_mod(n, k, p);
  return r;
}

// Coefficients used by b_p: C(A, i) and C(2A, m).
struct BpTables {
  std::uint64_t A;
  std::vector<std::uint32_t> ca, c2;
  std::vector<std::uint32_t> nz;  // indices with ca != 0
  explicit BpTables(std::uint32_t p) : A(A_of(p)), ca(binom_row(A, p)), c2(binom_row(2 * A, p)) {
    for (std::uint32_t i = 0; i <= A; ++i)
      if (ca[i]) nz.push_back(i);
  }
};

}  // namespace

std::uint32_t binom_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  while (n || k) {
    const std::uint32_t a = n % p, b = k % p;
    if (b > a) return 0;
    r = r * small_binom(a, b, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(r);
}

UniPoly hasse_polynomial(std::uint32_t p) {
  const auto F = FieldCtx::prime(p);
  const std::uint32_t n = (p - 1) / 2;
  UniPoly h;
  for (std::uint32_t j = 0; j <= n; ++j) {
    const std::uint64_t b = binom_mod(n, j, p);
    h.c.push_back(F.from_int(static_cast<std::int64_t>(b * b % p)));
  }
  return poly::trim(h);
}

FieldElem b_p_eval(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2) {
  const std::uint32_t p = F.p();
  const BpTables T(p);
  std::vector<FieldElem> p1(T.A + 1), p2(T.A + 1);
  p1[0] = p2[0] = F.one();
  for (std::uint64_t i = 1; i <= T.A; ++i) {
    p1[i] = F.mul(p1[i - 1], t1);
    p2[i] = F.mul(p2[i - 1], t2);
  }
  FieldElem total = F.zero();
  for (auto i : T.nz) {
    FieldElem inner = F.zero();
    for (auto j : T.nz) {
      const std::uint32_t s = static_cast<std::uint32_t>(static_cast<std::uint64_t>(T.c2[i + j]) * T.ca[j] % p);
      if (s) inner = F.add(inner, F.scale(p2[j], s));
    }
    total = F.add(total, F.mul(F.scale(p1[i], T.ca[i]), inner));
  }
  return total;
}

FieldElem c_p_eval(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2) {
  const std::uint32_t p = F.p();
  const std::uint32_t n = (p - 1) / 2;
  FieldElem total = F.zero();
  for (std::uint32_t j = 0; j <= n; ++j) {
    const std::uint64_t b = binom_mod(n, j, p);
    const FieldElem term = F.mul(F.pow(t1, static_cast<std::uint64_t>(n - j)), F.pow(t2, static_cast<std::uint64_t>(j)));
    total = F.add(total, F.scale(term, static_cast<std::uint32_t>(b * b % p)));
  }
  return n % 2 ? F.neg(total) : total;
}

BiPoly b_p_poly(std::uint32_t p) {
  const auto F = FieldCtx::prime(p);
  const BpTables T(p);
  BiPoly r;
  for (auto i : T.nz)
    for (auto j : T.nz) {
      const std::uint64_t v = static_cast<std::uint64_t>(T.c2[i + j]) * T.ca[i] % p * T.ca[j] % p;
      if (v) bipoly::set(r, i, j, F.from_int(static_cast<std::int64_t>(v)));
    }
  return bipoly::trim(r);
}

BiPoly c_p_poly(std::uint32_t p) {
  const auto F = FieldCtx::prime(p);
  const std::uint32_t n = (p - 1) / 2;
  BiPoly r;
  for (std::uint32_t j = 0; j <= n; ++j) {
    const std::uint64_t b = binom_mod(n, j, p);
    FieldElem v = F.from_int(static_cast<std::int64_t>(b * b % p));
    if (n % 2) v = F.neg(v);
    if (!F.is_zero(v)) bipoly::set(r, n - j, j, v);
  }
  return bipoly::trim(r);
}

UniPoly big_B_poly(std::uint32_t p) {
  const auto F = FieldCtx::prime(p);
  const std::uint64_t A = A_of(p);
  UniPoly B;
  B.c.assign(2 * A + 1, F.zero());
  for (std::uint64_t k = 0; k <= A; ++k) {
    std::uint64_t v = static_cast<std::uint64_t>(binom_mod(2 * A, 2 * k, p)) * binom_mod(A, k, p) % p;
    if (k % 2 && v) v = p - v;
    B.c[2 * k] = F.from_int(static_cast<std::int64_t>(v));
  }
  return poly::trim(B);
}

std::vector<IntersectionPoint> intersection_points_fp(std::uint32_t p) {
  if (p < 3 || !is_prime_u32(p)) throw PreconditionError("p must be an odd prime");
  const auto F = FieldCtx::prime(p);
  const BpTables T(p);
  const std::uint32_t n = (p - 1) / 2;
  std::vector<std::uint32_t> hn(n + 1);
  for (std::uint32_t j = 0; j <= n; ++j) {
    const std::uint64_t b = binom_mod(n, j, p);
    hn[j] = static_cast<std::uint32_t>(b * b % p);
  }
  std::vector<IntersectionPoint> out;
  for (std::uint32_t t1 = 0; t1 < p; ++t1) {
    std::vector<std::uint64_t> pw(T.A + 1);
    pw[0] = 1;
    for (std::uint64_t i = 1; i <= T.A; ++i) pw[i] = pw[i - 1] * t1 % p;
    // b_p(t1, .) and c_p(t1, .) as polynomials in t2.
    UniPoly bt, ct;
    bt.c.assign(T.A + 1, F.zero());
    for (auto j : T.nz) {
      std::uint64_t s = 0;
      for (auto i : T.nz) s = (s + static_cast<std::uint64_t>(T.c2[i + j]) * T.ca[i] % p * pw[i]) % p;
      bt.c[j] = F.from_int(static_cast<std::int64_t>(s * T.ca[j] % p));
    }
    for (std::uint32_t j = 0; j <= n; ++j) {
      std::uint64_t v = static_cast<std::uint64_t>(hn[j]) * pw[n - j] % p;
      if (n % 2 && v) v = p - v;
      ct.c.push_back(F.from_int(static_cast<std::int64_t>(v)));
    }
    bt = poly::trim(bt);
    ct = poly::trim(ct);
    std::vector<FieldElem> rts;
    if (bt.is_zero() && ct.is_zero()) {
      for (std::uint32_t t2 = 0; t2 < p; ++t2) rts.push_back(F.from_int(t2));
    } else {
      rts = poly::roots(F, poly::gcd(F, bt, ct));
    }
    for (const auto& r : rts) {
      IntersectionPoint pt;
      pt.t1 = t1;
      pt.t2 = r.c[0];
      pt.valid = pt.t1 > 1 && pt.t2 > 1 && pt.t1 != pt.t2;
      out.push_back(pt);
    }
  }
  return out;
}

// ---------------------------------------------------------------- intersection multiplicity

namespace {

BiPoly shift_x(const BiPoly& f, int n) {
  BiPoly r;
  r.c.assign(n, {});
  r.c.insert(r.c.end(), f.c.begin(), f.c.end());
  return bipoly::trim(r);
}

BiPoly div_y(const BiPoly& f) {
  BiPoly r = f;
  for (auto& row : r.c)
    if (!row.empty()) row.erase(row.begin());
  return bipoly::trim(r);
}

int order_at_zero(const UniPoly& f) {
  int k = 0;
  while (f.c[k] == FieldElem{}) ++k;
  return k;
}

// Fulton's algorithm at the origin.
int fulton(const FieldCtx& F, BiPoly f, BiPoly g) {
  const FieldElem z = F.zero();
  int acc = 0;
  for (;;) {
    if (bipoly::is_zero(f) || bipoly::is_zero(g)) throw NonIsolatedIntersection("a curve is identically zero");
    if (!F.is_zero(bipoly::eval(F, f, z, z)) || !F.is_zero(bipoly::eval(F, g, z, z))) return acc;
    UniPoly fx = poly::trim(bipoly::at_y0(f)), gx = poly::trim(bipoly::at_y0(g));
    if (fx.is_zero() && gx.is_zero()) throw NonIsolatedIntersection("common component through the point");
    if (fx.is_zero()) {
      std::swap(f, g);
      std::swap(fx, gx);
    }
    if (gx.is_zero()) {
      // I(f, y g') = I(f, y) + I(f, g').
      acc += order_at_zero(fx);
      g = div_y(g);
      continue;
    }
    if (fx.degree() > gx.degree()) {
      std::swap(f, g);
      std::swap(fx, gx);
    }
    const int d = gx.degree() - fx.degree();
    g = bipoly::trim(bipoly::sub(F, bipoly::scale(F, g, fx.lead()), bipoly::scale(F, shift_x(f, d), gx.lead())));
  }
}

BiPoly truncate(const BiPoly& f, int T) {
  BiPoly r;
  for (int i = 0; i <= std::min(T, f.deg_x()); ++i)
    for (int j = 0; i + j <= T && j < static_cast<int>(f.c[i].size()); ++j)
      if (!(f.c[i][j] == FieldElem{})) bipoly::set(r, i, j, f.c[i][j]);
  return bipoly::trim(r);
}

int total_degree(const BiPoly& f) {
  int d = 0;
  for (int i = 0; i <= f.deg_x(); ++i)
    for (int j = 0; j < static_cast<int>(f.c[i].size()); ++j)
      if (!(f.c[i][j] == FieldElem{})) d = std::max(d, i + j);
  return d;
}

}  // namespace

// Works on truncations of growing total degree T: if the truncated pair has
// intersection number n < T, the dropped terms lie in m^(n+1), inside
// m (f, g), so by Nakayama the local ideals agree.
int intersection_multiplicity(const FieldCtx& F, const BiPoly& f0, const BiPoly& g0, const FieldElem& x0,
                              const FieldElem& y0) {
  const BiPoly f = bipoly::trim(bipoly::translate(F, f0, x0, y0));
  const BiPoly g = bipoly::trim(bipoly::translate(F, g0, x0, y0));
  const int D = std::max(total_degree(f), total_degree(g));
  for (int T = 8;; T *= 2) {
    const bool exact = T >= D;
    try {
      const int n = fulton(F, truncate(f, T), truncate(g, T));
      if (exact || n < T) return n;
    } catch (const NonIsolatedIntersection&) {
      if (exact) throw;
    }
  }
}

// ---------------------------------------------------------------- parameters

Params find_supersingular_params(std::uint32_t p, int max_degree) {
  require_3mod4(p);
  Params prm;
  prm.p = p;
  for (const auto& pt : intersection_points_fp(p)) {
    if (!pt.valid) continue;
    prm.F = FieldCtx::prime(p);
    prm.t1 = prm.F.from_int(pt.t1);
    prm.t2 = prm.F.from_int(pt.t2);
    prm.route = "rational-intersection";
    return prm;
  }
  const auto Fp = FieldCtx::prime(p);
  const UniPoly tm1 = poly::from_ints(Fp, {-1, 1}), tp1 = poly::from_ints(Fp, {1, 1});
  // Distinct-degree search: stop at the first degree with a factor other than t -+ 1.
  const UniPoly B = big_B_poly(p);
  const UniPoly t = poly::x(Fp);
  int best = 0;
  std::vector<UniPoly> cands;
  std::vector<UniPoly> by_degree{UniPoly{}};
  UniPoly frob = t;
  for (int d = 1; d <= max_degree && best == 0; ++d) {
    frob = poly::powmod(Fp, frob, std::uint64_t{p}, B);
    UniPoly g = poly::gcd(Fp, B, poly::sub(Fp, frob, t));
    by_degree.push_back(g);
    for (int e = 1; e < d; ++e)
      if (d % e == 0) g = poly::div_exact(Fp, g, poly::gcd(Fp, g, by_degree[e]));
    if (d == 1)
      for (const auto& lin : {tm1, tp1})
        if (poly::mod(Fp, g, lin).degree() < 0) g = poly::div_exact(Fp, g, lin);
    if (g.degree() <= 0) continue;
    best = d;
    for (const auto& fa : poly::factor(Fp, g)) cands.push_back(fa.f);
  }
  if (best == 0)
    throw std::runtime_error("no root of B(t) other than +-1 within extension degree " + std::to_string(max_degree));
  const FieldCtx E = make_extension(p, best);
  std::optional<FieldElem> tc;
  for (const auto& f : cands)
    for (const auto& r : poly::roots_in_extension(Fp, f, E))
      if (!tc || E.less(r, *tc)) tc = r;
  prm.F = E;
  prm.t1 = *tc;
  prm.t2 = E.neg(*tc);
  prm.route = "antidiagonal";
  return prm;
}

std::vector<int> eigenspace_h1_dims(int m, int deg_L, const std::vector<int>& branch_mults) {
  std::vector<int> r;
  for (int i = 0; i < m; ++i) {
    int d = i * deg_L;
    for (int mult : branch_mults) d += (i * mult) / m;
    r.push_back(std::max(0, -d - 1));
  }
  return r;
}

std::vector<int> m8_eigenspace_h1_dims() {
  // D = 2[0] + 2[1] + 2[oo] + [t1] + [t2], L = O(-2[oo]).
  return eigenspace_h1_dims(4, -2, {2, 2, 2, 1, 1});
}

// ---------------------------------------------------------------- components and certificates

Components build_components(const Params& prm) {
  const FieldCtx& F = prm.F;
  const FieldElem one = F.one();
  Components c;
  c.C1 = m8_curve(F, prm.t1, prm.t2);
  const FieldElem lambda = F.div(prm.t2, prm.t1);
  c.E1_legendre = legendre_curve(F, lambda);
  // t1 x (x-1)(x-lambda)
  const UniPoly leg = poly::mul(F, poly::from_ints(F, {0, -1, 1}), UniPoly{{F.neg(lambda), one}});
  c.E1 = weierstrass_curve(F, poly::scale(F, leg, prm.t1));
  c.Y = pullback_curve(F, prm.t1, prm.t2);
  const FieldElem r2 = F.div(F.sub(one, prm.t1), F.sub(one, prm.t2));
  if (auto s = F.sqrt(r2)) {
    c.r_field = F;
    c.r = *s;
  } else {
    c.r_field = make_extension(F.p(), 2 * F.k());
    c.r = *c.r_field.sqrt(Embedding(F, c.r_field)(r2));
  }
  c.delta = F.mul(F.sub(prm.t2, prm.t1), F.sub(prm.t2, one));
  c.E2 = weierstrass_curve(F, UniPoly{{F.zero(), F.neg(F.mul(c.delta, r2)), F.zero(), c.delta}});
  c.E2_untwisted = weierstrass_curve(F, UniPoly{{F.zero(), F.neg(r2), F.zero(), one}});
  return c;
}

Certificate certify_params(const Params& prm, Mode mode, const CountOptions& opt) {
  Certificate cert;
  cert.params = prm;
  const FieldCtx& F = prm.F;
  cert.b_value = b_p_eval(F, prm.t1, prm.t2);
  cert.c_value = c_p_eval(F, prm.t1, prm.t2);
  const BigInt q3 = F.order() * F.order() * F.order();
  const bool fits = q3 <= BigInt(opt.budget);
  bool unconditional = false;
  if (mode == Mode::Auto) unconditional = fits;
  if (mode == Mode::Unconditional) {
    unconditional = fits;
    cert.budget_exceeded = !fits;
  }
  cert.mode = unconditional ? "unconditional" : "conditional";
  if (!unconditional) return cert;

  const Components comp = build_components(prm);
  const std::pair<const char*, const CurveModel*> parts[] = {{"C1", &comp.C1}, {"E1", &comp.E1}, {"E2", &comp.E2}};
  for (const auto& [name, model] : parts) {
    ComponentReport rep{name, *model, lpolynomial(*model, opt), {}};
    rep.np = newton_polygon(rep.L);
    cert.components.push_back(rep);
  }
  cert.supersingular = std::all_of(cert.components.begin(), cert.components.end(),
                                   [](const ComponentReport& r) { return r.np.is_supersingular(); });
  const LPolynomial prod = cert.components[0].L * cert.components[1].L * cert.components[2].L;
  const LPolynomial prod_u =
      cert.components[0].L * lpolynomial(comp.E1_legendre, opt) * lpolynomial(comp.E2_untwisted, opt);
  for (int k = 1; k <= 2; ++k) {
    cert.y_counts.push_back(count_points(comp.Y, k, opt));
    cert.predicted_counts.push_back(prod.predicted_count(k));
    cert.predicted_counts_untwisted.push_back(prod_u.predicted_count(k));
  }
  cert.prym_match = true;
  for (int k = 0; k < 2; ++k)
    if (BigInt(cert.y_counts[k]) != cert.predicted_counts[k]) cert.prym_match = false;
  return cert;
}

Certificate verify_theorem12(std::uint32_t p, Mode mode, const CountOptions& opt, int max_degree) {
  return certify_params(find_supersingular_params(p, max_degree), mode, opt);
}

}  // namespace ss5::m8
