#include "ss5/curves.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <limits>
#include <thread>
#include <unordered_map>

namespace ss5 {

const std::array<std::array<int, 3>, 15> kQuarticMonomials = {{{4, 0, 0},
                                                               {3, 1, 0},
                                                               {3, 0, 1},
                                                               {2, 2, 0},
                                                               {2, 1, 1},
                                                               {2, 0, 2},
                                                               {1, 3, 0},
                                                               {1, 2, 1},
                                                               {1, 1, 2},
                                                               {1, 0, 3},
                                                               {0, 4, 0},
                                                               {0, 3, 1},
                                                               {0, 2, 2},
                                                               {0, 1, 3},
                                                               {0, 0, 4}}};

int quartic_index(int i, int j, int k) {
  for (int n = 0; n < 15; ++n)
    if (kQuarticMonomials[n] == std::array<int, 3>{i, j, k}) return n;
  throw CurveError("not a quartic monomial");
}

namespace {

bool is_zero_or_one(const FieldCtx& F, const FieldElem& a) { return F.is_zero(a) || F.is_one(a); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw CurveError(msg);
}

UniPoly legendre_poly(const FieldCtx& F, const FieldElem& lambda) {
  // x(x-1)(x-lambda)
  UniPoly f = poly::mul(F, poly::from_ints(F, {0, -1, 1}), UniPoly{{F.neg(lambda), F.one()}});
  return f;
}

}  // namespace

int CurveModel::genus() const {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EllipticLegendre> || std::is_same_v<T, EllipticWeierstrass>) return 1;
        if constexpr (std::is_same_v<T, HyperellipticSextic>) return 2;
        if constexpr (std::is_same_v<T, PlaneQuartic> || std::is_same_v<T, SuperellipticM8>) return 3;
        if constexpr (std::is_same_v<T, Genus5Pullback>) return 5;
        return 0;
      },
      data);
}

std::string CurveModel::kind() const {
  static const char* names[] = {"EllipticLegendre", "EllipticWeierstrass", "HyperellipticSextic",
                                "PlaneQuartic",     "SuperellipticM8",     "Genus5Pullback"};
  return names[data.index()];
}

std::string CurveModel::describe() const {
  return std::visit(
      [&](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EllipticLegendre>)
          return "y^2 = x(x-1)(x-" + F.encode(m.lambda) + ")";
        else if constexpr (std::is_same_v<T, EllipticWeierstrass> || std::is_same_v<T, HyperellipticSextic>)
          return "y^2 = " + poly::to_string(F, m.f);
        else if constexpr (std::is_same_v<T, PlaneQuartic>)
          return mpoly::to_string(F, quartic_form(F, m)) + " = 0";
        else if constexpr (std::is_same_v<T, SuperellipticM8>)
          return "y^4 = x^2(x-1)^2(x-" + F.encode(m.t1) + ")(x-" + F.encode(m.t2) + ")";
        else
          return "u^4 = (w^2-1)^2(w^2-" + F.encode(m.t1) + ")(w^2-" + F.encode(m.t2) + ")";
      },
      data);
}

CurveModel legendre_curve(const FieldCtx& F, const FieldElem& lambda) {
  require(!is_zero_or_one(F, lambda), "Legendre parameter must avoid 0 and 1");
  return {F, EllipticLegendre{lambda}};
}

CurveModel weierstrass_curve(const FieldCtx& F, const UniPoly& f) {
  require(f.degree() == 3 || f.degree() == 4, "Weierstrass model needs degree 3 or 4");
  require(poly::is_squarefree(F, f), "Weierstrass polynomial is not separable");
  return {F, EllipticWeierstrass{f}};
}

CurveModel hyperelliptic_curve(const FieldCtx& F, const UniPoly& f) {
  require(f.degree() == 5 || f.degree() == 6, "genus 2 model needs degree 5 or 6");
  require(poly::is_squarefree(F, f), "hyperelliptic polynomial is not separable");
  return {F, HyperellipticSextic{f}};
}

CurveModel plane_quartic(const FieldCtx& F, const std::array<FieldElem, 15>& a) {
  bool any = false;
  for (auto& v : a)
    if (!F.is_zero(v)) any = true;
  require(any, "zero quartic");
  return {F, PlaneQuartic{a}};
}

CurveModel plane_quartic(const FieldCtx& F, const MPoly& form) {
  PlaneQuartic q;
  for (const auto& [e, c] : form.t) {
    require(e[3] == 0 && e[0] + e[1] + e[2] == 4, "not a ternary quartic form");
    q.a[quartic_index(e[0], e[1], e[2])] = c;
  }
  return plane_quartic(F, q.a);
}

CurveModel m8_curve(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2) {
  require(!is_zero_or_one(F, t1) && !is_zero_or_one(F, t2) && !(t1 == t2), "parameters must be distinct and avoid 0, 1");
  return {F, SuperellipticM8{t1, t2}};
}

CurveModel pullback_curve(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2) {
  require(!is_zero_or_one(F, t1) && !is_zero_or_one(F, t2) && !(t1 == t2), "parameters must be distinct and avoid 0, 1");
  return {F, Genus5Pullback{t1, t2}};
}

MPoly quartic_form(const FieldCtx& F, const PlaneQuartic& q) {
  MPoly r;
  for (int n = 0; n < 15; ++n) {
    const auto& e = kQuarticMonomials[n];
    r = mpoly::add(F, r,
                   mpoly::term(F, q.a[n],
                               {static_cast<std::uint16_t>(e[0]), static_cast<std::uint16_t>(e[1]),
                                static_cast<std::uint16_t>(e[2]), 0}));
  }
  return r;
}

// ---------------------------------------------------------------- counting

namespace {

// Number of x with x^4 = v in E, for nonzero v, with the exponent work
// pushed down to the smallest subfield that sees the character.
class FourthPowerTest {
 public:
  explicit FourthPowerTest(const FieldCtx& E) : E_(E) {
    const std::uint64_t qm1 = static_cast<std::uint64_t>((E.order() - 1) % 4);
    g_ = std::gcd<std::uint64_t>(4, qm1 == 0 ? 4 : qm1);
    const std::uint32_t p = E.p();
    if (g_ == 4) {
      if (p % 4 == 1) {
        j_ = 1;
        table_.assign(p, 0);
        for (std::uint64_t x = 1; x < p; ++x) table_[pow_mod(static_cast<std::uint32_t>(x), 4, p)] = 1;
      } else {
        j_ = 2;
        e_ = (static_cast<std::uint64_t>(p) * p - 1) / 4;
      }
    }
  }

  std::uint64_t operator()(const FieldElem& v) const {
    if (g_ == 1) return 1;
    if (g_ == 2) return E_.quadratic_character(v) == 1 ? 2 : 0;
    if (j_ == 1) return table_[E_.norm(v)] ? 4 : 0;
    return E_.is_one(E_.pow(E_.relative_norm(v, 2), e_)) ? 4 : 0;
  }

  std::uint64_t g() const { return g_; }

 private:
  const FieldCtx& E_;
  std::uint64_t g_ = 1;
  int j_ = 1;
  std::uint64_t e_ = 0;
  std::vector<std::uint8_t> table_;
};

// Sum of fn over E, grouping x with its conjugates under x -> x^(p^d).
template <class Fn>
std::uint64_t orbit_sum(const FieldCtx& E, int d, int jobs, const Fn& fn) {
  const std::uint64_t Q = E.order_u64();
  const int m = E.k() / d;
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::min<std::uint64_t>(Q, 64))));
  std::vector<std::uint64_t> partial(jobs, 0);
  auto work = [&](int t) {
    const std::uint64_t lo = Q * t / jobs, hi = Q * (t + 1) / jobs;
    std::uint64_t acc = 0;
    FieldElem x = E.from_index(lo);
    for (std::uint64_t i = lo; i < hi; ++i) {
      std::uint64_t weight = m;
      bool skip = false;
      if (m > 1) {
        FieldElem y = x;
        for (int s = 1; s < m; ++s) {
          y = E.frobenius(y, d);
          if (y == x) {
            weight = s;
            break;
          }
          if (E.less(y, x)) {
            skip = true;
            break;
          }
        }
      }
      if (!skip) acc += weight * fn(x);
      for (int c = 0; c < E.k(); ++c) {
        if (++x.c[c] < E.p()) break;
        x.c[c] = 0;
      }
    }
    partial[t] = acc;
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> th;
    for (int t = 0; t < jobs; ++t) th.emplace_back(work, t);
    for (auto& h : th) h.join();
  }
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::uint64_t count_hyperelliptic(const FieldCtx& E, int d, const UniPoly& f, int jobs) {
  std::uint64_t affine = orbit_sum(E, d, jobs, [&](const FieldElem& x) -> std::uint64_t {
    return 1 + E.quadratic_character(poly::eval(E, f, x));
  });
  std::uint64_t inf = f.degree() % 2 ? 1 : 1 + E.quadratic_character(f.lead());
  return affine + inf;
}

// Distinct roots in E of sum a[j] y^j, j <= 4; returns q when identically zero.
std::uint64_t quartic_roots(const FieldCtx& E, const std::array<FieldElem, 5>& a) {
  int n = 4;
  while (n >= 0 && E.is_zero(a[n])) --n;
  if (n < 0) return E.order_u64();
  if (n == 0) return 0;
  if (n == 1) return 1;
  const FieldElem li = E.inv(a[n]);
  std::array<FieldElem, 5> m{};
  for (int j = 0; j < n; ++j) m[j] = E.mul(a[j], li);
  // Residues are arrays of n coefficients.
  using Res = std::array<FieldElem, 4>;
  auto mulmod = [&](const Res& u, const Res& v) {
    std::array<FieldElem, 7> t{};
    for (int i = 0; i < n; ++i) {
      if (E.is_zero(u[i])) continue;
      for (int j = 0; j < n; ++j) t[i + j] = E.add(t[i + j], E.mul(u[i], v[j]));
    }
    for (int i = 2 * n - 2; i >= n; --i) {
      if (E.is_zero(t[i])) continue;
      for (int j = 0; j < n; ++j) t[i - n + j] = E.sub(t[i - n + j], E.mul(t[i], m[j]));
      t[i] = E.zero();
    }
    Res r{};
    for (int i = 0; i < n; ++i) r[i] = t[i];
    return r;
  };
  Res y{};
  y[1] = E.one();
  Res yp{};
  yp[0] = E.one();
  {
    Res b = y;
    std::uint64_t e = E.p();
    while (e) {
      if (e & 1) yp = mulmod(yp, b);
      e >>= 1;
      if (e) b = mulmod(b, b);
    }
  }
  // Powers of y^p, used to push the semilinear Frobenius through.
  std::array<Res, 4> ypow{};
  ypow[0] = Res{};
  ypow[0][0] = E.one();
  for (int j = 1; j < n; ++j) ypow[j] = mulmod(ypow[j - 1], yp);
  Res cur = yp;
  for (int s = 1; s < E.k(); ++s) {
    Res nxt{};
    for (int j = 0; j < n; ++j) {
      if (E.is_zero(cur[j])) continue;
      const FieldElem c = E.frobenius(cur[j]);
      for (int i = 0; i < n; ++i) nxt[i] = E.add(nxt[i], E.mul(c, ypow[j][i]));
    }
    cur = nxt;
  }
  cur[1] = E.sub(cur[1], E.one());
  UniPoly h, mm;
  for (int i = 0; i < n; ++i) h.c.push_back(cur[i]);
  for (int i = 0; i < n; ++i) mm.c.push_back(m[i]);
  mm.c.push_back(E.one());
  h = poly::trim(std::move(h));
  if (h.is_zero()) return n;
  return poly::gcd(E, mm, h).degree();
}

std::uint64_t count_quartic(const FieldCtx& E, int d, const PlaneQuartic& q, int jobs) {
  // Coefficients grouped by power of y: a_j(x) = sum_i q[x^i y^j z^(4-i-j)] x^i.
  std::array<std::array<FieldElem, 5>, 5> cx{};
  for (int n = 0; n < 15; ++n) {
    const auto& e = kQuarticMonomials[n];
    cx[e[1]][e[0]] = q.a[n];
  }
  std::uint64_t affine = orbit_sum(E, d, jobs, [&](const FieldElem& x) -> std::uint64_t {
    std::array<FieldElem, 5> a{};
    for (int j = 0; j <= 4; ++j) {
      FieldElem v = E.zero();
      for (int i = 4 - j; i >= 0; --i) v = E.add(E.mul(v, x), cx[j][i]);
      a[j] = v;
    }
    return quartic_roots(E, a);
  });
  // z = 0: F(t, 1, 0) plus the point [1:0:0].
  std::array<FieldElem, 5> line{};
  bool all_zero = true;
  for (int i = 0; i <= 4; ++i) {
    line[i] = q.a[quartic_index(i, 4 - i, 0)];
    if (!E.is_zero(line[i])) all_zero = false;
  }
  std::uint64_t inf;
  if (all_zero) {
    inf = E.order_u64() + 1;
  } else {
    inf = quartic_roots(E, line);
    if (E.is_zero(q.a[quartic_index(4, 0, 0)])) ++inf;
  }
  return affine + inf;
}

std::uint64_t count_m8_generic(const FieldCtx& E, int d, const FieldElem& t1, const FieldElem& t2, int jobs) {
  const FourthPowerTest fourth(E);
  const FieldElem one = E.one();
  std::uint64_t affine = orbit_sum(E, d, jobs, [&](const FieldElem& x) -> std::uint64_t {
    const FieldElem xm1 = E.sub(x, one);
    const FieldElem a = E.mul(x, xm1);
    const FieldElem v = E.mul(E.mul(a, a), E.mul(E.sub(x, t1), E.sub(x, t2)));
    if (E.is_zero(v)) return 0;
    return fourth(v);
  });
  std::uint64_t n = affine + 2 + 2;  // x = t1, t2 and the two points at infinity
  if (E.is_square(E.mul(t1, t2))) n += 2;
  if (E.is_square(E.mul(E.sub(one, t1), E.sub(one, t2)))) n += 2;
  return n;
}

std::uint64_t count_pullback(const FieldCtx& E, int d, const FieldElem& t1, const FieldElem& t2, int jobs) {
  const FourthPowerTest fourth(E);
  const FieldElem one = E.one();
  std::uint64_t affine = orbit_sum(E, d, jobs, [&](const FieldElem& w) -> std::uint64_t {
    const FieldElem w2 = E.mul(w, w);
    const FieldElem a = E.sub(w2, one);
    const FieldElem v = E.mul(E.mul(a, a), E.mul(E.sub(w2, t1), E.sub(w2, t2)));
    if (E.is_zero(v)) return 0;
    return fourth(v);
  });
  std::uint64_t n = affine + fourth.g();
  if (E.is_square(E.mul(E.sub(one, t1), E.sub(one, t2)))) n += 4;
  if (E.is_square(t1)) n += 2;
  if (E.is_square(t2)) n += 2;
  return n;
}

}  // namespace

namespace detail {

bool tower_applicable(const FieldCtx& F) {
  if (F.k() > 2 || F.p() >= 128) return false;
  return F.order() % 12 == 1;
}

std::uint64_t count_m8_flat(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2, int k, int jobs) {
  const FieldCtx E = make_extension(F.p(), F.k() * k);
  const Embedding emb(F, E);
  return count_m8_generic(E, F.k(), emb(t1), emb(t2), jobs);
}

// Elements of F_q (q = p or p^2, p < 128) packed one digit per byte.
std::uint64_t count_m8_cubic_tower(const FieldCtx& F, const FieldElem& t1, const FieldElem& t2, int jobs) {
  if (!tower_applicable(F)) throw CurveError("cubic tower counter not applicable");
  const std::uint32_t p = F.p();
  const int d = F.k();
  const std::uint32_t q = static_cast<std::uint32_t>(F.order_u64());
  const std::size_t span = d == 1 ? 256 : 65536;
  auto pack = [&](const FieldElem& a) -> std::uint32_t { return a.c[0] | (d == 2 ? a.c[1] << 8 : 0u); };
  const std::uint32_t bias = d == 1 ? (128 - p) : ((128 - p) | ((128 - p) << 8));
  auto add = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    const std::uint32_t s = a + b;
    const std::uint32_t flags = ((s + bias) & 0x8080u) >> 7;
    return s - flags * p;
  };
  auto neg = [&](std::uint32_t a) -> std::uint32_t {
    const std::uint32_t lo = a & 0xff, hi = (a >> 8) & 0xff;
    return (lo ? p - lo : 0) | ((hi ? p - hi : 0) << 8);
  };

  // Elements in index order, and a primitive element for logarithms.
  std::vector<std::uint32_t> elems(q);
  for (std::uint32_t i = 0; i < q; ++i) elems[i] = pack(F.from_index(i));
  std::vector<std::uint32_t> pos(span, 0);
  for (std::uint32_t i = 0; i < q; ++i) pos[elems[i]] = i;

  std::vector<std::uint64_t> primes;
  {
    std::uint64_t n = q - 1;
    for (std::uint64_t f = 2; f * f <= n; ++f)
      if (n % f == 0) {
        primes.push_back(f);
        while (n % f == 0) n /= f;
      }
    if (n > 1) primes.push_back(n);
  }
  FieldElem gamma{};
  for (std::uint32_t i = 2; i < q; ++i) {
    FieldElem c = F.from_index(i);
    bool prim = true;
    for (auto r : primes)
      if (F.is_one(F.pow(c, static_cast<std::uint64_t>((q - 1) / r)))) {
        prim = false;
        break;
      }
    if (prim) {
      gamma = c;
      break;
    }
  }
  std::vector<std::uint32_t> expt(q - 1);
  std::vector<std::uint32_t> logt(span, 0);
  {
    FieldElem cur = F.one();
    for (std::uint32_t e = 0; e + 1 < q; ++e) {
      const std::uint32_t v = pack(cur);
      expt[e] = v;
      logt[v] = e;
      cur = F.mul(cur, gamma);
    }
  }
  auto mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (!a || !b) return 0;
    std::uint32_t e = logt[a] + logt[b];
    if (e >= q - 1) e -= q - 1;
    return expt[e];
  };
  // mu = gamma is a non-cube, so theta^3 = mu defines F_{q^3}.
  const std::uint32_t mu = pack(gamma);
  const std::uint32_t mu2 = mul(mu, mu);
  const std::uint32_t three_mu = mul(pack(F.from_int(3)), mu);
  std::vector<std::uint32_t> cube(q);
  for (std::uint32_t i = 0; i < q; ++i) cube[i] = mul(elems[i], mul(elems[i], elems[i]));

  const std::uint32_t T1 = pack(t1), T2 = pack(t2), ONE = pack(F.one());
  std::array<std::vector<std::uint32_t>, 4> shifted;  // index of u - a
  const std::uint32_t shifts[4] = {0, ONE, T1, T2};
  for (int s = 0; s < 4; ++s) {
    shifted[s].resize(q);
    const std::uint32_t na = neg(shifts[s]);
    for (std::uint32_t i = 0; i < q; ++i) shifted[s][i] = pos[add(elems[i], na)];
  }

  // Multiplicity of each norm form x^3 - L x + K over (v, w) != (0, 0).
  std::vector<std::uint32_t> mult(static_cast<std::size_t>(q) * q, 0);
  for (std::uint32_t iv = 0; iv < q; ++iv) {
    const std::uint32_t v = elems[iv];
    const std::uint32_t mv3 = mul(mu, cube[iv]);
    const std::uint32_t tv = mul(three_mu, v);
    for (std::uint32_t iw = 0; iw < q; ++iw) {
      if (iv == 0 && iw == 0) continue;
      const std::uint32_t K = add(mv3, mul(mu2, cube[iw]));
      const std::uint32_t L = mul(tv, elems[iw]);
      ++mult[static_cast<std::size_t>(pos[K]) * q + pos[L]];
    }
  }

  auto slice = [&](std::uint32_t iK, std::uint32_t iL, std::vector<std::uint8_t>& chi) -> std::uint64_t {
    const std::uint32_t K = elems[iK], nL = neg(elems[iL]);
    for (std::uint32_t i = 0; i < q; ++i) {
      const std::uint32_t G = add(add(cube[i], mul(nL, elems[i])), K);
      chi[i] = static_cast<std::uint8_t>(logt[G] & 3);
    }
    std::uint64_t hits = 0;
    for (std::uint32_t i = 0; i < q; ++i) {
      const unsigned e = 2u * chi[shifted[0][i]] + 2u * chi[shifted[1][i]] + chi[shifted[2][i]] + chi[shifted[3][i]];
      hits += (e & 3) == 0;
    }
    return hits;
  };

  jobs = std::max(1, jobs);
  std::vector<std::uint64_t> partial(jobs, 0);
  auto work = [&](int t) {
    std::vector<std::uint8_t> chi(q);
    std::uint64_t acc = 0;
    for (std::uint32_t iK = t; iK < q; iK += jobs)
      for (std::uint32_t iL = 0; iL < q; ++iL) {
        const std::uint32_t m = mult[static_cast<std::size_t>(iK) * q + iL];
        if (m) acc += m * slice(iK, iL, chi);
      }
    partial[t] = acc;
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> th;
    for (int t = 0; t < jobs; ++t) th.emplace_back(work, t);
    for (auto& h : th) h.join();
  }
  std::uint64_t hits = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});

  // The slice v = w = 0 is F_q itself: norm of u - a is (u - a)^3.
  for (std::uint32_t i = 0; i < q; ++i) {
    const std::uint32_t u = elems[i];
    if (u == 0 || u == ONE || u == T1 || u == T2) continue;
    unsigned e = 0;
    const unsigned wts[4] = {2, 2, 1, 1};
    for (int s = 0; s < 4; ++s) e += wts[s] * 3 * (logt[elems[shifted[s][i]]] & 3);
    hits += (e & 3) == 0;
  }
  std::uint64_t n = 4 * hits + 4;
  if (F.is_square(F.mul(t1, t2))) n += 2;
  if (F.is_square(F.mul(F.sub(F.one(), t1), F.sub(F.one(), t2)))) n += 2;
  return n;
}

}  // namespace detail

std::uint64_t count_points(const CurveModel& C, int k, const CountOptions& opt) {
  if (k < 1) throw CurveError("extension degree must be positive");
  const FieldCtx& F = C.F;
  BigInt Q = 1;
  for (int i = 0; i < k; ++i) Q *= F.order();
  if (Q > BigInt(opt.budget))
    throw BudgetExceeded("counting over a field of size " + Q.str() + " exceeds budget " + std::to_string(opt.budget));
  if (F.k() * k > kMaxDegree) throw BudgetExceeded("extension degree exceeds representable range");

  if (const auto* m = std::get_if<SuperellipticM8>(&C.data)) {
    if (k == 3 && Q > BigInt(2'000'000) && detail::tower_applicable(F))
      return detail::count_m8_cubic_tower(F, m->t1, m->t2, opt.jobs);
  }
  const FieldCtx E = make_extension(F.p(), F.k() * k);
  const Embedding emb(F, E);
  const int d = F.k();
  return std::visit(
      [&](const auto& m) -> std::uint64_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EllipticLegendre>) {
          return count_hyperelliptic(E, d, poly::embed(emb, legendre_poly(F, m.lambda)), opt.jobs);
        } else if constexpr (std::is_same_v<T, EllipticWeierstrass> || std::is_same_v<T, HyperellipticSextic>) {
          return count_hyperelliptic(E, d, poly::embed(emb, m.f), opt.jobs);
        } else if constexpr (std::is_same_v<T, PlaneQuartic>) {
          PlaneQuartic lifted;
          for (int n = 0; n < 15; ++n) lifted.a[n] = emb(m.a[n]);
          return count_quartic(E, d, lifted, opt.jobs);
        } else if constexpr (std::is_same_v<T, SuperellipticM8>) {
          return count_m8_generic(E, d, emb(m.t1), emb(m.t2), opt.jobs);
        } else {
          return count_pullback(E, d, emb(m.t1), emb(m.t2), opt.jobs);
        }
      },
      C.data);
}

std::vector<std::uint64_t> count_points_upto(const CurveModel& C, int kmax, const CountOptions& opt) {
  std::vector<std::uint64_t> r;
  for (int k = 1; k <= kmax; ++k) r.push_back(count_points(C, k, opt));
  return r;
}

// ---------------------------------------------------------------- L-polynomials

Rational Rational::make(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  return {n / g, d / g};
}

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

namespace {

std::int64_t to_i64(const BigInt& v, const char* what) {
  if (v > BigInt(std::numeric_limits<std::int64_t>::max()) || v < BigInt(std::numeric_limits<std::int64_t>::min()))
    throw InvalidCounts(std::string(what) + " does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

BigInt ipow(const BigInt& b, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

std::int64_t LPolynomial::q() const {
  std::int64_t r = 1;
  for (int i = 0; i < a; ++i) r *= p;
  return r;
}

LPolynomial LPolynomial::from_counts(std::uint32_t p, int a, int g, const std::vector<std::uint64_t>& counts) {
  if (static_cast<int>(counts.size()) < g) throw InvalidCounts("need counts over the first g extensions");
  LPolynomial L;
  L.p = p;
  L.a = a;
  L.g = g;
  const BigInt q = ipow(BigInt(p), a);
  std::vector<BigInt> s(g + 1), c(2 * g + 1);
  for (int k = 1; k <= g; ++k) s[k] = ipow(q, k) + 1 - BigInt(counts[k - 1]);
  c[0] = 1;
  for (int j = 1; j <= g; ++j) {
    BigInt acc = 0;
    for (int i = 1; i <= j; ++i) acc += s[i] * c[j - i];
    if (acc % j != 0) throw InvalidCounts("point counts are not consistent with an L-polynomial");
    c[j] = -acc / j;
  }
  for (int j = 0; j < g; ++j) c[2 * g - j] = ipow(q, g - j) * c[j];
  L.c.resize(2 * g + 1);
  for (int j = 0; j <= 2 * g; ++j) L.c[j] = to_i64(c[j], "L coefficient");
  // Weil bound on coefficients: |c_j| <= C(2g, j) q^(j/2).
  for (int j = 1; j <= g; ++j) {
    BigInt binom = 1;
    for (int i = 0; i < j; ++i) binom = binom * (2 * g - i) / (i + 1);
    const BigInt lhs = c[j] * c[j];
    const BigInt rhs = binom * binom * ipow(q, j);
    if (lhs > rhs) throw InvalidCounts("L coefficient violates the Weil bound");
  }
  if (L.predicted_count(g + 1) < 0) throw InvalidCounts("negative predicted point count");
  return L;
}

std::vector<BigInt> LPolynomial::power_sums(int kmax) const {
  // Newton: s_k = -k c_k - sum_{i<k} s_i c_{k-i}, with c_k = 0 beyond 2g.
  std::vector<BigInt> s(kmax + 1, 0);
  for (int k = 1; k <= kmax; ++k) {
    BigInt acc = k <= 2 * g ? BigInt(k) * c[k] : BigInt(0);
    for (int i = 1; i < k; ++i)
      if (k - i <= 2 * g) acc += s[i] * c[k - i];
    s[k] = -acc;
  }
  return s;
}

BigInt LPolynomial::predicted_count(int k) const {
  auto s = power_sums(k);
  return ipow(BigInt(q()), k) + 1 - s[k];
}

std::string LPolynomial::str() const {
  std::ostringstream os;
  for (int i = 0; i <= 2 * g; ++i) {
    if (c[i] == 0) continue;
    if (os.tellp() > 0) os << (c[i] < 0 ? " - " : " + ");
    else if (c[i] < 0) os << "-";
    const std::int64_t v = c[i] < 0 ? -c[i] : c[i];
    if (i == 0 || v != 1) os << v;
    if (i > 0) os << (v != 1 ? "*T" : "T");
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

LPolynomial operator*(const LPolynomial& a, const LPolynomial& b) {
  if (a.p != b.p || a.a != b.a) throw InvalidCounts("L-polynomials over different fields");
  LPolynomial r;
  r.p = a.p;
  r.a = a.a;
  r.g = a.g + b.g;
  std::vector<BigInt> c(2 * r.g + 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += BigInt(a.c[i]) * b.c[j];
  for (auto& v : c) r.c.push_back(to_i64(v, "L coefficient"));
  return r;
}

LPolynomial lpolynomial(const CurveModel& C, const CountOptions& opt) {
  const int g = C.genus();
  return LPolynomial::from_counts(C.F.p(), C.F.k(), g, count_points_upto(C, g, opt));
}

int vp(std::int64_t x, std::uint32_t p) {
  if (x == 0) return std::numeric_limits<int>::max();
  int v = 0;
  while (x % static_cast<std::int64_t>(p) == 0) {
    x /= p;
    ++v;
  }
  return v;
}

NewtonPolygon newton_polygon(const LPolynomial& L) {
  std::vector<std::pair<int, int>> pts;
  for (int i = 0; i <= 2 * L.g; ++i)
    if (L.c[i] != 0) pts.emplace_back(i, vp(L.c[i], L.p));
  // Lower convex hull.
  std::vector<std::pair<int, int>> hull;
  for (auto& pt : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      // Drop the middle point when it lies on or above the chord.
      const std::int64_t cross =
          static_cast<std::int64_t>(x2 - x1) * (pt.second - y1) - static_cast<std::int64_t>(y2 - y1) * (pt.first - x1);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  NewtonPolygon np;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const int dx = hull[i].first - hull[i - 1].first, dy = hull[i].second - hull[i - 1].second;
    const Rational s = Rational::make(dy, static_cast<std::int64_t>(dx) * L.a);
    for (int j = 0; j < dx; ++j) np.slopes.push_back(s);
  }
  return np;
}

bool NewtonPolygon::is_supersingular() const {
  if (slopes.empty()) return false;
  for (const auto& s : slopes)
    if (!(s == Rational{1, 2})) return false;
  return true;
}

int NewtonPolygon::p_rank() const {
  int n = 0;
  for (const auto& s : slopes)
    if (s.num == 0) ++n;
  return n;
}

int p_rank_from_L(const LPolynomial& L) {
  int r = 0;
  for (int i = 0; i <= L.g; ++i)
    if (L.c[i] % static_cast<std::int64_t>(L.p) != 0) r = i;
  return r;
}

// ---------------------------------------------------------------- Cartier

namespace {

Matrix hyperelliptic_cartier(const FieldCtx& F, const UniPoly& f, int g) {
  const std::uint32_t p = F.p();
  const UniPoly h = poly::pow(F, f, (p - 1) / 2);
  Matrix M(g, std::vector<FieldElem>(g));
  for (int i = 1; i <= g; ++i)
    for (int j = 1; j <= g; ++j) {
      const std::int64_t e = static_cast<std::int64_t>(p) * i - j;
      M[i - 1][j - 1] = e >= 0 && e <= h.degree() ? h.c[e] : F.zero();
    }
  return M;
}

Matrix quartic_cartier(const FieldCtx& F, const PlaneQuartic& q) {
  const std::uint32_t p = F.p();
  const int D = 4 * static_cast<int>(p - 1);
  const int W = D + 1;
  const std::array<std::array<int, 3>, 3> u = {{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}};
  Matrix M(3, std::vector<FieldElem>(3));
  if (F.k() == 1) {
    std::vector<std::uint32_t> cur(static_cast<std::size_t>(W) * W, 0), nxt;
    std::array<std::uint32_t, 15> qa;
    for (int n = 0; n < 15; ++n) qa[n] = q.a[n].c[0];
    cur[0] = 1;
    std::vector<std::uint64_t> acc;
    for (int step = 0; step < static_cast<int>(p - 1); ++step) {
      const int deg = 4 * step;
      acc.assign(static_cast<std::size_t>(W) * W, 0);
      for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j) {
          const std::uint64_t v = cur[static_cast<std::size_t>(i) * W + j];
          if (!v) continue;
          for (int n = 0; n < 15; ++n) {
            if (!qa[n]) continue;
            const auto& e = kQuarticMonomials[n];
            acc[static_cast<std::size_t>(i + e[0]) * W + j + e[1]] += v * qa[n];
          }
        }
      cur.assign(acc.size(), 0);
      for (std::size_t t = 0; t < acc.size(); ++t) cur[t] = static_cast<std::uint32_t>(acc[t] % p);
    }
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        const int ex = static_cast<int>(p) * u[l][0] - u[k][0], ey = static_cast<int>(p) * u[l][1] - u[k][1];
        M[k][l] = F.from_int(cur[static_cast<std::size_t>(ex) * W + ey]);
      }
    return M;
  }
  std::vector<FieldElem> cur(static_cast<std::size_t>(W) * W, F.zero()), acc;
  cur[0] = F.one();
  for (int step = 0; step < static_cast<int>(p - 1); ++step) {
    const int deg = 4 * step;
    acc.assign(static_cast<std::size_t>(W) * W, F.zero());
    for (int i = 0; i <= deg; ++i)
      for (int j = 0; i + j <= deg; ++j) {
        const FieldElem& v = cur[static_cast<std::size_t>(i) * W + j];
        if (F.is_zero(v)) continue;
        for (int n = 0; n < 15; ++n) {
          if (F.is_zero(q.a[n])) continue;
          const auto& e = kQuarticMonomials[n];
          auto& dst = acc[static_cast<std::size_t>(i + e[0]) * W + j + e[1]];
          dst = F.add(dst, F.mul(v, q.a[n]));
        }
      }
    cur.swap(acc);
  }
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const int ex = static_cast<int>(p) * u[l][0] - u[k][0], ey = static_cast<int>(p) * u[l][1] - u[k][1];
      M[k][l] = cur[static_cast<std::size_t>(ex) * W + ey];
    }
  return M;
}

Matrix mat_mul(const FieldCtx& F, const Matrix& A, const Matrix& B) {
  const std::size_t n = A.size();
  Matrix C(n, std::vector<FieldElem>(n, F.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (F.is_zero(A[i][k])) continue;
      for (std::size_t j = 0; j < n; ++j) C[i][j] = F.add(C[i][j], F.mul(A[i][k], B[k][j]));
    }
  return C;
}

}  // namespace

Matrix cartier_matrix(const CurveModel& C) {
  const FieldCtx& F = C.F;
  return std::visit(
      [&](const auto& m) -> Matrix {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EllipticLegendre>)
          return hyperelliptic_cartier(F, legendre_poly(F, m.lambda), 1);
        else if constexpr (std::is_same_v<T, EllipticWeierstrass>)
          return hyperelliptic_cartier(F, m.f, 1);
        else if constexpr (std::is_same_v<T, HyperellipticSextic>)
          return hyperelliptic_cartier(F, m.f, 2);
        else if constexpr (std::is_same_v<T, PlaneQuartic>)
          return quartic_cartier(F, m);
        else
          throw CurveError("Cartier matrix not available for " + C.kind());
      },
      C.data);
}

int matrix_rank(const FieldCtx& F, Matrix M) {
  const std::size_t rows = M.size();
  if (rows == 0) return 0;
  const std::size_t cols = M[0].size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && F.is_zero(M[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[rank]);
    const FieldElem inv = F.inv(M[rank][c]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || F.is_zero(M[r][c])) continue;
      const FieldElem f = F.mul(M[r][c], inv);
      for (std::size_t j = c; j < cols; ++j) M[r][j] = F.sub(M[r][j], F.mul(f, M[rank][j]));
    }
    ++rank;
  }
  return rank;
}

int stable_rank(const FieldCtx& F, const Matrix& M) {
  const int g = static_cast<int>(M.size());
  Matrix P = M, tw = M;
  for (int s = 1; s < g; ++s) {
    for (auto& row : tw)
      for (auto& v : row) v = F.frobenius(v);
    P = mat_mul(F, P, tw);
  }
  return matrix_rank(F, P);
}

int p_rank_cartier(const CurveModel& C) { return stable_rank(C.F, cartier_matrix(C)); }

// ---------------------------------------------------------------- smoothness

namespace {

BiPoly dehomogenize(const FieldCtx& F, const MPoly& g) {
  BiPoly r;
  for (const auto& [e, c] : g.t) bipoly::set(r, e[0], e[1], F.add(bipoly::at(r, e[0], e[1]), c));
  return bipoly::trim(std::move(r));
}

// g(t, 1, 0) as a polynomial in t.
UniPoly on_line_at_infinity(const FieldCtx& F, const MPoly& g) {
  UniPoly r;
  for (const auto& [e, c] : g.t) {
    if (e[2] != 0) continue;
    if (static_cast<int>(r.c.size()) <= e[0]) r.c.resize(e[0] + 1, F.zero());
    r.c[e[0]] = F.add(r.c[e[0]], c);
  }
  return poly::trim(std::move(r));
}

UniPoly y_content(const FieldCtx& F, const BiPoly& g) {
  UniPoly c;
  for (const auto& col : bipoly::as_poly_in_y(g)) c = poly::gcd(F, c, col);
  return c;
}

// Arithmetic in F[x]/(m) for an irreducible m, and polynomials in y over it.
using KPoly = std::vector<UniPoly>;

class ResidueField {
 public:
  ResidueField(const FieldCtx& F, const UniPoly& m) : F_(F), m_(m) {
    order_ = 1;
    for (int i = 0; i < m.degree(); ++i) order_ *= F.order();
  }

  KPoly specialise(const BiPoly& b) const {
    KPoly r;
    for (const auto& col : bipoly::as_poly_in_y(b)) r.push_back(poly::mod(F_, col, m_));
    trim(r);
    return r;
  }

  KPoly gcd(KPoly a, KPoly b) const {
    while (!b.empty()) {
      KPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

 private:
  static void trim(KPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }

  UniPoly inv(const UniPoly& a) const { return poly::powmod(F_, a, order_ - 2, m_); }

  KPoly rem(KPoly a, const KPoly& b) const {
    const UniPoly li = inv(b.back());
    while (a.size() >= b.size()) {
      const UniPoly f = poly::mod(F_, poly::mul(F_, a.back(), li), m_);
      const std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[off + i] = poly::mod(F_, poly::sub(F_, a[off + i], poly::mul(F_, f, b[i])), m_);
      a.back() = UniPoly{};
      trim(a);
    }
    return a;
  }

  const FieldCtx& F_;
  UniPoly m_;
  BigInt order_;
};

}  // namespace

bool smoothness_check(const FieldCtx& F, const PlaneQuartic& q) {
  const MPoly f = quartic_form(F, q);
  if (f.is_zero()) throw CurveError("zero quartic");
  std::array<MPoly, 3> G = {mpoly::partial(F, f, 0), mpoly::partial(F, f, 1), mpoly::partial(F, f, 2)};
  std::vector<int> nz;
  for (int i = 0; i < 3; ++i)
    if (!G[i].is_zero()) nz.push_back(i);
  if (nz.size() <= 1) return false;

  // Points on z = 0.
  UniPoly h;
  for (int i = 0; i < 3; ++i) h = poly::gcd(F, h, on_line_at_infinity(F, G[i]));
  if (h.is_zero() || h.degree() >= 1) return false;
  bool all_vanish = true;
  for (int i = 0; i < 3; ++i)
    if (!F.is_zero(mpoly::coeff(G[i], {3, 0, 0, 0}))) all_vanish = false;
  if (all_vanish) return false;

  // Affine chart z = 1.
  const int i = nz[0], j = nz[1];
  const int k = 3 - i - j;
  const BiPoly gi = dehomogenize(F, G[i]), gj = dehomogenize(F, G[j]), gk = dehomogenize(F, G[k]);
  if (poly::gcd(F, y_content(F, gi), y_content(F, gj)).degree() >= 1) return false;
  const UniPoly r = resultant(F, bipoly::as_poly_in_y(gi), bipoly::as_poly_in_y(gj));
  if (r.is_zero()) return false;
  if (r.degree() < 1) return true;
  for (const auto& fa : poly::factor(F, r)) {
    const ResidueField K(F, fa.f);
    const KPoly a = K.specialise(gi), b = K.specialise(gj), c = K.specialise(gk);
    if (a.empty() && b.empty()) return false;
    KPoly g = K.gcd(a, b);
    if (g.size() >= 2) {
      if (!c.empty()) g = K.gcd(g, c);
      if (g.size() >= 2) return false;
    }
  }
  return true;
}

}  // namespace ss5
