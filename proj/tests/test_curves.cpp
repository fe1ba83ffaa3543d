#include <cmath>
#include <random>

#include "doctest.h"
#include "ss5/curves.hpp"

using namespace ss5;

namespace {

FieldElem random_elem(const FieldCtx& F, std::mt19937_64& rng) {
  FieldElem a{};
  for (int j = 0; j < F.k(); ++j) a.c[j] = rng() % F.p();
  return a;
}

// Euler criterion without the norm shortcut.
int naive_chi(const FieldCtx& E, const FieldElem& a) {
  if (E.is_zero(a)) return 0;
  return E.is_one(E.pow(a, (E.order() - 1) / 2)) ? 1 : -1;
}

std::vector<FieldElem> all_elements(const FieldCtx& E) {
  std::vector<FieldElem> v;
  ElementCursor cur(E);
  do v.push_back(cur.value());
  while (cur.next());
  return v;
}

// y^2 = f with deg f odd: one point at infinity.
std::uint64_t naive_odd_hyperelliptic(const FieldCtx& E, const UniPoly& f) {
  std::uint64_t n = 1;
  for (const auto& m : all_elements(E)) n += 1 + naive_chi(E, poly::eval(E, f, m));
  return n;
}

// A birational model of y^4 = x^2(x-1)^2(x-t1)(x-t2) as an odd degree
// hyperelliptic curve: (t1-t2) m (m^2-1) (t1 m^2 - t2) ((t1-1) m^2 - (t2-1)).
UniPoly c1_hyperelliptic_model(const FieldCtx& E, const FieldElem& t1, const FieldElem& t2) {
  const FieldElem one = E.one();
  UniPoly f = poly::constant(E.sub(t1, t2));
  f = poly::mul(E, f, poly::from_ints(E, {0, -1, 0, 1}));
  f = poly::mul(E, f, UniPoly{{E.neg(t2), E.zero(), t1}});
  f = poly::mul(E, f, UniPoly{{E.sub(one, t2), E.zero(), E.sub(t1, one)}});
  return f;
}

std::uint64_t naive_projective_quartic(const FieldCtx& E, const MPoly& f) {
  const auto els = all_elements(E);
  std::uint64_t n = 0;
  const FieldElem z = E.zero(), o = E.one();
  for (const auto& x : els)
    for (const auto& y : els)
      if (E.is_zero(mpoly::eval(E, f, {x, y, o, z}))) ++n;
  for (const auto& x : els)
    if (E.is_zero(mpoly::eval(E, f, {x, o, z, z}))) ++n;
  if (E.is_zero(mpoly::eval(E, f, {o, z, z, z}))) ++n;
  return n;
}

MPoly lift_form(const Embedding& emb, const MPoly& f) {
  MPoly r;
  for (const auto& [e, c] : f.t) r.t[e] = emb(c);
  return r;
}

PlaneQuartic random_quartic(const FieldCtx& F, std::mt19937_64& rng) {
  PlaneQuartic q;
  for (auto& a : q.a) a = random_elem(F, rng);
  return q;
}

bool has_visible_singularity(const FieldCtx& E, const MPoly& f) {
  std::array<MPoly, 3> G = {mpoly::partial(E, f, 0), mpoly::partial(E, f, 1), mpoly::partial(E, f, 2)};
  const auto els = all_elements(E);
  const FieldElem z = E.zero(), o = E.one();
  auto sing = [&](const std::array<FieldElem, 4>& pt) {
    for (auto& g : G)
      if (!E.is_zero(mpoly::eval(E, g, pt))) return false;
    return true;
  };
  for (const auto& x : els)
    for (const auto& y : els)
      if (sing({x, y, o, z})) return true;
  for (const auto& x : els)
    if (sing({x, o, z, z})) return true;
  return sing({o, z, z, z});
}

}  // namespace

TEST_CASE("superelliptic counts agree with a hyperelliptic model") {
  std::mt19937_64 rng(3);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 2}, {5, 1}, {7, 1}, {7, 2}, {11, 1}, {3, 4}, {13, 1}}) {
    auto F = make_extension(p, k);
    for (int it = 0; it < 6; ++it) {
      FieldElem t1 = random_elem(F, rng), t2 = random_elem(F, rng);
      if (F.is_zero(t1) || F.is_one(t1) || F.is_zero(t2) || F.is_one(t2) || t1 == t2) continue;
      const auto C = m8_curve(F, t1, t2);
      const auto h = c1_hyperelliptic_model(F, t1, t2);
      CHECK(count_points(C, 1) == naive_odd_hyperelliptic(F, h));
      if (F.order() <= 25) {
        auto E = make_extension(p, 2 * k);
        Embedding emb(F, E);
        CHECK(count_points(C, 2) == naive_odd_hyperelliptic(E, poly::embed(emb, h)));
      }
    }
  }
}

TEST_CASE("cubic tower count matches the flat count") {
  std::mt19937_64 rng(17);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{13, 1}, {7, 2}, {11, 2}}) {
    auto F = make_extension(p, k);
    REQUIRE(detail::tower_applicable(F));
    for (int it = 0; it < 3; ++it) {
      FieldElem t1 = random_elem(F, rng), t2 = random_elem(F, rng);
      if (F.is_zero(t1) || F.is_one(t1) || F.is_zero(t2) || F.is_one(t2) || t1 == t2) continue;
      CHECK(detail::count_m8_cubic_tower(F, t1, t2, 1) == detail::count_m8_flat(F, t1, t2, 3, 1));
    }
  }
  CHECK_FALSE(detail::tower_applicable(FieldCtx::prime(7)));
  CHECK_FALSE(detail::tower_applicable(FieldCtx::prime(131)));
}

TEST_CASE("quartic counts agree with naive enumeration") {
  std::mt19937_64 rng(23);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{5, 1}, {7, 1}, {3, 2}, {5, 2}}) {
    auto F = make_extension(p, k);
    for (int it = 0; it < 5; ++it) {
      auto q = random_quartic(F, rng);
      const auto C = plane_quartic(F, q.a);
      const MPoly f = quartic_form(F, q);
      CHECK(count_points(C, 1) == naive_projective_quartic(F, f));
      if (F.order() <= 9) {
        auto E = make_extension(p, 2 * k);
        CHECK(count_points(C, 2) == naive_projective_quartic(E, lift_form(Embedding(F, E), f)));
      }
    }
  }
  // A quartic containing the line z = 0.
  auto F = FieldCtx::prime(5);
  PlaneQuartic q;
  q.a[quartic_index(0, 0, 4)] = F.one();
  q.a[quartic_index(3, 0, 1)] = F.one();
  CHECK(count_points(plane_quartic(F, q.a), 1) == naive_projective_quartic(F, quartic_form(F, q)));
}

TEST_CASE("pullback counts agree with naive enumeration") {
  std::mt19937_64 rng(29);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{5, 1}, {7, 1}, {3, 2}, {13, 1}}) {
    auto F = make_extension(p, k);
    const auto els = all_elements(F);
    for (int it = 0; it < 4; ++it) {
      FieldElem t1 = random_elem(F, rng), t2 = random_elem(F, rng);
      if (F.is_zero(t1) || F.is_one(t1) || F.is_zero(t2) || F.is_one(t2) || t1 == t2) continue;
      // Affine smooth points plus the fibres above the singular points,
      // counted through the degree-2 map to the superelliptic curve.
      std::uint64_t affine = 0;
      for (const auto& w : els) {
        const FieldElem w2 = F.mul(w, w);
        const FieldElem a = F.sub(w2, F.one());
        const FieldElem v = F.mul(F.mul(a, a), F.mul(F.sub(w2, t1), F.sub(w2, t2)));
        if (F.is_zero(v)) continue;
        for (const auto& u : els)
          if (F.pow(u, std::uint64_t{4}) == v) ++affine;
      }
      const auto N = count_points(pullback_curve(F, t1, t2), 1);
      CHECK(N >= affine);
      // Genus 5 Weil bound.
      const double q = static_cast<double>(F.order_u64());
      CHECK(std::abs(static_cast<double>(N) - q - 1) <= 10 * std::sqrt(q) + 1e-9);
    }
  }
}

TEST_CASE("L-polynomial predicts further counts") {
  std::mt19937_64 rng(31);
  for (int p : {5, 7, 11}) {
    auto F = FieldCtx::prime(p);
    int done = 0;
    while (done < 4) {
      UniPoly f;
      for (int i = 0; i <= 6; ++i) f.c.push_back(random_elem(F, rng));
      f = poly::trim(f);
      if (f.degree() < 5 || !poly::is_squarefree(F, f)) continue;
      const auto C = hyperelliptic_curve(F, f);
      const auto L = lpolynomial(C);
      CHECK(L.c.size() == 5);
      CHECK(L.c[4] == static_cast<std::int64_t>(p) * p);
      CHECK(L.predicted_count(3) == BigInt(count_points(C, 3)));
      CHECK(L.predicted_count(4) == BigInt(count_points(C, 4)));
      CHECK(p_rank_cartier(C) == p_rank_from_L(L));
      CHECK(newton_polygon(L).p_rank() == p_rank_from_L(L));
      ++done;
    }
  }
}

TEST_CASE("Newton polygons of elliptic curves") {
  for (int p : {7, 11, 19}) {
    auto F = FieldCtx::prime(p);
    // y^2 = x^3 - x is supersingular for p = 3 mod 4.
    const auto C = weierstrass_curve(F, poly::from_ints(F, {0, -1, 0, 1}));
    const auto L = lpolynomial(C);
    CHECK(L.c[1] == 0);
    CHECK(newton_polygon(L).is_supersingular());
    CHECK(p_rank_cartier(C) == 0);
  }
  auto F = FieldCtx::prime(13);
  const auto L = lpolynomial(weierstrass_curve(F, poly::from_ints(F, {0, -1, 0, 1})));
  const auto np = newton_polygon(L);
  CHECK_FALSE(np.is_supersingular());
  REQUIRE(np.slopes.size() == 2);
  CHECK(np.slopes[0] == Rational{0, 1});
  CHECK(np.slopes[1] == Rational{1, 1});
}

TEST_CASE("invalid counts are rejected") {
  CHECK_THROWS_AS(LPolynomial::from_counts(5, 1, 1, {100}), InvalidCounts);
  CHECK_THROWS_AS(LPolynomial::from_counts(5, 1, 2, {6, 7}), InvalidCounts);
  CHECK_NOTHROW(LPolynomial::from_counts(5, 1, 1, {6}));
}

TEST_CASE("budget is enforced") {
  auto F = FieldCtx::prime(101);
  const auto C = m8_curve(F, F.from_int(5), F.from_int(19));
  CountOptions opt;
  opt.budget = 1'000'000;
  CHECK_THROWS_AS(count_points(C, 3, opt), BudgetExceeded);
  CHECK_NOTHROW(count_points(C, 2, opt));
}

TEST_CASE("smoothness test") {
  auto F = FieldCtx::prime(5);
  PlaneQuartic fermat;
  for (auto [i, j, k] : std::vector<std::array<int, 3>>{{4, 0, 0}, {0, 4, 0}, {0, 0, 4}}) fermat.a[quartic_index(i, j, k)] = F.one();
  CHECK(smoothness_check(F, fermat));
  // Node at [0:0:1].
  PlaneQuartic nodal;
  nodal.a[quartic_index(2, 0, 2)] = F.one();
  nodal.a[quartic_index(0, 2, 2)] = F.from_int(2);
  nodal.a[quartic_index(4, 0, 0)] = F.one();
  nodal.a[quartic_index(0, 4, 0)] = F.one();
  CHECK_FALSE(smoothness_check(F, nodal));
  // Singular point at infinity [1:0:0].
  PlaneQuartic inf;
  inf.a[quartic_index(2, 2, 0)] = F.one();
  inf.a[quartic_index(2, 0, 2)] = F.one();
  inf.a[quartic_index(0, 4, 0)] = F.one();
  inf.a[quartic_index(0, 0, 4)] = F.one();
  CHECK_FALSE(smoothness_check(F, inf));
  // Double conic.
  PlaneQuartic dbl;
  dbl.a[quartic_index(4, 0, 0)] = F.one();
  dbl.a[quartic_index(2, 2, 0)] = F.from_int(2);
  dbl.a[quartic_index(0, 4, 0)] = F.one();
  dbl.a[quartic_index(2, 0, 2)] = F.from_int(-2);
  dbl.a[quartic_index(0, 2, 2)] = F.from_int(-2);
  dbl.a[quartic_index(0, 0, 4)] = F.one();
  CHECK_FALSE(smoothness_check(F, dbl));

  std::mt19937_64 rng(37);
  int smooth = 0;
  for (int it = 0; it < 60; ++it) {
    auto q = random_quartic(F, rng);
    const bool ok = smoothness_check(F, q);
    if (has_visible_singularity(F, quartic_form(F, q))) CHECK_FALSE(ok);
    if (ok) {
      ++smooth;
      // Smooth quartics have genus 3, so counts obey the Weil bounds.
      CHECK_NOTHROW(lpolynomial(plane_quartic(F, q.a)));
    }
  }
  CHECK(smooth > 30);
}

TEST_CASE("quartic Cartier rank matches the L-polynomial") {
  std::mt19937_64 rng(41);
  for (int p : {5, 7}) {
    auto F = FieldCtx::prime(p);
    int done = 0;
    while (done < 8) {
      auto q = random_quartic(F, rng);
      if (!smoothness_check(F, q)) continue;
      const auto C = plane_quartic(F, q.a);
      CHECK(p_rank_cartier(C) == p_rank_from_L(lpolynomial(C)));
      ++done;
    }
  }
  auto F = make_extension(3, 2);
  int done = 0;
  while (done < 4) {
    auto q = random_quartic(F, rng);
    if (!smoothness_check(F, q)) continue;
    const auto C = plane_quartic(F, q.a);
    CHECK(p_rank_cartier(C) == p_rank_from_L(lpolynomial(C)));
    ++done;
  }
}
