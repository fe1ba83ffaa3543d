#include <random>

#include "doctest.h"
#include "ss5/poly.hpp"

using namespace ss5;

namespace {

UniPoly random_poly(const FieldCtx& F, int deg, std::mt19937_64& rng) {
  UniPoly f;
  f.c.resize(deg + 1);
  for (auto& v : f.c)
    for (int j = 0; j < F.k(); ++j) v.c[j] = rng() % F.p();
  f.c.back() = F.one();
  return poly::trim(f);
}

}  // namespace

TEST_CASE("division identity") {
  std::mt19937_64 rng(7);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{5, 1}, {7, 2}, {101, 1}}) {
    auto F = make_extension(p, k);
    for (int it = 0; it < 30; ++it) {
      auto a = random_poly(F, 12, rng), b = random_poly(F, 5, rng);
      auto [q, r] = poly::divrem(F, a, b);
      CHECK(poly::add(F, poly::mul(F, q, b), r) == a);
      CHECK(r.degree() < b.degree());
      auto g = poly::gcd(F, poly::mul(F, a, b), poly::mul(F, b, b));
      CHECK(poly::mod(F, g, b).is_zero());
    }
  }
}

TEST_CASE("factorisation reproduces the input") {
  std::mt19937_64 rng(11);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}, {7, 3}, {13, 1}}) {
    auto F = make_extension(p, k);
    for (int it = 0; it < 20; ++it) {
      auto a = random_poly(F, 4, rng), b = random_poly(F, 3, rng);
      auto f = poly::mul(F, poly::mul(F, a, a), b);
      auto fs = poly::factor(F, f);
      UniPoly prod = poly::constant(F.one());
      for (auto& fa : fs) {
        CHECK(poly::is_irreducible(F, fa.f));
        CHECK(fa.f.lead() == F.one());
        prod = poly::mul(F, prod, poly::pow(F, fa.f, fa.mult));
      }
      CHECK(prod == poly::monic(F, f));
    }
  }
  // Inseparable input: x^p - t over F_{p^2}
  auto F = make_extension(3, 2);
  UniPoly f = poly::sub(F, poly::monomial(F, F.one(), 3), poly::constant(F.gen()));
  auto fs = poly::factor(F, f);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].mult == 3);
  CHECK(fs[0].f.degree() == 1);
}

TEST_CASE("roots and roots in extensions") {
  auto F = FieldCtx::prime(7);
  // (x-1)(x-3)(x^2+1)
  auto f = poly::mul(F, poly::mul(F, poly::from_ints(F, {-1, 1}), poly::from_ints(F, {-3, 1})),
                     poly::from_ints(F, {1, 0, 1}));
  auto r = poly::roots(F, f);
  REQUIRE(r.size() == 2);
  CHECK(F.encode(r[0]) == "1");
  CHECK(F.encode(r[1]) == "3");
  auto E = make_extension(7, 2);
  auto re = poly::roots_in_extension(F, f, E);
  CHECK(re.size() == 4);
  for (auto& z : re) {
    int hits = E.is_zero(poly::eval(E, poly::from_ints(E, {-1, 1}), z)) +
               E.is_zero(poly::eval(E, poly::from_ints(E, {-3, 1}), z)) +
               E.is_zero(poly::eval(E, poly::from_ints(E, {1, 0, 1}), z));
    CHECK(hits == 1);
  }
  CHECK(poly::splitting_degree(F, f) == 2);
  // Roots of a polynomial over F_49 found inside F_7^4.
  auto E4 = make_extension(7, 4);
  UniPoly g = poly::sub(E, poly::monomial(E, E.one(), 2), poly::constant(E.gen()));
  auto rg = poly::roots_in_extension(E, g, E4);
  CHECK(rg.size() == 2);
}

TEST_CASE("resultants") {
  auto F = FieldCtx::prime(11);
  // Res_z(z^2 - x, z) = -x
  PolyOverPoly f{poly::from_ints(F, {0, -1}), {}, poly::from_ints(F, {1})};
  PolyOverPoly g{{}, poly::from_ints(F, {1})};
  CHECK(resultant(F, f, g) == poly::from_ints(F, {0, -1}));
  // Res_z(z - a(x), h(z)) = (-1)^deg h * ... ; here Res(z - x, z^2 + 1) = x^2 + 1
  PolyOverPoly lin{poly::from_ints(F, {0, -1}), poly::from_ints(F, {1})};
  PolyOverPoly h{poly::from_ints(F, {1}), {}, poly::from_ints(F, {1})};
  CHECK(resultant(F, lin, h) == poly::from_ints(F, {1, 0, 1}));
  // Common factor gives zero.
  PolyOverPoly u{poly::from_ints(F, {0, -1}), poly::from_ints(F, {1})};
  PolyOverPoly v{poly::from_ints(F, {0, 1}), poly::from_ints(F, {-1, 1}), poly::from_ints(F, {-1})};
  // v = -(z - x)(z - 1) + ... check against evaluation
  auto R = resultant(F, u, v);
  for (int x0 = 0; x0 < 11; ++x0) {
    // v(z=x0) at x=x0
    auto X = F.from_int(x0);
    FieldElem val = F.zero(), zp = F.one();
    for (auto& cf : v) {
      val = F.add(val, F.mul(poly::eval(F, cf, X), zp));
      zp = F.mul(zp, X);
    }
    CHECK(poly::eval(F, R, X) == val);
  }
}

TEST_CASE("power product coefficient matches expansion") {
  auto F = FieldCtx::prime(13);
  auto a = poly::from_ints(F, {-1, 1}), b = poly::from_ints(F, {3, 2, 1});
  auto full = poly::mul(F, poly::pow(F, a, 9), poly::pow(F, b, 4));
  for (int n = 0; n <= full.degree(); ++n)
    CHECK(poly::power_product_coeff(F, {{a, 9}, {b, 4}}, n) == full.c[n]);
}

TEST_CASE("bivariate translate and specialise") {
  auto F = FieldCtx::prime(23);
  BiPoly f;
  bipoly::set(f, 2, 1, F.from_int(3));
  bipoly::set(f, 0, 3, F.from_int(5));
  bipoly::set(f, 1, 0, F.from_int(7));
  auto g = bipoly::translate(F, f, F.from_int(4), F.from_int(9));
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    auto x0 = F.from_int(rng() % 23), y0 = F.from_int(rng() % 23);
    CHECK(bipoly::eval(F, g, x0, y0) == bipoly::eval(F, f, F.add(x0, F.from_int(4)), F.add(y0, F.from_int(9))));
    CHECK(poly::eval(F, bipoly::at_x(F, f, x0), y0) == bipoly::eval(F, f, x0, y0));
  }
}
