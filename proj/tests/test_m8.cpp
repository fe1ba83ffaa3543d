#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "ss5/m8.hpp"

using namespace ss5;

namespace {

BigInt big_binom(std::uint64_t n, std::uint64_t k) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

FieldElem random_elem(const FieldCtx& F, std::mt19937_64& rng) {
  FieldElem a{};
  for (int j = 0; j < F.k(); ++j) a.c[j] = rng() % F.p();
  return a;
}

}  // namespace

TEST_CASE("binomials mod p") {
  for (std::uint32_t p : {3u, 7u, 23u}) {
    for (std::uint64_t n = 0; n < 60; ++n)
      for (std::uint64_t k = 0; k <= n; ++k)
        CHECK(m8::binom_mod(n, k, p) == static_cast<std::uint32_t>(big_binom(n, k) % p));
  }
}

TEST_CASE("Hasse polynomials") {
  auto F3 = FieldCtx::prime(3), F5 = FieldCtx::prime(5);
  CHECK(m8::hasse_polynomial(3) == poly::from_ints(F3, {1, 1}));
  CHECK(m8::hasse_polynomial(5) == poly::from_ints(F5, {1, 4, 1}));
  for (std::uint32_t p = 3; p < 200; ++p) {
    if (!is_prime_u32(p)) continue;
    auto F = FieldCtx::prime(p);
    auto H = m8::hasse_polynomial(p);
    CHECK(H.degree() == static_cast<int>((p - 1) / 2));
    CHECK(F.is_one(H.c[0]));
    if (p % 4 == 3) CHECK(F.is_zero(poly::eval(F, H, F.from_int(-1))));
  }
}

TEST_CASE("b_p agrees with coefficient extraction") {
  std::mt19937_64 rng(5);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 1}, {7, 1}, {3, 2}, {11, 1}}) {
    auto F = make_extension(p, k);
    const std::uint64_t A = (static_cast<std::uint64_t>(p) * p - 1) / 4;
    CHECK(F.is_one(m8::b_p_eval(F, F.zero(), F.zero())));
    for (int it = 0; it < 10; ++it) {
      auto t1 = random_elem(F, rng), t2 = random_elem(F, rng);
      UniPoly xm1sq = poly::from_ints(F, {1, -2, 1});
      UniPoly l1{{F.neg(t1), F.one()}}, l2{{F.neg(t2), F.one()}};
      auto expect = poly::power_product_coeff(F, {{xm1sq, A}, {poly::trim(l1), A}, {poly::trim(l2), A}}, 2 * A);
      CHECK(m8::b_p_eval(F, t1, t2) == expect);
      CHECK(m8::b_p_eval(F, t1, t2) == m8::b_p_eval(F, t2, t1));
    }
  }
  auto F = FieldCtx::prime(23);
  CHECK(F.is_zero(m8::b_p_eval(F, F.from_int(5), F.from_int(19))));
}

TEST_CASE("symbolic b_p: bidegree, leading and constant terms") {
  for (std::uint32_t p : {3u, 7u, 11u, 19u, 23u}) {
    auto F = FieldCtx::prime(p);
    const int A = static_cast<int>((p * p - 1) / 4);
    auto b = m8::b_p_poly(p);
    CHECK(b.deg_x() == A);
    CHECK(F.is_one(bipoly::at(b, 0, 0)));
    CHECK(F.is_one(bipoly::at(b, A, A)));
    for (int i = 0; i <= b.deg_x(); ++i) CHECK(static_cast<int>(b.c[i].size()) <= A + 1);
    std::mt19937_64 rng(p);
    for (int it = 0; it < 5; ++it) {
      auto t1 = random_elem(F, rng), t2 = random_elem(F, rng);
      CHECK(bipoly::eval(F, b, t1, t2) == m8::b_p_eval(F, t1, t2));
      CHECK(bipoly::eval(F, m8::c_p_poly(p), t1, t2) == m8::c_p_eval(F, t1, t2));
    }
  }
}

TEST_CASE("c_p identities") {
  std::mt19937_64 rng(9);
  for (std::uint32_t p : {7u, 11u, 23u, 31u}) {
    auto F = make_extension(p, 2);
    auto Fp = FieldCtx::prime(p);
    auto H = poly::embed(Embedding(Fp, F), m8::hasse_polynomial(p));
    for (int it = 0; it < 10; ++it) {
      auto t = random_elem(F, rng);
      CHECK(F.is_zero(m8::c_p_eval(F, t, F.neg(t))));
      auto t1 = random_elem(F, rng), t2 = random_elem(F, rng);
      if (F.is_zero(t1)) continue;
      // c_p = (-1)^n t1^n H_p(t2/t1), n = (p-1)/2.
      const std::uint64_t n = (p - 1) / 2;
      auto rhs = F.mul(F.pow(t1, n), poly::eval(F, H, F.div(t2, t1)));
      if (n % 2) rhs = F.neg(rhs);
      CHECK(m8::c_p_eval(F, t1, t2) == rhs);
    }
  }
  auto F = FieldCtx::prime(23);
  CHECK(F.is_zero(m8::c_p_eval(F, F.from_int(5), F.from_int(19))));
}

TEST_CASE("B(t)") {
  auto F3 = FieldCtx::prime(3);
  CHECK(m8::big_B_poly(3) == poly::from_ints(F3, {1, 0, 0, 0, 1}));
  std::mt19937_64 rng(13);
  for (std::uint32_t p : {7u, 11u, 19u, 23u, 31u}) {
    auto F = FieldCtx::prime(p);
    auto B = m8::big_B_poly(p);
    CHECK(B.degree() == static_cast<int>((p * p - 1) / 2));
    CHECK(F.is_one(B.c[0]));
    CHECK(B.c[2] == F.div(F.from_int(3), F.from_int(32)));
    for (int i = 1; i <= B.degree(); i += 2) CHECK(F.is_zero(B.c[i]));
    for (int it = 0; it < 5; ++it) {
      auto t = random_elem(F, rng);
      CHECK(poly::eval(F, B, t) == m8::b_p_eval(F, t, F.neg(t)));
    }
  }
}

TEST_CASE("F_23 intersection points") {
  auto pts = m8::intersection_points_fp(23);
  std::set<std::pair<std::uint32_t, std::uint32_t>> got, invalid;
  for (auto& pt : pts) {
    got.insert({pt.t1, pt.t2});
    if (!pt.valid) invalid.insert({pt.t1, pt.t2});
  }
  const std::set<std::pair<std::uint32_t, std::uint32_t>> expect = {
      {5, 19}, {10, 7}, {20, 13}, {17, 14}, {16, 15}, {13, 20}, {19, 5}, {15, 16}, {7, 10}, {14, 17}, {1, 22}, {22, 1}};
  CHECK(got == expect);
  CHECK(invalid == std::set<std::pair<std::uint32_t, std::uint32_t>>{{1, 22}, {22, 1}});
  for (auto& pt : m8::intersection_points_fp(3)) CHECK_FALSE(pt.valid);
}

TEST_CASE("intersection multiplicity") {
  auto F = FieldCtx::prime(23);
  BiPoly x, y, conic;
  bipoly::set(x, 1, 0, F.one());
  bipoly::set(y, 0, 1, F.one());
  CHECK(m8::intersection_multiplicity(F, x, y, F.zero(), F.zero()) == 1);
  // y = x^2 against y = 0
  bipoly::set(conic, 0, 1, F.one());
  bipoly::set(conic, 2, 0, F.from_int(-1));
  CHECK(m8::intersection_multiplicity(F, conic, y, F.zero(), F.zero()) == 2);
  // y^2 = x^3 against y = 0: 3
  BiPoly cusp;
  bipoly::set(cusp, 0, 2, F.one());
  bipoly::set(cusp, 3, 0, F.from_int(-1));
  CHECK(m8::intersection_multiplicity(F, cusp, y, F.zero(), F.zero()) == 3);
  CHECK(m8::intersection_multiplicity(F, cusp, x, F.zero(), F.zero()) == 2);
  CHECK_THROWS_AS(m8::intersection_multiplicity(F, y, bipoly::mul(F, y, x), F.zero(), F.zero()),
                  m8::NonIsolatedIntersection);
  CHECK(m8::intersection_multiplicity(F, m8::b_p_poly(23), m8::c_p_poly(23), F.one(), F.from_int(22)) == 6);
  CHECK(m8::intersection_multiplicity(F, m8::b_p_poly(23), m8::c_p_poly(23), F.from_int(5), F.from_int(19)) >= 1);
}

TEST_CASE("parameter search") {
  auto p3 = m8::find_supersingular_params(3);
  CHECK(p3.F.order() == 9);
  CHECK(p3.F.pow(p3.t1, std::uint64_t{4}) == p3.F.from_int(-1));
  CHECK(p3.t2 == p3.F.neg(p3.t1));
  auto p23 = m8::find_supersingular_params(23);
  CHECK(p23.F.k() == 1);
  CHECK(p23.t1.c[0] == 5);
  CHECK(p23.t2.c[0] == 19);
  CHECK_THROWS_AS(m8::find_supersingular_params(13), m8::PreconditionError);
  CHECK_THROWS_AS(m8::find_supersingular_params(5), m8::PreconditionError);
  for (std::uint32_t p : {7u, 11u, 19u}) {
    auto prm = m8::find_supersingular_params(p);
    CHECK(prm.F.is_zero(m8::b_p_eval(prm.F, prm.t1, prm.t2)));
    CHECK(prm.F.is_zero(m8::c_p_eval(prm.F, prm.t1, prm.t2)));
  }
}

TEST_CASE("eigenspace dimensions") {
  CHECK(m8::m8_eigenspace_h1_dims() == std::vector<int>{0, 1, 0, 2});
  CHECK(m8::eigenspace_h1_dims(2, -2, {1, 1, 1, 1})[1] == 1);
  CHECK(m8::eigenspace_h1_dims(2, -2, {1, 1, 1, 1})[0] == 0);
}

TEST_CASE("genus 5 count splits into the three quotients") {
  std::mt19937_64 rng(19);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{7, 1}, {11, 1}, {13, 1}, {3, 2}, {5, 2}}) {
    auto F = make_extension(p, k);
    for (int it = 0; it < 5; ++it) {
      auto t1 = random_elem(F, rng), t2 = random_elem(F, rng);
      if (F.is_zero(t1) || F.is_one(t1) || F.is_zero(t2) || F.is_one(t2) || t1 == t2) continue;
      m8::Params prm{static_cast<std::uint32_t>(p), F, t1, t2, "test"};
      auto c = m8::build_components(prm);
      for (int e = 1; e <= 2; ++e) {
        const std::int64_t Q = static_cast<std::int64_t>(std::pow(F.order_u64(), e));
        const std::int64_t lhs = static_cast<std::int64_t>(count_points(c.Y, e));
        const std::int64_t rhs = static_cast<std::int64_t>(count_points(c.C1, e) + count_points(c.E1, e) +
                                                           count_points(c.E2, e)) -
                                 2 * (Q + 1);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("certificates at small primes") {
  auto c3 = m8::verify_theorem12(3, m8::Mode::Auto);
  CHECK(c3.mode == "unconditional");
  CHECK(c3.supersingular);
  CHECK(c3.prym_match);
  auto c23 = m8::verify_theorem12(23, m8::Mode::Unconditional);
  CHECK(c23.mode == "unconditional");
  CHECK(c23.supersingular);
  CHECK(c23.prym_match);
  CHECK(c23.params.F.is_zero(c23.b_value));
  auto c7 = m8::verify_theorem12(7, m8::Mode::Conditional);
  CHECK(c7.mode == "conditional");
  CHECK(c7.components.empty());
  CountOptions tiny;
  tiny.budget = 1'000'000;
  auto c19 = m8::verify_theorem12(19, m8::Mode::Unconditional, tiny);
  CHECK(c19.budget_exceeded);
  CHECK(c19.mode == "conditional");
}
