#include <cmath>

#include "doctest.h"
#include "ss5/aux.hpp"

using namespace ss5;
using namespace ss5::aux;

namespace {

// Points on y^2 = f(x) over F by enumeration, f of degree 5 or 6.
std::int64_t naive_count(const FieldCtx& F, const UniPoly& f) {
  std::int64_t n = 0;
  ElementCursor cur(F);
  do {
    n += 1 + F.quadratic_character(poly::eval(F, f, cur.value()));
  } while (cur.next());
  if (f.degree() == 5) return n + 1;
  return n + 1 + F.quadratic_character(f.lead());
}

// Supersingularity of a genus 2 curve over F from its counts over F and its
// quadratic extension: p must divide both middle L-coefficients.
bool naive_supersingular(const FieldCtx& F, const UniPoly& f) {
  auto F2 = make_extension(F, 2);
  const std::int64_t q = static_cast<std::int64_t>(F.order_u64());
  const std::int64_t s1 = q + 1 - naive_count(F, f);
  const std::int64_t s2 = q * q + 1 - naive_count(F2, poly::embed(Embedding(F, F2), f));
  const std::int64_t c1 = -s1, c2 = (s1 * s1 - s2) / 2;
  return c1 % F.p() == 0 && c2 % F.p() == 0;
}

bool naive_supersingular(std::uint32_t p, const std::vector<std::int64_t>& ds) {
  auto F = FieldCtx::prime(p);
  return naive_supersingular(F, poly::from_ints(F, ds));
}

}  // namespace

TEST_CASE("genus 3 double covers") {
  auto c7 = genus3_double_cover(7);
  CHECK(c7.supersingular);
  CHECK(c7.hits_fp > 0);
  std::uint64_t expect = 0;
  for (std::int64_t b = 2; b < 7; ++b)
    if (naive_supersingular(7, {0, b, 0, -(1 + b), 0, 1})) ++expect;
  CHECK(c7.hits_fp == expect);
  CHECK(c7.components.size() == 2);
  for (auto& c : c7.components) CHECK(c.np.is_supersingular());

  auto c11 = genus3_double_cover(11);
  CHECK(c11.supersingular);
  CHECK(c11.hits_fp > 0);

  // In characteristic 3 the family is ordinary for every beta.
  CHECK_THROWS_AS(genus3_double_cover(3), NoParameter);
  for (int k = 1; k <= 3; ++k) {
    auto F = make_extension(3, k);
    ElementCursor cur(F);
    do {
      auto b = cur.value();
      if (F.is_zero(b) || F.is_one(b)) continue;
      UniPoly f{{F.zero(), b, F.zero(), F.neg(F.add(F.one(), b)), F.zero(), F.one()}};
      CHECK_FALSE(naive_supersingular(F, f));
    } while (cur.next());
  }

  CHECK_THROWS_AS(genus3_double_cover(13), PreconditionError);
}

TEST_CASE("genus 4 branched covers") {
  auto c5 = genus4_branched_cover(5);
  CHECK(c5.supersingular);
  CHECK(c5.components.size() == 3);
  auto c11 = genus4_branched_cover(11);
  CHECK(c11.hits_fp > 0);
  std::uint64_t expect = 0;
  for (std::int64_t a = 2; a < 11; ++a)
    if (naive_supersingular(11, {a, 0, 0, -(1 + a), 0, 0, 1})) ++expect;
  CHECK(c11.hits_fp == expect);
  CountOptions par;
  par.jobs = 3;
  CHECK(genus4_branched_cover(11, par).hits_fp == expect);
  CHECK_THROWS_AS(genus4_branched_cover(7), PreconditionError);
}

TEST_CASE("y^2 = x^3 - 1 has trace divisible by p when p = 5 mod 6") {
  for (std::uint32_t p = 5; p < 200; p += 6) {
    if (!is_prime_u32(p)) continue;
    auto F = FieldCtx::prime(p);
    std::int64_t n = 1;
    for (std::uint32_t x = 0; x < p; ++x) n += 1 + legendre((static_cast<std::uint64_t>(x) * x * x + p - 1) % p, p);
    CHECK((static_cast<std::int64_t>(p) + 1 - n) % p == 0);
  }
}

TEST_CASE("Bernoulli numbers and zeta values") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == BigRational(-1, 2));
  CHECK(bernoulli(2) == BigRational(1, 6));
  CHECK(bernoulli(4) == BigRational(-1, 30));
  CHECK(bernoulli(6) == BigRational(1, 42));
  CHECK(bernoulli(3) == 0);
  CHECK(zeta_negative_odd(1) == BigRational(-1, 12));
  CHECK(zeta_negative_odd(2) == BigRational(1, 120));
  CHECK(zeta_negative_odd(3) == BigRational(-1, 252));
}

TEST_CASE("heuristic intersection number") {
  auto r3 = heuristic_intersection_number(3);
  CHECK(r3.f1 == 16);
  CHECK(r3.f2 == 8320);
  CHECK(r3.N == BigRational(26, 9));
  for (std::uint32_t p = 2; p < 100; ++p) {
    auto r = heuristic_intersection_number(p);
    CHECK(r.N == r.N_zeta);
  }
  auto r97 = heuristic_intersection_number(97);
  const double ratio = static_cast<double>(r97.N) / std::pow(97.0, 12) * 46080.0;
  CHECK(ratio > 0.8);
  CHECK(ratio < 1.2);
}

TEST_CASE("condition dimensions") {
  auto d2 = condition_dimensions(2, 1);
  CHECK(d2.lhs_bound == 1);
  CHECK(d2.rhs == 1);
  auto d3 = condition_dimensions(3, 1);
  CHECK(d3.lhs_bound == 3);
  CHECK(d3.rhs == 2);
  auto d10 = condition_dimensions(10, 1);
  CHECK(d10.rhs == 25);
  CHECK(d10.lhs_bound == 17);
  CHECK_FALSE(d10.holds());
  CHECK(condition_dimensions(3, 2).lhs_bound == 5);
  CHECK_THROWS(condition_dimensions(1, 1));
}
