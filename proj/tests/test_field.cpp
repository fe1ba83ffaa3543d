#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "ss5/field.hpp"

using namespace ss5;

namespace {

FieldElem random_elem(const FieldCtx& F, std::mt19937_64& rng) {
  FieldElem a;
  for (int i = 0; i < F.k(); ++i) a.c[i] = rng() % F.p();
  return a;
}

}  // namespace

TEST_CASE("prime field basics") {
  auto F = FieldCtx::prime(23);
  CHECK(F.k() == 1);
  CHECK(F.order() == 23);
  auto a = F.from_int(5), b = F.from_int(-4);
  CHECK(F.encode(F.add(a, b)) == "1");
  CHECK(F.encode(F.mul(a, b)) == "3");
  CHECK(F.is_one(F.mul(a, F.inv(a))));
  CHECK(F.encode(F.from_int(-1)) == "22");
}

TEST_CASE("default extension moduli") {
  CHECK(make_extension(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(make_extension(5, 2).modulus() == std::vector<std::uint32_t>{2, 0, 1});
  CHECK(make_extension(7, 1).k() == 1);
  // Cached: same handle each time.
  CHECK(make_extension(11, 3).same_as(make_extension(11, 3)));
  CHECK_THROWS_AS(FieldCtx::from_modulus(3, {2, 0, 1}), FieldError);  // x^2+2 = (x-1)(x+1)
  CHECK_THROWS_AS(make_extension(3, kMaxDegree + 1), FieldError);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(1);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 3}, {7, 4}, {83, 12}, {97, 3}, {65537, 2}}) {
    auto F = make_extension(p, k);
    for (int it = 0; it < 200; ++it) {
      auto a = random_elem(F, rng), b = random_elem(F, rng), c = random_elem(F, rng);
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.add(a, F.neg(a)) == F.zero());
      CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
      CHECK(F.frobenius(a) == F.pow(a, static_cast<std::uint64_t>(p)));
      CHECK(F.norm(F.mul(a, b)) == static_cast<std::uint32_t>(std::uint64_t(F.norm(a)) * F.norm(b) % p));
      if (!F.is_zero(a)) {
        CHECK(F.is_one(F.mul(a, F.inv(a))));
        CHECK(F.is_one(F.pow(a, BigInt(F.order() - 1))));
      }
      CHECK(F.decode(F.encode(a)) == a);
      auto s = F.sqr(a);
      auto r = F.sqrt(s);
      REQUIRE(r.has_value());
      CHECK(F.sqr(*r) == s);
      CHECK(!F.less(F.neg(*r), *r));
    }
  }
}

TEST_CASE("characters agree with brute force") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 2}, {7, 2}, {5, 3}, {13, 1}, {3, 4}}) {
    auto F = make_extension(p, k);
    const auto q = F.order_u64();
    std::map<std::uint64_t, int> sq, fourth;
    for (std::uint64_t i = 0; i < q; ++i) {
      auto a = F.from_index(i);
      sq[F.index(F.sqr(a))]++;
      fourth[F.index(F.pow(a, std::uint64_t(4)))]++;
    }
    std::uint64_t total4 = 0;
    for (std::uint64_t i = 0; i < q; ++i) {
      auto a = F.from_index(i);
      const int expect = F.is_zero(a) ? 0 : (sq.count(i) ? 1 : -1);
      CHECK(F.quadratic_character(a) == expect);
      const std::uint64_t n4 = fourth.count(i) ? fourth[i] : 0;
      CHECK(F.nth_root_count(a, 4) == n4);
      total4 += F.nth_root_count(a, 4);
      CHECK(F.sqrt(a).has_value() == (expect >= 0));
    }
    CHECK(total4 == q);
  }
}

TEST_CASE("square roots in every residue class of q mod 8") {
  // q = 9 (1 mod 8), 5, 13 (5 mod 8), 7, 11 (3 mod 4), 17 (1 mod 16)
  for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 2}, {5, 1}, {13, 1}, {7, 1}, {11, 2}, {17, 1}, {41, 2}}) {
    auto F = make_extension(p, k);
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(F.order_u64(), 2000); ++i) {
      auto a = F.from_index(i);
      auto r = F.sqrt(a);
      if (r) CHECK(F.sqr(*r) == a);
    }
  }
}

TEST_CASE("subfields and embeddings") {
  auto F4 = make_extension(7, 4);
  auto F2 = make_extension(7, 2);
  Embedding E(F2, F4);
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    auto a = random_elem(F2, rng), b = random_elem(F2, rng);
    CHECK(E(F2.mul(a, b)) == F4.mul(E(a), E(b)));
    CHECK(E(F2.add(a, b)) == F4.add(E(a), E(b)));
    CHECK(F4.in_subfield(E(a), 2));
    CHECK(F4.is_square(E(a)));
  }
  auto x = random_elem(F4, rng);
  auto nrm = F4.relative_norm(x, 2);
  CHECK(F4.in_subfield(nrm, 2));
}

TEST_CASE("cursor enumerates the field once") {
  auto F = make_extension(5, 2);
  ElementCursor cur(F);
  std::set<std::uint64_t> seen;
  do seen.insert(F.index(cur.value()));
  while (cur.next());
  CHECK(seen.size() == 25);
}

TEST_CASE("decode rejects malformed input") {
  auto F = make_extension(5, 2);
  CHECK_THROWS_AS(F.decode("1"), FieldError);
  CHECK_THROWS_AS(F.decode("1,5"), FieldError);
  CHECK_THROWS_AS(F.decode("1,x"), FieldError);
  CHECK_THROWS_AS(F.inv(F.zero()), FieldError);
  CHECK_THROWS_AS(FieldCtx::prime(15), FieldError);
}
