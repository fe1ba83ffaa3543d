#include <random>
#include <set>

#include "doctest.h"
#include "ss5/kummer.hpp"

using namespace ss5;
using namespace ss5::kummer;

namespace {

// Reads "c*x^i*y^j..." style monomial lists given as (coefficient, exponents).
MPoly form(const FieldCtx& F, const std::vector<std::pair<std::int64_t, Exps>>& terms) {
  MPoly r;
  for (auto& [c, e] : terms) r = mpoly::add(F, r, mpoly::term(F, F.from_int(c), e));
  return r;
}

Genus2Curve curve(std::uint32_t p, std::vector<std::int64_t> d) {
  auto F = FieldCtx::prime(p);
  return sextic_normalize(F, poly::from_ints(F, d));
}

}  // namespace

TEST_CASE("Kummer quartic for p = 5") {
  auto Z = curve(5, {2, 0, 0, 0, 0, 1, 1});
  auto K = kummer_surface(Z);
  auto F = Z.F;
  auto expect = form(F, {{2, {1, 3, 0, 0}},
                         {2, {0, 4, 0, 0}},
                         {3, {2, 1, 1, 0}},
                         {1, {1, 2, 1, 0}},
                         {2, {2, 0, 2, 0}},
                         {1, {0, 0, 4, 0}},
                         {2, {3, 0, 0, 1}},
                         {3, {0, 1, 2, 1}},
                         {1, {0, 0, 3, 1}},
                         {1, {0, 2, 0, 2}},
                         {1, {1, 0, 1, 2}}});
  CHECK(K.kappa == expect);
  CHECK(K.kappa.is_homogeneous());
  CHECK(K.kappa.total_degree() == 4);
}

TEST_CASE("Kummer quartic for p = 37 after normalisation") {
  auto Z = curve(37, {-1, 0, 0, 0, 0, 1});
  auto F = Z.F;
  CHECK(Z.D() == poly::from_ints(F, {0, 1, 0, 0, 0, 0, -1}));
  auto expect = form(F, {{1, {4, 0, 0, 0}},
                         {4, {0, 3, 1, 0}},
                         {-4, {1, 1, 2, 0}},
                         {-2, {2, 1, 0, 1}},
                         {4, {0, 0, 3, 1}},
                         {1, {0, 2, 0, 2}},
                         {-4, {1, 0, 1, 2}}});
  CHECK(kummer_surface(Z).kappa == expect);
}

TEST_CASE("normalisation preserves the curve") {
  auto F = FieldCtx::prime(53);
  auto D = poly::from_ints(F, {52, 0, 0, 0, 0, 1});
  auto Z = sextic_normalize(F, D);
  CHECK(Z.D().degree() == 6);
  auto a = lpolynomial(hyperelliptic_curve(F, D));
  auto b = lpolynomial(hyperelliptic_curve(F, Z.D()));
  CHECK(a.c == b.c);

  auto F5 = FieldCtx::prime(5);
  auto D5 = poly::from_ints(F5, {0, 3, 0, 0, 0, 1});
  auto Z5 = sextic_normalize(F5, D5);
  CHECK(F5.is_zero(poly::eval(F5, D5, F5.zero())));
  CHECK(Z5.D().degree() == 6);
  CHECK(count_points_upto(hyperelliptic_curve(F5, D5), 3) == count_points_upto(hyperelliptic_curve(F5, Z5.D()), 3));

  CHECK_THROWS_AS(sextic_normalize(F5, poly::from_ints(F5, {1, 0, 1, 0, 1})), InputError);
  CHECK_THROWS_AS(sextic_normalize(F5, poly::from_ints(F5, {0, 0, 1, 0, 0, 0, 1})), InputError);
}

TEST_CASE("sixteen nodes with vanishing gradient") {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {5u, 7u, 13u, 37u}) {
    auto F = FieldCtx::prime(p);
    int done = 0;
    while (done < 3) {
      std::vector<std::int64_t> d(7);
      for (auto& x : d) x = rng() % p;
      d[6] = 1 + rng() % (p - 1);
      auto D = poly::from_ints(F, d);
      if (!poly::is_squarefree(F, D)) continue;
      auto Z = sextic_normalize(F, D);
      auto K = kummer_surface(Z);
      auto N = kummer_nodes(Z, K);  // throws unless each point is singular
      CHECK(N.pts.size() == 16);
      std::set<std::vector<std::uint64_t>> distinct;
      for (auto& pt : N.pts) {
        // normalise the projective point
        int lead = 0;
        while (N.E.is_zero(pt[lead])) ++lead;
        auto inv = N.E.inv(pt[lead]);
        std::vector<std::uint64_t> key;
        for (auto& c : pt) key.push_back(N.E.index(N.E.mul(c, inv)));
        distinct.insert(key);
      }
      CHECK(distinct.size() == 16);
      ++done;
    }
  }
}

TEST_CASE("plane sections") {
  auto Z = curve(13, {4, 1, 4, 0, 11, 5, 5});
  auto F = Z.F;
  auto P = prepare(Z);
  // w = 0 leaves K0
  auto q = plane_section(F, P.K, {F.zero(), F.zero(), F.zero(), F.one()});
  CHECK(quartic_form(F, q) == P.K.K0);
  // substitution agrees with evaluation on points of the plane
  PlaneV V{F.from_int(4), F.one(), F.from_int(11), F.one()};
  auto q2 = quartic_form(F, plane_section(F, P.K, V));
  for (int x = 0; x < 13; ++x)
    for (int y = 0; y < 13; ++y) {
      auto X = F.from_int(x), Y = F.from_int(y), Zc = F.from_int(7);
      auto W = F.neg(F.add(F.add(F.mul(V.a, X), F.mul(V.b, Y)), F.mul(V.c, Zc)));
      CHECK(mpoly::eval(F, q2, {X, Y, Zc, F.zero()}) == mpoly::eval(F, P.K.kappa, {X, Y, Zc, W}));
    }
  // the c = 1 chart renames w to z
  PlaneV Vc{F.from_int(2), F.from_int(3), F.one(), F.zero()};
  auto q3 = quartic_form(F, plane_section(F, P.K, Vc));
  auto X = F.from_int(5), Y = F.from_int(6), W = F.from_int(9);
  auto Zc = F.neg(F.add(F.mul(Vc.a, X), F.mul(Vc.b, Y)));
  CHECK(mpoly::eval(F, q3, {X, Y, W, F.zero()}) == mpoly::eval(F, P.K.kappa, {X, Y, Zc, W}));
}

TEST_CASE("planes through a node give singular sections") {
  auto Z = curve(7, {1, 2, 0, 3, 0, 0, 1});
  auto F = Z.F;
  auto P = prepare(Z);
  // every plane through [0:0:0:1] has d = 0
  int through = 0;
  for (std::uint64_t i = 0; i < plane_count(7); ++i) {
    auto V = plane_at(F, i);
    if (plane_avoids_nodes(F, P.nodes, V)) continue;
    ++through;
    CHECK_FALSE(smoothness_check(F, plane_section(F, P.K, V)));
  }
  CHECK(through >= 57);
}

TEST_CASE("plane enumeration covers P^3 once") {
  auto F = FieldCtx::prime(5);
  std::set<std::vector<std::uint64_t>> seen;
  std::string chart;
  for (std::uint64_t i = 0; i < plane_count(5); ++i) {
    auto V = plane_at(F, i, &chart);
    std::array<FieldElem, 4> v{V.a, V.b, V.c, V.d};
    int last = 3;
    while (F.is_zero(v[last])) --last;
    CHECK(F.is_one(v[last]));
    CHECK(chart == std::string(1, "abcd"[last]) + "=1");
    seen.insert({F.index(V.a), F.index(V.b), F.index(V.c), F.index(V.d)});
  }
  CHECK(seen.size() == 156);
  CHECK_THROWS_AS(plane_at(F, 156), InputError);
}

TEST_CASE("full scan at p = 5") {
  auto Z = curve(5, {2, 0, 0, 0, 0, 1, 1});
  SearchConfig cfg;
  cfg.chunk = 40;
  std::vector<std::uint64_t> progress;
  cfg.on_progress = [&](std::uint64_t i, const std::vector<SearchResult>&) { progress.push_back(i); };
  auto out = search_planes(Z, cfg);
  CHECK(out.complete);
  CHECK(progress == std::vector<std::uint64_t>{40, 80, 120, 156});
  CHECK(out.supersingular_projective() == 6);
  bool has_row = false;
  for (auto& r : out.found) {
    if (r.status != "supersingular") continue;
    CHECK(r.stable_rank == 0);
    CHECK(newton_polygon(*r.L).is_supersingular());
    if (r.plane.a.c[0] == 0 && r.plane.b.c[0] == 1 && r.plane.c.c[0] == 1 && r.chart == "d=1") has_row = true;
  }
  CHECK(has_row);

  SearchConfig par = cfg;
  par.jobs = 4;
  auto out4 = search_planes(Z, par);
  REQUIRE(out4.found.size() == out.found.size());
  for (std::size_t i = 0; i < out.found.size(); ++i) CHECK(out4.found[i].index == out.found[i].index);
  CHECK(out4.status_counts == out.status_counts);

  SearchConfig resume;
  resume.start = 100;
  auto tail = search_planes(Z, resume);
  std::uint64_t tail_hits = 0;
  for (auto& r : out.found)
    if (r.index >= 100 && r.status == "supersingular") ++tail_hits;
  CHECK(tail.supersingular_projective() == tail_hits);

  auto F = FieldCtx::prime(5);
  auto Zp = sextic_normalize(F, poly::from_ints(F, {0, 3, 0, 0, 0, 1}));
  CHECK(search_planes(Zp, SearchConfig{}).supersingular_projective() == 0);
}

TEST_CASE("genus 2 scan") {
  auto list = genus2_supersingular_scan(5);
  REQUIRE_FALSE(list.empty());
  auto F = FieldCtx::prime(5);
  bool has_Z = false, has_Zp = false;
  auto Zp = sextic_normalize(F, poly::from_ints(F, {0, 3, 0, 0, 0, 1})).D();
  for (std::size_t i = 0; i < list.size(); ++i) {
    CHECK(certify_genus2(list[i]).np.is_supersingular());
    if (list[i].D() == poly::from_ints(F, {2, 0, 0, 0, 0, 1, 1})) has_Z = true;
    if (list[i].D() == Zp) has_Zp = true;
  }
  CHECK(has_Z);
  CHECK(has_Zp);
  CHECK(genus2_supersingular_scan(13, 3).size() == 3);
}

TEST_CASE("table rows at small primes") {
  for (std::uint32_t p : {5u, 13u, 37u}) {
    auto reps = verify_table1(p);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].error == "");
    CHECK(reps[0].pass);
  }
  CHECK_THROWS_AS(verify_table1(7u), InputError);
}
