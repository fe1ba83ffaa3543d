#include "ss5/kummer.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace ss5::kummer {

namespace {

MPoly mono(const FieldCtx& F, const FieldElem& c, int i, int j, int k, int l = 0) {
  return mpoly::term(F, c, Exps{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j),
                                static_cast<std::uint16_t>(k), static_cast<std::uint16_t>(l)});
}

MPoly embed_mpoly(const Embedding& E, const MPoly& a) {
  MPoly r;
  for (const auto& [e, c] : a.t) r.t[e] = E(c);
  return r;
}

}  // namespace

UniPoly Genus2Curve::D() const { return poly::trim(UniPoly{{d.begin(), d.end()}}); }

Genus2Curve sextic_normalize(const FieldCtx& F, const UniPoly& D, const std::string& label) {
  if (D.degree() != 5 && D.degree() != 6) throw InputError("sextic model needs degree 5 or 6");
  if (!poly::is_squarefree(F, D)) throw InputError("D is not separable");
  Genus2Curve Z;
  Z.F = F;
  Z.label = label;
  if (D.degree() == 6) {
    for (int i = 0; i <= 6; ++i) Z.d[i] = D.c[i];
    return Z;
  }
  // x^6 D(a + 1/x) = sum d_i (a x + 1)^i x^(6-i)
  ElementCursor cur(F);
  do {
    const FieldElem a = cur.value();
    if (F.is_zero(poly::eval(F, D, a))) continue;
    UniPoly lin{{F.one(), a}};
    lin = poly::trim(lin);
    UniPoly acc;
    for (int i = 0; i <= D.degree(); ++i) {
      if (F.is_zero(D.c[i])) continue;
      auto t = poly::shift(poly::scale(F, poly::pow(F, lin, i), D.c[i]), 6 - i);
      acc = poly::add(F, acc, t);
    }
    for (int i = 0; i <= 6; ++i) Z.d[i] = i <= acc.degree() ? acc.c[i] : F.zero();
    return Z;
  } while (cur.next());
  throw InputError("D vanishes on the whole field");
}

KummerSurface kummer_surface(const Genus2Curve& Z) {
  const FieldCtx& F = Z.F;
  const auto& d = Z.d;
  auto m = [&](const FieldElem& a, const FieldElem& b) { return F.mul(a, b); };
  auto s = [&](std::int64_t n, const FieldElem& a) { return F.mul(F.from_int(n), a); };
  auto add = [&](MPoly& P, const FieldElem& c, int i, int j, int k, int l = 0) {
    if (!F.is_zero(c)) P = mpoly::add(F, P, mono(F, c, i, j, k, l));
  };

  KummerSurface K;
  add(K.K2, F.one(), 0, 2, 0);
  add(K.K2, F.from_int(-4), 1, 0, 1);

  add(K.K1, s(-4, d[0]), 3, 0, 0);
  add(K.K1, s(-2, d[1]), 2, 1, 0);
  add(K.K1, s(-4, d[2]), 2, 0, 1);
  add(K.K1, s(-2, d[3]), 1, 1, 1);
  add(K.K1, s(-4, d[4]), 1, 0, 2);
  add(K.K1, s(-2, d[5]), 0, 1, 2);
  add(K.K1, s(-4, d[6]), 0, 0, 3);

  add(K.K0, F.sub(m(d[1], d[1]), s(4, m(d[0], d[2]))), 4, 0, 0);
  add(K.K0, s(-4, m(d[0], d[3])), 3, 1, 0);
  add(K.K0, s(-2, m(d[1], d[3])), 3, 0, 1);
  add(K.K0, s(-4, m(d[0], d[4])), 2, 2, 0);
  add(K.K0, s(4, F.sub(m(d[0], d[5]), m(d[1], d[4]))), 2, 1, 1);
  add(K.K0,
      F.sub(F.add(m(d[3], d[3]), s(2, m(d[1], d[5]))), F.add(s(4, m(d[2], d[4])), s(4, m(d[0], d[6])))), 2, 0,
      2);
  add(K.K0, s(-4, m(d[0], d[5])), 1, 3, 0);
  add(K.K0, s(4, F.sub(s(2, m(d[0], d[6])), m(d[1], d[5]))), 1, 2, 1);
  add(K.K0, s(4, F.sub(m(d[1], d[6]), m(d[2], d[5]))), 1, 1, 2);
  add(K.K0, s(-2, m(d[3], d[5])), 1, 0, 3);
  add(K.K0, s(-4, m(d[0], d[6])), 0, 4, 0);
  add(K.K0, s(-4, m(d[1], d[6])), 0, 3, 1);
  add(K.K0, s(-4, m(d[2], d[6])), 0, 2, 2);
  add(K.K0, s(-4, m(d[3], d[6])), 0, 1, 3);
  add(K.K0, F.sub(m(d[5], d[5]), s(4, m(d[4], d[6]))), 0, 0, 4);

  const MPoly w = mpoly::var(F, 3);
  K.kappa = mpoly::add(F, mpoly::add(F, mpoly::mul(F, K.K2, mpoly::mul(F, w, w)), mpoly::mul(F, K.K1, w)), K.K0);
  return K;
}

Nodes kummer_nodes(const Genus2Curve& Z, const KummerSurface& K) {
  const FieldCtx& F = Z.F;
  const UniPoly D = Z.D();
  const int e = poly::splitting_degree(F, D);
  Nodes N;
  N.E = make_extension(F, e);
  const FieldCtx& E = N.E;
  Embedding emb(F, E);
  const auto th = poly::roots_in_extension(F, D, E);
  if (th.size() != 6) throw CurveError("sextic does not split into six distinct roots");
  const MPoly kap = embed_mpoly(emb, K.kappa);
  const MPoly k2 = embed_mpoly(emb, K.K2), k1 = embed_mpoly(emb, K.K1);

  N.pts.push_back({E.zero(), E.zero(), E.zero(), E.one()});
  for (std::size_t i = 0; i < th.size(); ++i)
    for (std::size_t j = i + 1; j < th.size(); ++j) {
      Point4 pt{E.one(), E.add(th[i], th[j]), E.mul(th[i], th[j]), E.zero()};
      const FieldElem a2 = mpoly::eval(E, k2, pt), a1 = mpoly::eval(E, k1, pt);
      pt[3] = E.neg(E.div(a1, E.add(a2, a2)));
      N.pts.push_back(pt);
    }
  for (const auto& pt : N.pts) {
    if (!E.is_zero(mpoly::eval(E, kap, pt))) throw CurveError("node is not on the surface");
    for (int v = 0; v < 4; ++v)
      if (!E.is_zero(mpoly::eval(E, mpoly::partial(E, kap, v), pt)))
        throw CurveError("node is not a singular point");
  }
  return N;
}

PlaneQuartic plane_section(const FieldCtx& F, const KummerSurface& K, const PlaneV& V) {
  const std::array<FieldElem, 4> v{V.a, V.b, V.c, V.d};
  int last = 3;
  while (last >= 0 && F.is_zero(v[last])) --last;
  if (last < 0) throw InputError("zero plane");
  const FieldElem ninv = F.neg(F.inv(v[last]));
  MPoly sub;
  for (int i = 0; i < last; ++i)
    if (!F.is_zero(v[i])) sub = mpoly::add(F, sub, mpoly::scale(F, mpoly::var(F, i), F.mul(v[i], ninv)));
  MPoly r = mpoly::substitute(F, K.kappa, last, sub);
  std::array<int, 4> perm{};
  int next = 0;
  for (int i = 0; i < 4; ++i)
    if (i != last) perm[i] = next++;
  perm[last] = 3;
  r = mpoly::permute(r, perm);
  auto C = plane_quartic(F, r);
  return std::get<PlaneQuartic>(C.data);
}

bool plane_avoids_nodes(const FieldCtx& F, const Nodes& nodes, const PlaneV& V) {
  const FieldCtx& E = nodes.E;
  Embedding emb(F, E);
  const std::array<FieldElem, 4> v{emb(V.a), emb(V.b), emb(V.c), emb(V.d)};
  for (const auto& pt : nodes.pts) {
    FieldElem s = E.zero();
    for (int i = 0; i < 4; ++i) s = E.add(s, E.mul(v[i], pt[i]));
    if (E.is_zero(s)) return false;
  }
  return true;
}

std::uint64_t plane_count(std::uint32_t p) {
  const std::uint64_t q = p;
  return q * q * q + q * q + q + 1;
}

PlaneV plane_at(const FieldCtx& F, std::uint64_t index, std::string* chart) {
  const std::uint64_t p = F.p();
  if (F.k() != 1) throw InputError("plane scan needs a prime field");
  if (index >= plane_count(F.p())) throw InputError("plane index out of range");
  auto el = [&](std::uint64_t x) { return F.from_int(static_cast<std::int64_t>(x)); };
  PlaneV V{F.zero(), F.zero(), F.zero(), F.zero()};
  std::string ch;
  if (index < p * p * p) {
    V = {el(index / (p * p)), el((index / p) % p), el(index % p), F.one()};
    ch = "d=1";
  } else if ((index -= p * p * p) < p * p) {
    V = {el(index / p), el(index % p), F.one(), F.zero()};
    ch = "c=1";
  } else if ((index -= p * p) < p) {
    V = {el(index), F.one(), F.zero(), F.zero()};
    ch = "b=1";
  } else {
    V = {F.one(), F.zero(), F.zero(), F.zero()};
    ch = "a=1";
  }
  if (chart) *chart = ch;
  return V;
}

Prepared prepare(const Genus2Curve& Z) {
  Prepared P{Z, kummer_surface(Z), {}};
  P.nodes = kummer_nodes(Z, P.K);
  return P;
}

SearchResult classify_plane(const Prepared& P, const PlaneV& V, const CountOptions& opt) {
  const FieldCtx& F = P.Z.F;
  SearchResult r;
  r.plane = V;
  r.status = "rejected";
  r.quartic = plane_section(F, P.K, V);
  if (!plane_avoids_nodes(F, P.nodes, V)) {
    r.reason = "through a node";
    return r;
  }
  if (!smoothness_check(F, r.quartic)) {
    r.reason = "singular";
    return r;
  }
  const CurveModel C = plane_quartic(F, r.quartic.a);
  r.cartier = cartier_matrix(C);
  r.stable_rank = stable_rank(F, r.cartier);
  if (r.stable_rank != 0) {
    r.reason = "p-rank " + std::to_string(r.stable_rank);
    return r;
  }
  r.counts = count_points_upto(C, 3, opt);
  r.L = LPolynomial::from_counts(F.p(), F.k(), 3, r.counts);
  r.status = newton_polygon(*r.L).is_supersingular() ? "supersingular" : "prank0-only";
  return r;
}

std::uint64_t SearchOutcome::supersingular_projective() const {
  return static_cast<std::uint64_t>(
      std::count_if(found.begin(), found.end(), [](const SearchResult& r) { return r.status == "supersingular"; }));
}

std::uint64_t SearchOutcome::supersingular_affine() const {
  return static_cast<std::uint64_t>(std::count_if(found.begin(), found.end(), [](const SearchResult& r) {
    return r.status == "supersingular" && r.chart == "d=1";
  }));
}

SearchOutcome search_planes(const Genus2Curve& Z, const SearchConfig& cfg) { return search_planes(prepare(Z), cfg); }

SearchOutcome search_planes(const Prepared& P, const SearchConfig& cfg) {
  const FieldCtx& F = P.Z.F;
  const std::uint64_t total = plane_count(F.p());
  const std::uint64_t end = std::min(cfg.end, total);
  const std::uint64_t chunk = std::max<std::uint64_t>(cfg.chunk, 1);
  const int jobs = std::max(cfg.jobs, 1);
  CountOptions copt = cfg.count;
  copt.jobs = 1;

  SearchOutcome out;
  std::uint64_t i = std::min(cfg.start, end);
  while (i < end) {
    if (cfg.stop && cfg.stop->load()) break;
    const std::uint64_t stop = std::min(i + chunk, end);
    std::atomic<std::uint64_t> next{i};
    std::mutex mu;
    std::exception_ptr err;
    std::vector<SearchResult> hits;
    std::map<std::string, std::uint64_t> counts;
    auto worker = [&] {
      std::vector<SearchResult> local;
      std::map<std::string, std::uint64_t> lc;
      try {
        for (std::uint64_t j; (j = next.fetch_add(1)) < stop;) {
          std::string chart;
          const PlaneV V = plane_at(F, j, &chart);
          auto r = classify_plane(P, V, copt);
          r.index = j;
          r.chart = chart;
          ++lc[r.status == "rejected" ? "rejected: " + r.reason : r.status];
          if (r.status != "rejected") local.push_back(std::move(r));
        }
      } catch (...) {
        std::lock_guard lk(mu);
        if (!err) err = std::current_exception();
        next = stop;
      }
      std::lock_guard lk(mu);
      for (auto& r : local) hits.push_back(std::move(r));
      for (auto& [k, v] : lc) counts[k] += v;
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> th;
      for (int t = 0; t < jobs; ++t) th.emplace_back(worker);
      for (auto& t : th) t.join();
    }
    if (err) std::rethrow_exception(err);
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    for (auto& r : hits) out.found.push_back(std::move(r));
    for (auto& [k, v] : counts) out.status_counts[k] += v;
    i = stop;
    if (cfg.on_progress) cfg.on_progress(i, out.found);
    if (cfg.stop_at_first && out.supersingular_projective() > 0) break;
  }
  out.next_index = i;
  out.complete = i >= end;
  return out;
}

Genus2Certificate certify_genus2(const Genus2Curve& Z, const CountOptions& opt) {
  const CurveModel C = hyperelliptic_curve(Z.F, Z.D());
  Genus2Certificate g{lpolynomial(C, opt), {}, p_rank_cartier(C)};
  g.np = newton_polygon(g.L);
  return g;
}

std::vector<Genus2Curve> genus2_supersingular_scan(std::uint32_t p, std::size_t max_results) {
  if (!is_prime_u32(p) || p < 3) throw InputError("need an odd prime");
  const FieldCtx F = FieldCtx::prime(p);
  std::vector<Genus2Curve> out;
  std::array<std::uint32_t, 7> dig{};
  dig[6] = 1;
  while (out.size() < max_results) {
    UniPoly D;
    for (auto v : dig) D.c.push_back(F.from_int(v));
    D = poly::trim(D);
    if (poly::is_squarefree(F, D)) {
      const CurveModel C = hyperelliptic_curve(F, D);
      if (p_rank_cartier(C) == 0 && newton_polygon(lpolynomial(C)).is_supersingular()) {
        Genus2Curve Z;
        Z.F = F;
        for (int i = 0; i < 7; ++i) Z.d[i] = D.c[i];
        out.push_back(std::move(Z));
      }
    }
    int k = 0;
    while (k < 7 && ++dig[k] == p) dig[k++] = 0;
    if (k == 7) break;
  }
  return out;
}

const std::vector<Table1Row>& table1_rows() {
  static const std::vector<Table1Row> rows = {
      {5, {2, 0, 0, 0, 0, 1, 1}, {0, 1, 1, 1}},
      {13, {4, 1, 4, 0, 11, 5, 5}, {4, 1, 11, 1}},
      {17, {3, 13, 3, 3, 1, 6, 15}, {8, 1, 9, 1}},
      {29, {17, 4, 1, 3, 6, 23, 21}, {27, 7, 28, 1}},
      {37, {36, 0, 0, 0, 0, 1, 0}, {6, 6, 4, 1}},
      {41, {3, 1, 40, 21, 8, 33, 33}, {9, 9, 32, 1}},
      {53, {52, 0, 0, 0, 0, 1, 0}, {6, 4, 8, 1}},
      {61, {16, 30, 3, 11, 49, 32, 3}, {0, 26, 30, 1}},
      {73, {72, 0, 0, 0, 0, 1, 0}, {29, 23, 44, 1}},
      {89, {77, 11, 63, 57, 24, 28, 1}, {7, 15, 47, 1}},
      {97, {52, 28, 7, 44, 26, 0, 39}, {89, 6, 67, 1}},
  };
  return rows;
}

Table1Report verify_table1_row(const Table1Row& row, const CountOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  Table1Report rep;
  rep.p = row.p;
  const FieldCtx F = FieldCtx::prime(row.p);
  try {
    std::vector<std::int64_t> ds(row.d.begin(), row.d.end());
    rep.Z = sextic_normalize(F, poly::from_ints(F, ds), "p=" + std::to_string(row.p));
    rep.plane = {F.from_int(row.v[0]), F.from_int(row.v[1]), F.from_int(row.v[2]), F.from_int(row.v[3])};
    rep.genus2_supersingular = certify_genus2(rep.Z, opt).np.is_supersingular();
    const Prepared P = prepare(rep.Z);
    const PlaneQuartic q = plane_section(F, P.K, rep.plane);
    rep.node_free = plane_avoids_nodes(F, P.nodes, rep.plane);
    rep.smooth = smoothness_check(F, q);
    if (rep.smooth) {
      const CurveModel C = plane_quartic(F, q.a);
      rep.stable_rank = p_rank_cartier(C);
      rep.L = lpolynomial(C, opt);
      rep.quartic_supersingular = newton_polygon(*rep.L).is_supersingular();
    }
    rep.pass = rep.genus2_supersingular && rep.smooth && rep.node_free && rep.stable_rank == 0 &&
               rep.quartic_supersingular;
  } catch (const std::exception& e) {
    rep.error = e.what();
    rep.pass = false;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<Table1Report> verify_table1(std::optional<std::uint32_t> p, const CountOptions& opt) {
  std::vector<Table1Report> out;
  for (const auto& row : table1_rows())
    if (!p || *p == row.p) out.push_back(verify_table1_row(row, opt));
  if (p && out.empty()) throw InputError("no table row for p = " + std::to_string(*p));
  return out;
}

}  // namespace ss5::kummer
