#include "ss5/certificate.hpp"

#include <cstdio>
#include <sstream>

namespace ss5::cert {

namespace {

std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }
std::string num(const BigInt& v) { return v.str(); }

std::uint64_t parse_u64(const Json& j, const std::string& what) {
  if (!j.is_string()) throw FormatError(what + " must be a decimal string");
  const std::string s = j.get<std::string>();
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw FormatError(what + " is not a number: " + s);
  }
  if (pos != s.size()) throw FormatError(what + " is not a number: " + s);
  return v;
}

std::int64_t parse_i64(const Json& j, const std::string& what) {
  if (!j.is_string()) throw FormatError(what + " must be a decimal string");
  const std::string s = j.get<std::string>();
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw FormatError(what + " is not a number: " + s);
  }
  if (pos != s.size()) throw FormatError(what + " is not a number: " + s);
  return v;
}

const Json& at(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError("missing field \"" + key + "\"");
  return j.at(key);
}

Json elems(const FieldCtx& F, const std::vector<FieldElem>& v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(F.encode(e));
  return a;
}

Json u64s(const std::vector<std::uint64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(num(x));
  return a;
}

Json bigs(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(num(x));
  return a;
}

std::string rational_str(const aux::BigRational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Json exact_ratio(std::uint32_t p, int d) { return rational_str(aux::BigRational(p, d)); }

RecheckResult fail(const std::string& msg) { return {false, msg}; }

RecheckResult compare(const Json& stored, const Json& fresh, const std::vector<std::string>& first_keys = {}) {
  for (const auto& k : first_keys) {
    const Json s = stored.contains(k) ? stored.at(k) : Json();
    const Json f = fresh.contains(k) ? fresh.at(k) : Json();
    if (auto d = first_difference(s, f, "/" + k)) return fail(*d);
  }
  if (auto d = first_difference(stored, fresh)) return fail(*d);
  return {true, "ok"};
}

RecheckResult recheck_m8(const Json& pl, const CountOptions& base) {
  m8::Params prm;
  prm.p = static_cast<std::uint32_t>(parse_u64(at(pl, "p"), "p"));
  prm.F = field_from_json(at(pl, "field"));
  prm.t1 = elem_from_json(prm.F, at(pl, "t1"));
  prm.t2 = elem_from_json(prm.F, at(pl, "t2"));
  prm.route = at(pl, "route").get<std::string>();
  CountOptions opt = base;
  opt.budget = parse_u64(at(pl, "budget"), "budget");
  const std::string mode = at(pl, "mode").get<std::string>();
  const bool exceeded = at(pl, "budget_exceeded").get<bool>();
  m8::Mode m = m8::Mode::Conditional;
  if (mode == "unconditional" || exceeded) m = m8::Mode::Unconditional;
  const Json fresh = m8_payload(m8::certify_params(prm, m, opt), opt.budget);
  auto r = compare(pl, fresh, {"b_value", "c_value"});
  if (!r.ok) return r;
  if (!prm.F.is_zero(prm.F.decode(fresh["b_value"].get<std::string>()))) return fail("/b_value: not zero");
  if (!prm.F.is_zero(prm.F.decode(fresh["c_value"].get<std::string>()))) return fail("/c_value: not zero");
  if (mode == "unconditional" && !fresh["supersingular"].get<bool>()) return fail("/supersingular: false");
  return r;
}

RecheckResult recheck_kummer(const Json& pl, const CountOptions& opt) {
  const std::string op = at(pl, "operation").get<std::string>();
  if (op == "verify-table1") {
    for (const auto& row : at(pl, "rows")) {
      const Json& in = at(row, "input");
      kummer::Table1Row t{};
      t.p = static_cast<std::uint32_t>(parse_u64(at(row, "p"), "p"));
      for (int i = 0; i < 7; ++i) t.d[i] = parse_i64(at(in, "d").at(i), "d");
      for (int i = 0; i < 4; ++i) t.v[i] = parse_i64(at(in, "plane").at(i), "plane");
      const Json fresh = table1_row_json(t, kummer::verify_table1_row(t, opt));
      auto r = compare(row, fresh);
      if (!r.ok) return fail("/rows[p=" + std::to_string(t.p) + "]" + r.message);
      if (!fresh["pass"].get<bool>()) return fail("/rows[p=" + std::to_string(t.p) + "]/pass: false");
    }
    return {true, "ok"};
  }
  if (op == "search") {
    for (const auto& entry : at(pl, "curves")) {
      const auto Z = genus2_from_json(at(entry, "curve"));
      const auto P = kummer::prepare(Z);
      for (const auto& res : at(entry, "results")) {
        std::string chart;
        const std::uint64_t idx = parse_u64(at(res, "index"), "index");
        const auto V = plane_from_json(Z.F, at(res, "plane"));
        auto r = kummer::classify_plane(P, V, opt);
        r.index = idx;
        kummer::plane_at(Z.F, idx, &chart);
        r.chart = chart;
        auto c = compare(res, search_result_json(Z.F, r));
        if (!c.ok) return fail("/results[" + std::to_string(idx) + "]" + c.message);
        if (r.status == "supersingular" &&
            (r.stable_rank != 0 || !newton_polygon(*r.L).is_supersingular() || !smoothness_check(Z.F, r.quartic)))
          return fail("/results[" + std::to_string(idx) + "]: supersingular checks disagree");
      }
    }
    return {true, "ok"};
  }
  throw FormatError("unknown kummer operation " + op);
}

RecheckResult recheck_aux(const std::string& kind, const Json& pl, const CountOptions& opt) {
  const auto p = static_cast<std::uint32_t>(parse_u64(at(pl, "p"), "p"));
  const auto fresh = aux_payload(kind == "genus3" ? aux::genus3_double_cover(p, opt) : aux::genus4_branched_cover(p, opt));
  auto r = compare(pl, fresh, {"parameter"});
  if (r.ok && !fresh["supersingular"].get<bool>()) return fail("/supersingular: false");
  return r;
}

}  // namespace

Json field_json(const FieldCtx& F) {
  Json m = Json::array();
  for (auto c : F.modulus()) m.push_back(num(std::uint64_t{c}));
  return {{"p", num(std::uint64_t{F.p()})}, {"k", num(F.k())}, {"modulus", m}};
}

FieldCtx field_from_json(const Json& j) {
  const auto p = static_cast<std::uint32_t>(parse_u64(at(j, "p"), "p"));
  const auto k = parse_u64(at(j, "k"), "k");
  if (!is_prime_u32(p)) throw FormatError("field characteristic is not prime");
  if (k == 1) return FieldCtx::prime(p);
  std::vector<std::uint32_t> mod;
  for (const auto& c : at(j, "modulus")) mod.push_back(static_cast<std::uint32_t>(parse_u64(c, "modulus")));
  if (mod.size() != k + 1) throw FormatError("modulus length does not match k");
  try {
    return FieldCtx::from_modulus(p, mod);
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad modulus: ") + e.what());
  }
}

FieldElem elem_from_json(const FieldCtx& F, const Json& j) {
  if (!j.is_string()) throw FormatError("field element must be a string");
  try {
    return F.decode(j.get<std::string>());
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad field element: ") + e.what());
  }
}

Json model_json(const CurveModel& C) {
  Json j{{"tag", C.kind()}, {"equation", C.describe()}, {"genus", num(C.genus())}};
  const FieldCtx& F = C.F;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EllipticLegendre>) {
          j["lambda"] = F.encode(m.lambda);
        } else if constexpr (std::is_same_v<T, EllipticWeierstrass> || std::is_same_v<T, HyperellipticSextic>) {
          j["f"] = elems(F, m.f.c);
        } else if constexpr (std::is_same_v<T, PlaneQuartic>) {
          j["coefficients"] = elems(F, {m.a.begin(), m.a.end()});
        } else {
          j["t1"] = F.encode(m.t1);
          j["t2"] = F.encode(m.t2);
        }
      },
      C.data);
  return j;
}

Json lpoly_json(const LPolynomial& L) {
  Json c = Json::array();
  for (auto v : L.c) c.push_back(num(v));
  return {{"q", num(L.q())}, {"g", num(L.g)}, {"coefficients", c}, {"text", L.str()}};
}

Json slopes_json(const NewtonPolygon& np) {
  Json a = Json::array();
  for (const auto& s : np.slopes) a.push_back(s.str());
  return a;
}

Json matrix_json(const FieldCtx& F, const Matrix& M) {
  Json a = Json::array();
  for (const auto& row : M) a.push_back(elems(F, row));
  return a;
}

Json component_json(const m8::ComponentReport& c) {
  return {{"name", c.name},
          {"model", model_json(c.model)},
          {"L", lpoly_json(c.L)},
          {"slopes", slopes_json(c.np)},
          {"supersingular", c.np.is_supersingular()}};
}

Json m8_payload(const m8::Certificate& c, std::uint64_t budget) {
  const auto& prm = c.params;
  const FieldCtx& F = prm.F;
  Json comps = Json::array();
  for (const auto& r : c.components) comps.push_back(component_json(r));
  const auto parts = m8::build_components(prm);
  Json models{{"C1", model_json(parts.C1)},
              {"E1", model_json(parts.E1)},
              {"E2", model_json(parts.E2)},
              {"Y", model_json(parts.Y)}};
  return {{"p", num(std::uint64_t{prm.p})},
          {"mode", c.mode},
          {"route", prm.route},
          {"budget", num(budget)},
          {"field", field_json(F)},
          {"t1", F.encode(prm.t1)},
          {"t2", F.encode(prm.t2)},
          {"A", num((std::uint64_t{prm.p} * prm.p - 1) / 4)},
          {"b_value", F.encode(c.b_value)},
          {"c_value", F.encode(c.c_value)},
          {"models", models},
          {"r_field", field_json(parts.r_field)},
          {"r", parts.r_field.encode(parts.r)},
          {"delta", F.encode(parts.delta)},
          {"components", comps},
          {"y_counts", u64s(c.y_counts)},
          {"predicted_counts", bigs(c.predicted_counts)},
          {"predicted_counts_untwisted", bigs(c.predicted_counts_untwisted)},
          {"budget_exceeded", c.budget_exceeded},
          {"prym_match", c.prym_match},
          {"supersingular", c.supersingular}};
}

Json genus2_json(const kummer::Genus2Curve& Z) {
  return {{"field", field_json(Z.F)}, {"label", Z.label}, {"d", elems(Z.F, {Z.d.begin(), Z.d.end()})},
          {"equation", "y^2 = " + poly::to_string(Z.F, Z.D())}};
}

kummer::Genus2Curve genus2_from_json(const Json& j) {
  kummer::Genus2Curve Z;
  Z.F = field_from_json(at(j, "field"));
  Z.label = at(j, "label").get<std::string>();
  const Json& d = at(j, "d");
  if (!d.is_array() || d.size() != 7) throw FormatError("curve needs seven coefficients");
  for (int i = 0; i < 7; ++i) Z.d[i] = elem_from_json(Z.F, d[i]);
  if (Z.D().degree() != 6 || !poly::is_squarefree(Z.F, Z.D())) throw FormatError("curve is not a separable sextic");
  return Z;
}

Json plane_json(const FieldCtx& F, const kummer::PlaneV& V) {
  return elems(F, {V.a, V.b, V.c, V.d});
}

kummer::PlaneV plane_from_json(const FieldCtx& F, const Json& j) {
  if (!j.is_array() || j.size() != 4) throw FormatError("plane needs four coordinates");
  return {elem_from_json(F, j[0]), elem_from_json(F, j[1]), elem_from_json(F, j[2]), elem_from_json(F, j[3])};
}

Json search_result_json(const FieldCtx& F, const kummer::SearchResult& r) {
  Json j{{"index", num(r.index)},
         {"chart", r.chart},
         {"plane", plane_json(F, r.plane)},
         {"quartic", model_json(plane_quartic(F, r.quartic.a))},
         {"cartier", matrix_json(F, r.cartier)},
         {"stable_rank", num(r.stable_rank)},
         {"counts", u64s(r.counts)},
         {"status", r.status},
         {"reason", r.reason}};
  if (r.L) {
    j["L"] = lpoly_json(*r.L);
    j["slopes"] = slopes_json(newton_polygon(*r.L));
  }
  return j;
}

Json table1_row_json(const kummer::Table1Row& row, const kummer::Table1Report& rep) {
  Json in_d = Json::array(), in_v = Json::array();
  for (auto v : row.d) in_d.push_back(num(v));
  for (auto v : row.v) in_v.push_back(num(v));
  Json j{{"p", num(std::uint64_t{row.p})},
         {"input", {{"d", in_d}, {"plane", in_v}}},
         {"genus2_supersingular", rep.genus2_supersingular},
         {"node_free", rep.node_free},
         {"smooth", rep.smooth},
         {"stable_rank", num(rep.stable_rank)},
         {"quartic_supersingular", rep.quartic_supersingular},
         {"pass", rep.pass},
         {"error", rep.error}};
  if (rep.Z.F.valid()) {
    j["curve"] = genus2_json(rep.Z);
    j["plane"] = plane_json(rep.Z.F, rep.plane);
  }
  if (rep.L) {
    j["L"] = lpoly_json(*rep.L);
    j["slopes"] = slopes_json(newton_polygon(*rep.L));
  }
  return j;
}

Json aux_payload(const aux::AuxCertificate& c) {
  Json comps = Json::array();
  for (const auto& r : c.components) comps.push_back(component_json(r));
  return {{"kind", c.kind},
          {"p", num(std::uint64_t{c.p})},
          {"field", field_json(c.F)},
          {c.kind == "genus3" ? "beta" : "alpha", c.F.encode(c.parameter)},
          {"parameter", c.F.encode(c.parameter)},
          {"components", comps},
          {"hits_fp", num(c.hits_fp)},
          {"expected_fp", exact_ratio(c.p, c.kind == "genus3" ? 4 : 3)},
          {"supersingular", c.supersingular}};
}

Json np_payload(const aux::HeuristicReport& r) {
  return {{"p", num(std::uint64_t{r.p})}, {"f1", num(r.f1)},          {"f2", num(r.f2)},
          {"N", rational_str(r.N)},       {"N_zeta", rational_str(r.N_zeta)}, {"agree", r.N == r.N_zeta}};
}

Json dims_payload(int g, int which, const aux::ConditionDims& d) {
  return {{"g", num(g)},
          {"condition", num(which)},
          {"lhs_bound", num(d.lhs_bound)},
          {"rhs", num(d.rhs)},
          {"holds", d.holds()}};
}

Json poly_payload(const std::string& which, std::uint32_t p) {
  if (!is_prime_u32(p) || p < 3) throw std::invalid_argument("p must be an odd prime");
  UniPoly f;
  if (which == "hasse") {
    f = m8::hasse_polynomial(p);
  } else if (which == "bigB") {
    if (p % 4 != 3) throw m8::PreconditionError("B(t) needs p = 3 mod 4");
    f = m8::big_B_poly(p);
  } else {
    throw std::invalid_argument("unknown polynomial " + which);
  }
  const FieldCtx F = FieldCtx::prime(p);
  return {{"p", num(std::uint64_t{p})},
          {"which", which},
          {"degree", num(f.degree())},
          {"coefficients", elems(F, f.c)},
          {"text", poly::to_string(F, f, which == "hasse" ? "l" : "t")}};
}

std::string payload_hash(const Json& payload) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : payload.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json envelope(const std::string& kind, const Json& payload, const Json& timings, const Json& metadata) {
  return {{"schema_version", kSchemaVersion},
          {"kind", kind},
          {"payload", payload},
          {"payload_hash", payload_hash(payload)},
          {"tool_version", kToolVersion},
          {"timings", timings},
          {"metadata", metadata}};
}

std::optional<std::string> first_difference(const Json& stored, const Json& fresh, const std::string& path) {
  const std::string where = path.empty() ? "/" : path;
  if (stored.type() != fresh.type())
    return where + ": stored " + stored.dump() + ", recomputed " + fresh.dump();
  if (stored.is_object()) {
    for (auto it = fresh.begin(); it != fresh.end(); ++it) {
      if (!stored.contains(it.key())) return path + "/" + it.key() + ": missing from stored payload";
      if (auto d = first_difference(stored.at(it.key()), it.value(), path + "/" + it.key())) return d;
    }
    for (auto it = stored.begin(); it != stored.end(); ++it)
      if (!fresh.contains(it.key())) return path + "/" + it.key() + ": not produced by recomputation";
    return std::nullopt;
  }
  if (stored.is_array()) {
    if (stored.size() != fresh.size())
      return where + ": stored " + std::to_string(stored.size()) + " entries, recomputed " +
             std::to_string(fresh.size());
    for (std::size_t i = 0; i < stored.size(); ++i)
      if (auto d = first_difference(stored[i], fresh[i], path + "/" + std::to_string(i))) return d;
    return std::nullopt;
  }
  if (stored != fresh) return where + ": stored " + stored.dump() + ", recomputed " + fresh.dump();
  return std::nullopt;
}

RecheckResult recheck(const Json& env, const CountOptions& opt) {
  RecheckResult r;
  try {
    if (at(env, "schema_version") != kSchemaVersion) return fail("unsupported schema_version");
    const std::string kind = at(env, "kind").get<std::string>();
    const Json& pl = at(env, "payload");
    if (kind == "m8") {
      r = recheck_m8(pl, opt);
    } else if (kind == "kummer") {
      r = recheck_kummer(pl, opt);
    } else if (kind == "genus3" || kind == "genus4") {
      r = recheck_aux(kind, pl, opt);
    } else if (kind == "np") {
      const auto p = static_cast<std::uint32_t>(parse_u64(at(pl, "p"), "p"));
      r = compare(pl, np_payload(aux::heuristic_intersection_number(p)));
    } else if (kind == "dims") {
      const int g = static_cast<int>(parse_u64(at(pl, "g"), "g"));
      const int which = static_cast<int>(parse_u64(at(pl, "condition"), "condition"));
      r = compare(pl, dims_payload(g, which, aux::condition_dimensions(g, which)));
    } else if (kind == "poly") {
      const auto p = static_cast<std::uint32_t>(parse_u64(at(pl, "p"), "p"));
      r = compare(pl, poly_payload(at(pl, "which").get<std::string>(), p));
    } else {
      return fail("unknown certificate kind " + kind);
    }
    if (r.ok && at(env, "payload_hash") != payload_hash(pl)) return fail("payload_hash does not match the payload");
    return r;
  } catch (const FormatError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(e.what());
  } catch (const std::exception& e) {
    return fail(std::string("recomputation failed: ") + e.what());
  }
}

}  // namespace ss5::cert
