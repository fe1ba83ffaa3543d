#include "ss5/orchestrator.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ss5::run {

namespace {

using cert::Json;
using Clock = std::chrono::steady_clock;

std::string seconds_str(Clock::time_point t0) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::chrono::duration<double>(Clock::now() - t0).count());
  return buf;
}

Json metadata(const std::string& command, const Config& cfg) {
  return {{"command", command},
          {"budget", std::to_string(cfg.budget)},
          {"jobs", std::to_string(cfg.jobs)},
          {"seed", std::to_string(cfg.seed)},
          {"max_extension", std::to_string(cfg.max_extension)}};
}

std::uint64_t parse_env(const char* name, const char* value) {
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    throw UsageError(std::string(name) + " is not a number");
  }
  if (pos != std::string(value).size()) throw UsageError(std::string(name) + " is not a number");
  return v;
}

void require_odd_prime(std::uint32_t p) {
  if (p < 3 || !is_prime_u32(p)) throw UsageError("p must be an odd prime");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

std::int64_t parse_cell(const std::string& s, const std::string& where) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw UsageError(where + ": not an integer: " + s);
  }
  if (pos != s.size()) throw UsageError(where + ": not an integer: " + s);
  return v;
}

Json counts_json(const std::map<std::string, std::uint64_t>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = std::to_string(v);
  return j;
}

std::map<std::string, std::uint64_t> counts_from_json(const Json& j) {
  std::map<std::string, std::uint64_t> m;
  for (auto it = j.begin(); it != j.end(); ++it) m[it.key()] = std::stoull(it.value().get<std::string>());
  return m;
}

Json curve_entry(const kummer::Genus2Curve& Z, const Json& results, const std::map<std::string, std::uint64_t>& sc,
                 std::uint64_t next, bool complete) {
  std::uint64_t proj = 0, aff = 0;
  for (const auto& r : results)
    if (r["status"] == "supersingular") {
      ++proj;
      if (r["chart"] == "d=1") ++aff;
    }
  return {{"curve", cert::genus2_json(Z)},
          {"complete", complete},
          {"next_index", std::to_string(next)},
          {"planes", std::to_string(kummer::plane_count(Z.F.p()))},
          {"status_counts", counts_json(sc)},
          {"supersingular_projective", std::to_string(proj)},
          {"supersingular_affine", std::to_string(aff)},
          {"results", results}};
}

}  // namespace

void apply_environment(Config& cfg) {
  if (const char* v = std::getenv("SS5_JOBS")) cfg.jobs = static_cast<int>(parse_env("SS5_JOBS", v));
  if (const char* v = std::getenv("SS5_BUDGET")) cfg.budget = parse_env("SS5_BUDGET", v);
}

void validate(const Config& cfg) {
  if (cfg.jobs < 1) throw UsageError("jobs must be at least 1");
  if (cfg.budget < kMinBudget) throw UsageError("budget must be at least 1000000");
  if (cfg.max_extension < 1 || cfg.max_extension > kMaxDegree)
    throw UsageError("max extension must lie in [1, " + std::to_string(kMaxDegree) + "]");
  if (cfg.checkpoint_every < 1) throw UsageError("checkpoint interval must be positive");
}

CountOptions count_options(const Config& cfg) {
  CountOptions o;
  o.budget = cfg.budget;
  o.jobs = cfg.jobs;
  return o;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw UsageError("cannot write " + path);
    out << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

void write_output(const Outcome& out, const Config& cfg) {
  if (!cfg.output_path.empty() && !out.envelope.is_null()) write_json_file(cfg.output_path, out.envelope);
}

std::vector<kummer::Genus2Curve> read_curves_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::vector<kummer::Genus2Curve> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto cells = split_csv(line);
    if (cells.empty() || cells[0].empty() || cells[0][0] == '#') continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (lineno == 1 && cells[0] == "p") continue;
    if (cells.size() != 9) throw UsageError(where + ": expected p,label,d0,...,d6");
    const std::int64_t p = parse_cell(cells[0], where);
    if (p < 3 || p > UINT32_MAX || !is_prime_u32(static_cast<std::uint32_t>(p)))
      throw UsageError(where + ": p must be an odd prime");
    const FieldCtx F = FieldCtx::prime(static_cast<std::uint32_t>(p));
    std::vector<std::int64_t> d;
    for (int i = 2; i < 9; ++i) d.push_back(parse_cell(cells[i], where));
    try {
      out.push_back(kummer::sextic_normalize(F, poly::from_ints(F, d), cells[1]));
    } catch (const kummer::InputError& e) {
      throw UsageError(where + ": " + e.what());
    }
  }
  return out;
}

Outcome cmd_m8(std::uint32_t p, m8::Mode mode, const Config& cfg) {
  validate(cfg);
  if (!is_prime_u32(p)) throw UsageError("p must be prime");
  const auto t0 = Clock::now();
  m8::Certificate c;
  try {
    c = m8::verify_theorem12(p, mode, count_options(cfg), cfg.max_extension);
  } catch (const m8::PreconditionError& e) {
    throw UsageError(e.what());
  }
  Outcome out;
  const Json payload = cert::m8_payload(c, cfg.budget);
  out.envelope = cert::envelope("m8", payload, {{"seconds", seconds_str(t0)}}, metadata("m8", cfg));
  const FieldCtx& F = c.params.F;
  out.lines.push_back("p=" + std::to_string(p) + " field F_" + F.order().str() + " t1=" + F.encode(c.params.t1) +
                      " t2=" + F.encode(c.params.t2) + " route=" + c.params.route + " mode=" + c.mode);
  if (c.mode == "unconditional") {
    for (const auto& r : c.components) out.lines.push_back("  " + r.name + ": L = " + r.L.str());
    out.lines.push_back(std::string("  supersingular=") + (c.supersingular ? "yes" : "no") +
                        " prym_match=" + (c.prym_match ? "yes" : "no"));
  }
  if (c.budget_exceeded) {
    out.lines.push_back("  counting budget exceeded; certificate is conditional");
    out.exit_code = kBudget;
  } else if (!F.is_zero(c.b_value) || !F.is_zero(c.c_value) || (c.mode == "unconditional" && !c.supersingular)) {
    out.exit_code = kVerifyFailed;
  }
  return out;
}

Outcome cmd_kummer_search(std::uint32_t p, const std::optional<std::string>& curves_path, const Config& cfg,
                          bool stop_at_first, const std::atomic<bool>* stop) {
  validate(cfg);
  require_odd_prime(p);
  const auto t0 = Clock::now();
  std::vector<kummer::Genus2Curve> curves;
  if (curves_path) {
    for (auto& Z : read_curves_csv(*curves_path))
      if (Z.F.p() == p) curves.push_back(std::move(Z));
    if (curves.empty()) throw UsageError("no curves for p = " + std::to_string(p) + " in " + *curves_path);
  }
  const bool builtin = !curves_path;
  // The built-in source walks the scan until a curve with a supersingular plane turns up.
  auto ensure_curve = [&](std::size_t ci) {
    if (!builtin || ci < curves.size()) return ci < curves.size();
    curves = kummer::genus2_supersingular_scan(p, ci + 1);
    for (std::size_t k = 0; k < curves.size(); ++k) curves[k].label = "scan:" + std::to_string(k);
    return ci < curves.size();
  };
  if (!ensure_curve(0)) throw UsageError("no supersingular sextic over F_" + std::to_string(p));

  Json done = Json::array();
  std::size_t first_curve = 0;
  Json resume_found = Json::array();
  std::map<std::string, std::uint64_t> resume_counts;
  std::uint64_t resume_next = 0;
  const bool use_ckpt = !cfg.checkpoint_path.empty();
  if (use_ckpt && std::filesystem::exists(cfg.checkpoint_path)) {
    const Json ck = read_json_file(cfg.checkpoint_path);
    try {
      if (ck.at("p") != std::to_string(p)) throw UsageError("checkpoint is for a different p");
      first_curve = std::stoull(ck.at("curve_index").get<std::string>());
      if (!ensure_curve(first_curve) || ck.at("curve_label") != curves[first_curve].label)
        throw UsageError("checkpoint does not match the curve list");
      done = ck.at("done");
      resume_found = ck.at("found");
      resume_counts = counts_from_json(ck.at("status_counts"));
      resume_next = std::stoull(ck.at("next_index").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad checkpoint: ") + e.what());
    }
  }

  Outcome out;
  CountOptions copt = count_options(cfg);
  bool interrupted = false, partial = false;
  std::uint64_t scanned = 0;
  bool any_hit = false;
  for (std::size_t ci = first_curve; !interrupted && !partial && !(builtin && any_hit) && ensure_curve(ci); ++ci) {
    const auto& Z = curves[ci];
    const auto P = kummer::prepare(Z);
    const std::uint64_t total = kummer::plane_count(p);
    Json found = ci == first_curve ? resume_found : Json::array();
    auto counts = ci == first_curve ? resume_counts : std::map<std::string, std::uint64_t>{};
    std::uint64_t i = ci == first_curve ? resume_next : 0;
    bool hit = false;
    for (const auto& r : found)
      if (r["status"] == "supersingular") hit = true;
    while (i < total && !(stop_at_first && hit)) {
      if (stop && stop->load()) {
        interrupted = true;
        break;
      }
      if (cfg.max_planes && scanned >= cfg.max_planes) {
        partial = true;
        break;
      }
      std::uint64_t len = cfg.checkpoint_every;
      if (cfg.max_planes) len = std::min(len, cfg.max_planes - scanned);
      kummer::SearchConfig sc;
      sc.count = copt;
      sc.jobs = cfg.jobs;
      sc.start = i;
      sc.end = std::min(total, i + len);
      sc.chunk = cfg.checkpoint_every;
      const auto res = kummer::search_planes(P, sc);
      for (const auto& r : res.found) {
        found.push_back(cert::search_result_json(Z.F, r));
        if (r.status == "supersingular") hit = true;
      }
      for (const auto& [k, v] : res.status_counts) counts[k] += v;
      scanned += res.next_index - i;
      i = res.next_index;
      if (use_ckpt) {
        std::string chart = "done";
        if (i < total) kummer::plane_at(Z.F, i, &chart);
        write_json_file(cfg.checkpoint_path, {{"p", std::to_string(p)},
                                              {"curve_label", Z.label},
                                              {"curve_index", std::to_string(ci)},
                                              {"chart", chart},
                                              {"next_index", std::to_string(i)},
                                              {"found", found},
                                              {"status_counts", counts_json(counts)},
                                              {"done", done}});
      }
    }
    any_hit = any_hit || hit;
    Json entry = curve_entry(Z, found, counts, i, i >= total);
    out.lines.push_back("curve " + Z.label + " (" + entry["curve"]["equation"].get<std::string>() + "): " +
                        entry["supersingular_projective"].get<std::string>() + " supersingular planes, " +
                        entry["supersingular_affine"].get<std::string>() + " with d = 1; scanned " +
                        std::to_string(i) + "/" + std::to_string(total));
    done.push_back(entry);
  }
  if (use_ckpt && !interrupted && !partial) std::filesystem::remove(cfg.checkpoint_path);
  const Json payload{{"operation", "search"}, {"p", std::to_string(p)}, {"curves", done}};
  out.envelope = cert::envelope("kummer", payload, {{"seconds", seconds_str(t0)}}, metadata("kummer search", cfg));
  if (interrupted) {
    out.exit_code = kInterrupted;
    out.lines.push_back("interrupted; partial results kept");
  } else if (partial) {
    out.lines.push_back("plane limit reached; resume from the checkpoint");
  }
  return out;
}

Outcome cmd_verify_table1(std::optional<std::uint32_t> p, const Config& cfg) {
  validate(cfg);
  const auto t0 = Clock::now();
  if (p) {
    bool known = false;
    for (const auto& row : kummer::table1_rows()) known = known || row.p == *p;
    if (!known) throw UsageError("no table row for p = " + std::to_string(*p));
  }
  Outcome out;
  Json rows = Json::array(), timings = Json::object();
  int passed = 0, total = 0;
  const CountOptions opt = count_options(cfg);
  for (const auto& row : kummer::table1_rows()) {
    if (p && row.p != *p) continue;
    const auto rep = kummer::verify_table1_row(row, opt);
    rows.push_back(cert::table1_row_json(row, rep));
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", rep.seconds);
    timings["p=" + std::to_string(row.p)] = secs;
    ++total;
    if (rep.pass) ++passed;
    std::string line = "p=" + std::to_string(row.p) + (rep.pass ? " PASS " : " FAIL ") + secs + "s";
    if (rep.L) line += " L = " + rep.L->str();
    if (!rep.error.empty()) line += " error: " + rep.error;
    out.lines.push_back(line);
  }
  out.lines.push_back(std::to_string(passed) + "/" + std::to_string(total) + " rows pass");
  timings["seconds"] = seconds_str(t0);
  const Json payload{{"operation", "verify-table1"},
                     {"rows", rows},
                     {"passed", std::to_string(passed)},
                     {"total", std::to_string(total)}};
  out.envelope = cert::envelope("kummer", payload, timings, metadata("kummer verify-table1", cfg));
  out.exit_code = passed == total ? kOk : kVerifyFailed;
  return out;
}

namespace {

Outcome aux_outcome(const std::string& kind, std::uint32_t p, const Config& cfg) {
  validate(cfg);
  const auto t0 = Clock::now();
  Outcome out;
  aux::AuxCertificate c;
  try {
    c = kind == "genus3" ? aux::genus3_double_cover(p, count_options(cfg), cfg.max_extension)
                         : aux::genus4_branched_cover(p, count_options(cfg), cfg.max_extension);
  } catch (const aux::PreconditionError& e) {
    throw UsageError(e.what());
  } catch (const aux::NoParameter& e) {
    out.exit_code = kVerifyFailed;
    out.lines.push_back(e.what());
    return out;
  }
  out.envelope = cert::envelope(kind, cert::aux_payload(c), {{"seconds", seconds_str(t0)}}, metadata("aux " + kind, cfg));
  out.lines.push_back(kind + " p=" + std::to_string(p) + " parameter=" + c.F.encode(c.parameter) + " over F_" +
                      c.F.order().str() + "; F_p hits " + std::to_string(c.hits_fp) + " (expected about " +
                      out.envelope["payload"]["expected_fp"].get<std::string>() + ")");
  for (const auto& r : c.components) out.lines.push_back("  " + r.name + ": L = " + r.L.str());
  out.exit_code = c.supersingular ? kOk : kVerifyFailed;
  return out;
}

}  // namespace

Outcome cmd_genus3(std::uint32_t p, const Config& cfg) { return aux_outcome("genus3", p, cfg); }
Outcome cmd_genus4(std::uint32_t p, const Config& cfg) { return aux_outcome("genus4", p, cfg); }

Outcome cmd_np(std::uint32_t p) {
  if (p < 2) throw UsageError("p must be at least 2");
  const auto r = aux::heuristic_intersection_number(p);
  Outcome out;
  out.envelope = cert::envelope("np", cert::np_payload(r));
  out.lines.push_back("N_" + std::to_string(p) + " = " + out.envelope["payload"]["N"].get<std::string>());
  return out;
}

Outcome cmd_dims(int g, int which) {
  aux::ConditionDims d;
  try {
    d = aux::condition_dimensions(g, which);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Outcome out;
  out.envelope = cert::envelope("dims", cert::dims_payload(g, which, d));
  out.lines.push_back("g=" + std::to_string(g) + " condition " + std::to_string(which) + ": bound " +
                      std::to_string(d.lhs_bound) + ", rhs " + std::to_string(d.rhs) +
                      (d.holds() ? " (holds)" : " (fails)"));
  return out;
}

Outcome cmd_poly(const std::string& which, std::uint32_t p) {
  require_odd_prime(p);
  Outcome out;
  try {
    out.envelope = cert::envelope("poly", cert::poly_payload(which, p));
  } catch (const m8::PreconditionError& e) {
    throw UsageError(e.what());
  }
  out.lines.push_back(out.envelope["payload"]["text"].get<std::string>());
  return out;
}

Outcome cmd_recheck(const std::string& path, const Config& cfg) {
  validate(cfg);
  const Json env = read_json_file(path);
  cert::RecheckResult r;
  try {
    r = cert::recheck(env, count_options(cfg));
  } catch (const cert::FormatError& e) {
    throw UsageError(path + ": " + e.what());
  }
  Outcome out;
  out.exit_code = r.ok ? kOk : kVerifyFailed;
  out.lines.push_back(r.ok ? "recheck ok" : "recheck failed: " + r.message);
  return out;
}

}  // namespace ss5::run
