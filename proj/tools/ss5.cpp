#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "ss5/orchestrator.hpp"

using namespace ss5;

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

struct Common {
  std::uint32_t p = 0;
  std::string out;
  int jobs = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  int max_extension = 0;
  std::string checkpoint;
};

void add_common(CLI::App* app, Common& c, bool needs_p = true) {
  auto* p = app->add_option("--p", c.p, "prime");
  if (needs_p) p->required();
  app->add_option("--out", c.out, "write the JSON envelope here instead of stdout");
  app->add_option("--jobs", c.jobs, "worker threads (default 1, or SS5_JOBS)")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "seed recorded with the run");
  app->add_option("--budget", c.budget, "largest field size counted by enumeration (default 1e10, or SS5_BUDGET)");
  app->add_option("--max-extension", c.max_extension, "largest parameter field degree");
}

run::Config make_config(const Common& c) {
  run::Config cfg;
  run::apply_environment(cfg);
  if (c.jobs > 0) cfg.jobs = c.jobs;
  if (c.budget > 0) cfg.budget = c.budget;
  if (c.max_extension > 0) cfg.max_extension = c.max_extension;
  cfg.seed = c.seed;
  cfg.output_path = c.out;
  cfg.checkpoint_path = c.checkpoint;
  return cfg;
}

int finish(const run::Outcome& out, const run::Config& cfg) {
  for (const auto& l : out.lines) std::cerr << l << "\n";
  if (!out.envelope.is_null()) {
    if (cfg.output_path.empty())
      std::cout << out.envelope.dump(2) << "\n";
    else
      run::write_output(out, cfg);
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supersingular curve constructions and certificates"};
  app.require_subcommand(1);

  Common m8c;
  std::string mode = "auto";
  auto* m8cmd = app.add_subcommand("m8", "certify a supersingular genus 5 curve for p = 3 mod 4");
  add_common(m8cmd, m8c);
  m8cmd->add_option("--mode", mode, "auto, conditional or unconditional")
      ->check(CLI::IsMember({"auto", "conditional", "unconditional"}));

  auto* kummer = app.add_subcommand("kummer", "plane sections of Kummer surfaces");
  kummer->require_subcommand(1);
  Common ksc;
  std::string curves;
  bool stop_at_first = false;
  std::uint64_t every = 10000;
  auto* search = kummer->add_subcommand("search", "scan planes over F_p");
  add_common(search, ksc);
  search->add_option("--curves", curves, "CSV file p,label,d0,...,d6");
  search->add_option("--checkpoint", ksc.checkpoint, "checkpoint file for resuming");
  search->add_option("--checkpoint-every", every, "planes per checkpoint")->check(CLI::PositiveNumber);
  std::uint64_t max_planes = 0;
  search->add_option("--max-planes", max_planes, "stop after this many planes, keeping the checkpoint");
  search->add_flag("--stop-at-first", stop_at_first, "stop each curve at its first supersingular plane");
  Common ktc;
  auto* table = kummer->add_subcommand("verify-table1", "verify the tabulated curves and planes");
  add_common(table, ktc, false);

  auto* auxc = app.add_subcommand("aux", "auxiliary constructions");
  auxc->require_subcommand(1);
  Common g3c, g4c, npc, dmc;
  int g = 0, which = 1;
  add_common(auxc->add_subcommand("genus3", "unramified double covers in genus 3"), g3c);
  add_common(auxc->add_subcommand("genus4", "branched double covers in genus 4"), g4c);
  add_common(auxc->add_subcommand("np", "heuristic intersection number"), npc);
  auto* dims = auxc->add_subcommand("dims", "dimension counts for the two conditions");
  add_common(dims, dmc, false);
  dims->add_option("--g", g, "genus")->required();
  dims->add_option("--condition", which, "1 or 2")->check(CLI::IsMember({1, 2}));

  Common rcc;
  std::string cert_path;
  auto* recheck = app.add_subcommand("recheck", "recompute a certificate");
  add_common(recheck, rcc, false);
  recheck->add_option("certificate", cert_path, "certificate file")->required();

  auto* polyc = app.add_subcommand("poly", "auxiliary polynomials");
  polyc->require_subcommand(1);
  Common phc, pbc;
  add_common(polyc->add_subcommand("hasse", "Hasse polynomial H_p"), phc);
  add_common(polyc->add_subcommand("bigB", "B(t) = b_p(t, -t)"), pbc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : run::kUsage;
  }

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  try {
    if (m8cmd->parsed()) {
      auto cfg = make_config(m8c);
      const m8::Mode m = mode == "conditional"     ? m8::Mode::Conditional
                         : mode == "unconditional" ? m8::Mode::Unconditional
                                                   : m8::Mode::Auto;
      return finish(run::cmd_m8(m8c.p, m, cfg), cfg);
    }
    if (search->parsed()) {
      auto cfg = make_config(ksc);
      cfg.checkpoint_every = every;
      cfg.max_planes = max_planes;
      std::optional<std::string> src;
      if (!curves.empty()) src = curves;
      return finish(run::cmd_kummer_search(ksc.p, src, cfg, stop_at_first, &g_stop), cfg);
    }
    if (table->parsed()) {
      auto cfg = make_config(ktc);
      std::optional<std::uint32_t> p;
      if (ktc.p) p = ktc.p;
      return finish(run::cmd_verify_table1(p, cfg), cfg);
    }
    if (auxc->parsed()) {
      if (auxc->got_subcommand("genus3")) {
        auto cfg = make_config(g3c);
        return finish(run::cmd_genus3(g3c.p, cfg), cfg);
      }
      if (auxc->got_subcommand("genus4")) {
        auto cfg = make_config(g4c);
        return finish(run::cmd_genus4(g4c.p, cfg), cfg);
      }
      if (auxc->got_subcommand("np")) {
        auto cfg = make_config(npc);
        return finish(run::cmd_np(npc.p), cfg);
      }
      auto cfg = make_config(dmc);
      return finish(run::cmd_dims(g, which), cfg);
    }
    if (recheck->parsed()) {
      auto cfg = make_config(rcc);
      return finish(run::cmd_recheck(cert_path, cfg), cfg);
    }
    if (polyc->parsed()) {
      const bool hasse = polyc->got_subcommand("hasse");
      auto cfg = make_config(hasse ? phc : pbc);
      return finish(run::cmd_poly(hasse ? "hasse" : "bigB", hasse ? phc.p : pbc.p), cfg);
    }
  } catch (const run::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return run::kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return run::kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return run::kVerifyFailed;
  }
  return run::kUsage;
}
