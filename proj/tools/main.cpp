#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace cli = oodlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"oodlab: OOD detection learnability experiments"};
  app.require_subcommand(1);
  app.footer(
      "CSV columns: seed,n_used,r_in,r_out,r_alpha,ci,wall_ms (sweeps prepend value).\n"
      "  r_in = P_in[h = 0], r_out = P_out[h = 1], r_alpha = (1 - alpha) r_in + alpha r_out,\n"
      "  ci = Monte Carlo half-width at confidence 0.999 (0 when exact).\n"
      "Exit codes: 0 ok, 1 config or runtime error, 2 success fraction below\n"
      "  1 - delta - 3 sqrt(delta (1 - delta) / trials).");

  std::string config;
  cli::RunOptions opts;
  std::uint64_t seed_override = 0;
  std::string out_dir = ".";

  struct Sub {
    const char* name;
    const char* help;
    std::optional<cli::ExperimentKind> kind;
  };
  const Sub subs[] = {
      {"run", "Run any experiment config", std::nullopt},
      {"sweep", "Run a parameter sweep config", cli::ExperimentKind::kSweep},
      {"game", "Run an adversarial game config", cli::ExperimentKind::kGame},
      {"floor", "Compute a 1-D Bayes risk floor", cli::ExperimentKind::kFloor},
  };
  std::vector<std::pair<CLI::App*, std::optional<cli::ExperimentKind>>> runners;
  for (const auto& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("--config", config, "Experiment JSON")->required()->check(CLI::ExistingFile);
    sc->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sc->add_option("--out", out_dir, "Output directory");
    sc->add_option("--seed-override", seed_override, "Replace the config seed");
    runners.emplace_back(sc, s.kind);
  }
  CLI::App* list = app.add_subcommand("list", "List built-in domains, families and learners");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitError;
  }

  if (list->parsed()) {
    cli::list_builtins(std::cout);
    return cli::kExitOk;
  }
  opts.out_dir = out_dir;
  for (const auto& [sc, kind] : runners) {
    if (!sc->parsed()) continue;
    if (sc->count("--seed-override") > 0) opts.seed_override = seed_override;
    return cli::run_file(config, opts, std::cout, std::cerr, kind);
  }
  return cli::kExitError;
}
