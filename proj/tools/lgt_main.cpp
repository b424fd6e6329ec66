#include <CLI11.hpp>
#include <cstdio>

#include "lgt/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian lattice gauge theory batch simulator"};
  app.require_subcommand(1);

  struct JobArgs {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    bool deterministic = false;
  } args;

  const char* jobs[] = {"spectrum", "evolve", "observables", "validate"};
  const char* descs[] = {
      "lowest eigenpairs in a charge sector",
      "real-time evolution time series",
      "one observable report for a prepared state",
      "run the invariant suite and report per-check results"};
  for (int i = 0; i < 4; ++i) {
    CLI::App* sub = app.add_subcommand(jobs[i], descs[i]);
    sub->add_option("--config", args.config, "run configuration file")
        ->required();
    sub->add_option("--out", args.out, "output directory (overrides config)");
    sub->add_option("--seed", args.seed, "solver seed (overrides config)");
    sub->add_flag("--deterministic", args.deterministic,
                  "force reproducible reductions");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    lgt::RunConfig cfg = lgt::load_config(args.config);
    CLI::App* sub = app.get_subcommands().front();
    if (lgt::job_name(cfg.job) != sub->get_name())
      throw lgt::config_error("config declares job = " +
                              lgt::job_name(cfg.job) + " but '" +
                              sub->get_name() + "' was invoked");
    if (!args.out.empty()) cfg.output_dir = args.out;
    if (sub->count("--seed") > 0) cfg.seed = args.seed;
    if (args.deterministic) cfg.deterministic = true;
    return lgt::run_job(cfg);
  } catch (const lgt::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const lgt::convergence_error& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}
