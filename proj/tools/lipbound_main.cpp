#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lipbound/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Certified bound toolkit for Lipschitz-smooth functions"};
  lipbound::RunConfig cfg;
  std::string config_path;

  app.add_option("--cmd", cfg.command,
                 "Command: bound, estimate, enclose, verify, minimize");
  app.add_option("--fn", cfg.function,
                 "Corpus function name or expr:<formula> over x1..xn");
  app.add_option("--box", cfg.box, "Box as lo:hi,lo:hi,...");
  app.add_option("--xa", cfg.xa, "Segment start (or anchor) as v1,v2,...");
  app.add_option("--xb", cfg.xb, "Segment end as v1,v2,...");
  app.add_option("--seed", cfg.seed, "Seed for sampling and verification");
  app.add_option("--pairs", cfg.pairs, "Number of segments for verify");
  app.add_option("--tol", cfg.tol, "Gap tolerance for minimize");
  app.add_option("--budget", cfg.budget, "Node budget for minimize");
  app.add_option("--constants", cfg.constants_path,
                 "CSV file with kappa/M rows (overrides oracles)");
  app.add_option("--out", cfg.out_path, "Report file (default: stdout)");
  app.add_option("--format", cfg.format, "Report format: csv or jsonl");
  app.add_flag("--local", cfg.local,
               "Use segment-local (bound, verify) or per-box (minimize) "
               "constants instead of global ones");
  app.add_option("--config", config_path,
                 "key=value config file; command-line flags override it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (!config_path.empty()) {
    lipbound::RunConfig merged;
    try {
      lipbound::apply_config_file(merged, config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
    if (app.count("--cmd")) merged.command = cfg.command;
    if (app.count("--fn")) merged.function = cfg.function;
    if (app.count("--box")) merged.box = cfg.box;
    if (app.count("--xa")) merged.xa = cfg.xa;
    if (app.count("--xb")) merged.xb = cfg.xb;
    if (app.count("--seed")) merged.seed = cfg.seed;
    if (app.count("--pairs")) merged.pairs = cfg.pairs;
    if (app.count("--tol")) merged.tol = cfg.tol;
    if (app.count("--budget")) merged.budget = cfg.budget;
    if (app.count("--constants")) merged.constants_path = cfg.constants_path;
    if (app.count("--out")) merged.out_path = cfg.out_path;
    if (app.count("--format")) merged.format = cfg.format;
    if (app.count("--local")) merged.local = cfg.local;
    cfg = merged;
  }

  return lipbound::run(cfg);
}
