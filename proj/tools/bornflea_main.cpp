#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "bornflea/errors.hpp"
#include "bornflea/harness.hpp"
#include "bornflea/kernels.hpp"
#include "bornflea/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw bornflea::ConfigError("cannot open config file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct CommonOpts {
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool seed_set = false, out_set = false, threads_set = false;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "path to the JSON config")
      ->required();
  sub->add_option("--seed", o.seed, "override the config seed")
      ->each([&o](const std::string&) { o.seed_set = true; });
  sub->add_option("--out", o.out, "override the output CSV path")
      ->each([&o](const std::string&) { o.out_set = true; });
  sub->add_option("--threads", o.threads, "worker threads for sample sweeps")
      ->each([&o](const std::string&) { o.threads_set = true; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bornflea " + std::string(bornflea::kVersion) +
               " - double-well Born-rule laboratory (kernels: " +
               std::string(bornflea::kernels::selected_isa()) + ")"};
  app.require_subcommand(1);

  const char* experiments[] = {"equidistribution", "twostate_born",
                               "doublewell_born", "prop1_oscillator",
                               "splitting_check"};
  CommonOpts opts;
  for (const char* name : experiments)
    add_common(app.add_subcommand(name, "run the experiment"), opts);
  add_common(app.add_subcommand("validate",
                                "validate a config and echo the resolved form"),
             opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    std::string text = slurp(opts.config_path);
    bornflea::harness::ExperimentConfig cfg =
        bornflea::harness::validate_config(text);

    if (sub != "validate" &&
        cfg.resolved["experiment"].get<std::string>() != sub)
      throw bornflea::ConfigError(
          "experiment: config declares \"" +
          cfg.resolved["experiment"].get<std::string>() +
          "\" but the command line asked for \"" + sub + "\"");

    if (opts.seed_set) {
      cfg.seed = opts.seed;
      cfg.resolved["seed"] = opts.seed;
    }
    if (opts.out_set) {
      cfg.out = opts.out;
      cfg.resolved["out"] = opts.out;
    }
    if (opts.threads_set) {
      if (opts.threads == 0)
        throw bornflea::ConfigError("threads: must be positive");
      cfg.threads = opts.threads;
      cfg.resolved["threads"] = opts.threads;
    }

    if (sub == "validate") {
      std::cout << cfg.resolved.dump(2) << "\n";
      std::cerr << "config ok\n";
      return 0;
    }

    const bornflea::csv::Table table = bornflea::harness::run(cfg);
    if (cfg.out.empty())
      std::cout << table.to_string();
    else
      std::cerr << "wrote " << table.row_count() << " rows to " << cfg.out
                << "\n";
    return 0;
  } catch (const bornflea::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
