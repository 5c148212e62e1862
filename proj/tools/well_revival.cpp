#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "well_revival/cli/commands.hpp"

namespace {

struct FlagSet {
  std::string config;
  std::vector<std::pair<std::string, std::vector<std::string>>> values;
};

void add_flags(CLI::App* cmd, FlagSet& flags) {
  cmd->add_option("--config", flags.config, "key = value configuration file; flags override it");
  static const std::vector<std::pair<std::string, std::string>> options = {
      {"eta", "delta / L (repeatable or comma-separated for sweep)"},
      {"deficit", "normalization deficit target of the truncated expansion"},
      {"grid-points", "points in density snapshots and mirror checks"},
      {"tau", "time in units of the revival time (natural units; repeatable)"},
      {"time", "time in seconds (SI units; repeatable)"},
      {"interval", "far | near | lo:hi"},
      {"units", "natural | si"},
      {"mass", "particle mass in kg (SI)"},
      {"length-l", "expanded well width in m (SI)"},
      {"length-delta", "initial well width in m (SI)"},
      {"format", "csv | json"},
      {"out", "output file (output directory for simulate)"},
      {"odd-multiple", "odd multiple of the revival time to check"},
      {"resolutions", "grid interval counts for oracle-check, e.g. 2048,4096,8192"},
      {"base-steps", "time steps at the coarsest oracle-check resolution"},
      {"mode-cap", "hard cap on retained modes"},
  };
  for (const auto& [name, help] : options) {
    flags.values.emplace_back(name, std::vector<std::string>{});
  }
  for (std::size_t i = 0; i < options.size(); ++i) {
    cmd->add_option("--" + options[i].first, flags.values[i].second, options[i].second)
        ->allow_extra_args(false)
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sudden expansion of an infinite square well: revivals, probabilities, oracles"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "density snapshots and interval probabilities at the requested times"},
      {"revival", "far-interval probability and mirror check at an odd multiple of the revival time"},
      {"sweep", "revival check over a list of eta values"},
      {"relativity", "revival time versus light-crossing time (SI)"},
      {"oracle-check", "Crank-Nicolson convergence against the spectral solution"},
  };
  std::vector<FlagSet> flag_sets(commands.size());
  for (std::size_t i = 0; i < commands.size(); ++i) {
    add_flags(app.add_subcommand(commands[i].first, commands[i].second), flag_sets[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return well_revival::cli::kExitConfig;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!app.got_subcommand(commands[i].first)) continue;
    well_revival::cli::RawConfig raw;
    for (const auto& [name, values] : flag_sets[i].values) {
      for (const auto& v : values) raw[name].push_back({v, "--" + name});
    }
    return well_revival::cli::dispatch(commands[i].first, flag_sets[i].config, raw, std::cout, std::cerr);
  }
  return well_revival::cli::kExitConfig;
}
