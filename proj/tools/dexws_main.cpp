// dexws: Monte Carlo workspace estimation and link-length design for a
// PRRRR continuum instrument.
#include "dexws/error.hpp"
#include "dexws/run.hpp"

#include <CLI/CLI.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Workspace estimation and link-length optimisation for a PRRRR instrument",
               "dexws"};
  app.set_version_flag("--version", dexws::tool_version());
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> samples;
  std::optional<std::string> preset;

  app.add_option("-c,--config", config_path, "JSON configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("-o,--out", out_dir, "Output directory (overrides the config)");
  app.add_option("-n,--samples", samples, "Sample count per run and per sweep candidate")
      ->check(CLI::PositiveNumber);
  app.add_option("--preset", preset, "Sample budget preset")
      ->check(CLI::IsMember({"fast", "paper"}));

  const std::pair<const char*, const char*> subs[] = {
      {"sample", "Joint-space sampling to a point-cloud CSV"},
      {"workspace", "Scored cloud and fitted boundaries as CSV"},
      {"volume", "Reachable and dexterous volume report as JSON"},
      {"optimize", "Link-length sweep and selection"},
  };
  for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    dexws::RunConfig cfg;
    if (!config_path.empty())
      cfg = dexws::load_config(config_path);
    else
      cfg.apply_preset(cfg.preset);
    if (preset) cfg.apply_preset(dexws::parse_preset(*preset));
    if (seed) cfg.set_seed(*seed);
    if (out_dir) cfg.output_dir = *out_dir;
    if (samples) cfg.set_samples(*samples);
    if (!cfg.has_chain() && name != "optimize")
      throw dexws::ConfigError("'" + name + "' needs xi or chain in the configuration");

    dexws::run_subcommand(dexws::parse_subcommand(name), cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << dexws::error_record(e).dump() << '\n';
    return dexws::exit_code_for(e);
  }
  return 0;
}
