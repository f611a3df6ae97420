#include <CLI11.hpp>

#include "carpet/cli/commands.hpp"

int main(int argc, char** argv) {
  carpet::cli::RunConfig cfg;
  CLI::App app{"Self-affine carpet laboratory"};
  app.add_option("command", cfg.command, "check | render | slice | tangent | dim | scales")
      ->required()
      ->check(CLI::IsMember({"check", "render", "slice", "tangent", "dim", "scales"}));
  app.add_option("--input", cfg.input, "IFS document (JSON); defaults to the preset's fixture");
  app.add_option("--preset", cfg.preset, "preset name under config/presets")->capture_default_str();
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();
  app.add_option("--depth", cfg.depth, "depth override for the command");
  app.add_option("--tol", cfg.tol, "tolerance override, in (0,1)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : carpet::cli::kInputError;
  }
  return carpet::cli::run(cfg);
}
