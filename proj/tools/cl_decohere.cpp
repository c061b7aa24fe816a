#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cldecohere/config.hpp"
#include "cldecohere/runner.hpp"
#include "cldecohere/selftest.hpp"

namespace {

int report(const cldecohere::RunOutcome& r, const std::string& out_dir) {
  if (r.exit_code == 2) {
    std::cerr << "error: " << r.message << '\n';
    return 2;
  }
  for (const auto& w : r.manifest.warnings) std::cerr << "warning: " << w << '\n';
  if (r.exit_code == 3) std::cerr << "non-convergence: " << r.message << '\n';
  std::cout << "wrote " << r.manifest.files.size() << " file(s) and manifest.json to " << out_dir
            << " in " << r.manifest.wall_time_s << " s\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Caldeira-Leggett decoherence toolkit: figure presets and scenario runs"};
  app.set_version_flag("--version", CLDECOHERE_VERSION);
  app.require_subcommand(1);

  std::string target;
  std::string config_file;
  std::string out_dir = ".";
  std::size_t jobs = 0;
  double tol = 0.0;

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_file, "flat key = value file; flags override it");
    cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
    cmd->add_option("--jobs", jobs, "worker threads (default: CL_DECOHERE_JOBS or 1)");
    cmd->add_option("--tol", tol, "quadrature tolerance override")->check(CLI::PositiveNumber);
  };

  CLI::App* run = app.add_subcommand("run", "run a preset by name, or the scenario in --config");
  run->add_option("preset", target, "preset name (omit to use --config)");
  add_run_flags(run);

  // `cl-decohere fig1 ...` is shorthand for `cl-decohere run fig1 ...`
  std::vector<std::pair<std::string, CLI::App*>> preset_cmds;
  for (const auto& p : cldecohere::list_presets()) {
    CLI::App* cmd = app.add_subcommand(p.name, p.figure);
    add_run_flags(cmd);
    preset_cmds.emplace_back(p.name, cmd);
  }

  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
  CLI::App* list = app.add_subcommand("list-presets", "list figure presets and their parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      for (const auto& p : cldecohere::list_presets())
        std::cout << p.name << "\t" << p.figure << "\n\t" << p.parameters << '\n';
      return 0;
    }
    if (*selftest) {
      int failed = 0;
      for (const auto& r : cldecohere::run_selftest()) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        if (!r.passed) ++failed;
      }
      std::cout << (failed ? "selftest failed\n" : "selftest passed\n");
      return failed ? 1 : 0;
    }
    for (const auto& [name, cmd] : preset_cmds)
      if (*cmd) target = name;

    cldecohere::RunOptions opts;
    opts.out_dir = out_dir;
    opts.jobs = jobs;
    if (tol > 0.0) opts.tol = tol;

    cldecohere::ConfigMap cfg;
    if (!config_file.empty()) cfg = cldecohere::load_config(config_file);

    if (!target.empty()) {
      if (!cldecohere::is_preset(target)) {
        std::cerr << "error: unknown preset '" << target << "' (see list-presets)\n";
        return 2;
      }
      // a config file may carry run options for presets (tol, jobs); physics is fixed
      if (!opts.tol && cfg.count("tol")) opts.tol = cldecohere::config_number(cfg, "tol", 0.0);
      if (opts.jobs == 0 && cfg.count("jobs")) opts.jobs = static_cast<std::size_t>(cldecohere::config_number(cfg, "jobs", 0.0));
      return report(cldecohere::run_preset(target, opts), out_dir);
    }
    if (cfg.empty()) {
      std::cerr << "error: give a preset name or --config FILE\n";
      return 2;
    }
    if (cfg.count("jobs") && opts.jobs == 0) opts.jobs = static_cast<std::size_t>(cldecohere::config_number(cfg, "jobs", 0.0));
    cfg.erase("jobs");
    return report(cldecohere::run_config(cfg, opts), out_dir);
  } catch (const cldecohere::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
