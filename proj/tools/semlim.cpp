// semlim: Monte Carlo tail-probability sweeps and analytic bounds for text
// semantic communication under radio-frequency interference.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "semlim/acceptance.hpp"
#include "semlim/experiment.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitCondition = 2;
constexpr int kExitIo = 74;

std::uint64_t seed_fallback() {
  if (const char* env = std::getenv("SEMLIM_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed SEMLIM_SEED '" << env << "'\n";
    }
  }
  return 1;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config '" + path + "' is not valid JSON: " + e.what());
  }
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return kExitIo;
  }
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: failed writing '" << out_path << "'\n";
    return kExitIo;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semlim: semantic-similarity tail probabilities under RF interference"};
  app.require_subcommand(1);

  std::uint64_t seed = seed_fallback();
  std::uint64_t samples = 0;
  unsigned workers = 0;
  std::string out_path;
  std::string config_path;
  std::string preset_name;

  auto* preset = app.add_subcommand("preset", "run a figure preset and write CSV");
  preset->add_option("name", preset_name, "preset name")->required();
  preset->add_option("--seed", seed, "master seed (default: $SEMLIM_SEED or 1)");
  preset->add_option("--samples", samples, "override the preset's sample count");
  preset->add_option("--out", out_path, "output CSV path (default: stdout)");
  preset->add_option("--workers", workers, "worker threads (default: hardware parallelism)");

  auto* sweep = app.add_subcommand("sweep", "run a sweep from a JSON config and write CSV");
  sweep->add_option("--config", config_path, "JSON sweep config")->required();
  sweep->add_option("--seed", seed, "master seed (config 'seed' takes precedence)");
  sweep->add_option("--samples", samples, "override the config's sample count");
  sweep->add_option("--out", out_path, "output CSV path (default: stdout)");
  sweep->add_option("--workers", workers, "worker threads (default: hardware parallelism)");

  auto* bound = app.add_subcommand("bound", "print the Markov / outage bound report as JSON");
  bound->add_option("--config", config_path, "JSON bound config")->required();

  auto* selftest = app.add_subcommand("selftest", "run the oracle acceptance checks");
  selftest->add_option("--seed", seed, "master seed");
  selftest->add_option("--workers", workers, "worker threads (default: hardware parallelism)");

  CLI11_PARSE(app, argc, argv);

  semlim::RunOptions run{seed, std::nullopt, workers};
  if (samples > 0) run.samples = samples;

  try {
    if (*preset) {
      const auto* p = semlim::find_preset(preset_name);
      if (!p) {
        std::cerr << "error: unknown preset '" << preset_name << "'. Available:";
        for (const auto& name : semlim::preset_names()) std::cerr << ' ' << name;
        std::cerr << '\n';
        return kExitUsage;
      }
      return emit(semlim::to_csv(semlim::run_preset(*p, run)), out_path);
    }
    if (*sweep) {
      const auto cfg = semlim::parse_sweep_config(read_json(config_path));
      return emit(semlim::to_csv(semlim::run_sweep(cfg, run)), out_path);
    }
    if (*bound) {
      const auto report = semlim::bound_report_json(read_json(config_path));
      std::cout << report.dump(2) << '\n';
      return report.contains("error") ? kExitCondition : 0;
    }
    if (*selftest) {
      semlim::acceptance::Settings settings;
      settings.seed = seed;
      settings.workers = workers;
      const auto results = semlim::acceptance::run_all(settings);
      semlim::acceptance::print_report(std::cout, results);
      return semlim::acceptance::all_passed(results) ? 0 : 1;
    }
  } catch (const semlim::ConditionError& e) {
    std::cerr << "condition error: " << e.what() << '\n';
    return kExitCondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
