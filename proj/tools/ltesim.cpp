// Command-line front end: single runs and scheduler/load sweeps over the
// downlink cell simulator, with CSV output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ltesim/ltesim.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<ltesim::SchedulerKind> parse_scheduler_list(const std::string& s) {
  std::vector<ltesim::SchedulerKind> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(ltesim::scheduler_kind_from(item));
  }
  return out;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open output file '" + out_path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTE downlink scheduler simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string trace_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;

  auto* run_cmd = app.add_subcommand("run", "simulate a single configuration");
  run_cmd->add_option("--config", config_path, "config file (key = value lines)")
      ->required();
  run_cmd->add_option("--seed", seed, "override the RNG seed");
  run_cmd->add_option("--out", out_path, "write the summary CSV here");
  run_cmd->add_option("--trace", trace_path, "write a per-phase trace CSV here");
  run_cmd->add_option("--set", overrides, "override a config key (key=value)");

  std::string users_arg;
  std::string schedulers_arg;
  int seeds_per_point = 1;
  int jobs = 1;
  bool append_means = false;

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep schedulers and loads");
  sweep_cmd->add_option("--config", config_path, "config file (key = value lines)")
      ->required();
  sweep_cmd->add_option("--users", users_arg, "comma-separated user counts")
      ->required();
  sweep_cmd
      ->add_option("--schedulers", schedulers_arg,
                   "comma-separated scheduler names")
      ->required();
  sweep_cmd->add_option("--seeds", seeds_per_point, "seeds per grid point");
  sweep_cmd->add_option("--seed", seed, "base RNG seed");
  sweep_cmd->add_option("--jobs", jobs, "worker threads");
  sweep_cmd->add_option("--out", out_path, "write the sweep CSV here");
  sweep_cmd->add_flag("--mean", append_means, "append per-point mean rows");
  sweep_cmd->add_option("--set", overrides, "override a config key (key=value)");

  CLI11_PARSE(app, argc, argv);

  try {
    ltesim::SimConfig cfg = ltesim::load_config(config_path);
    for (const auto& kv : overrides) ltesim::apply_override(cfg, kv);
    if (seed) cfg.rng_seed = *seed;

    if (run_cmd->parsed()) {
      cfg.validate();
      ltesim::TraceWriter trace;
      if (!trace_path.empty()) trace = ltesim::TraceWriter(trace_path);
      const ltesim::SummaryRow row = ltesim::run(cfg, &trace);
      std::string text = ltesim::summary_csv_header() + "\n" +
                         ltesim::to_csv_line(row) + "\n";
      write_output(text, out_path);
    } else {
      if (!trace_path.empty())
        throw ltesim::ConfigError("--trace is only supported for 'run'");
      ltesim::SweepSpec spec;
      spec.base = cfg;
      spec.user_counts = parse_int_list(users_arg);
      spec.schedulers = parse_scheduler_list(schedulers_arg);
      spec.seeds_per_point = seeds_per_point;
      spec.base_seed = seed ? *seed : cfg.rng_seed;
      spec.jobs = jobs;
      spec.append_means = append_means;
      const auto rows = ltesim::run_sweep(spec);
      write_output(ltesim::sweep_to_csv(spec, rows), out_path);
    }
  } catch (const ltesim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
