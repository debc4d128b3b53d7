// sieve-lab: reproducible Monte Carlo experiments on the Bernoulli sieve,
// nonincreasing Markov chains and renewal shot noise.
//
// Subcommands map onto the library's experiment runner; every run is a pure
// function of (config, seed), independent of the thread count.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sievelab/experiment.hpp"
#include "sievelab/version.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << content;
}

struct cli_options {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  std::string seed, trials, n, t, threads, out, plot_data;
};

void add_common(CLI::App* sub, cli_options& opt) {
  sub->add_option("--config", opt.config_path, "flat key=value config file");
  sub->add_option("--set", opt.overrides,
                  "override any config key (KEY=VALUE, repeatable)");
  sub->add_option("--seed", opt.seed, "64-bit master seed");
  sub->add_option("--trials", opt.trials, "number of Monte Carlo trials");
  sub->add_option("--n", opt.n, "number of balls (scientific notation ok)");
  sub->add_option("--t", opt.t, "time horizon");
  sub->add_option("--threads", opt.threads, "worker threads over trials");
  sub->add_option("--out", opt.out, "write the per-trial CSV here");
  sub->add_option("--plot-data", opt.plot_data,
                  "write (series,x,y) plot series here");
}

sievelab::experiment_config build_config(const std::string& subcommand,
                                         const cli_options& opt) {
  sievelab::experiment_config cfg;
  if (!opt.config_path.empty())
    cfg = sievelab::parse_config_text(read_file(opt.config_path), subcommand);
  cfg.subcommand = subcommand;
  auto set = [&cfg](const std::string& k, const std::string& v) {
    if (!v.empty()) cfg.kv[k] = v;
  };
  set("seed", opt.seed);
  set("trials", opt.trials);
  set("n", opt.n);
  set("t", opt.t);
  set("threads", opt.threads);
  set("out", opt.out);
  set("plot_data", opt.plot_data);
  for (const auto& kv : opt.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::runtime_error("--set expects KEY=VALUE, got: " + kv);
    cfg.kv[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return cfg;
}

int run(const std::string& subcommand, const cli_options& opt) {
  sievelab::experiment_config cfg;
  try {
    cfg = build_config(subcommand, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sievelab::kExitConfigError;
  }

  const sievelab::run_result r = sievelab::run_experiment(cfg);

  if (!r.message.empty()) std::cerr << r.message << "\n";
  if (!r.report_json.empty()) std::cout << r.report_json;

  const auto out = cfg.kv.find("out");
  if (!r.csv.empty()) {
    if (out != cfg.kv.end())
      write_file(out->second, r.csv);
    else
      std::cout << r.csv;
  }
  const auto plot = cfg.kv.find("plot_data");
  if (!r.plot_csv.empty() && plot != cfg.kv.end())
    write_file(plot->second, "series,x,y\n" + r.plot_csv);

  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo lab for infinite occupancy schemes and renewal "
               "shot noise"};
  app.set_version_flag("--version", sievelab::library_version);
  app.require_subcommand(1);

  cli_options opt;
  auto* simulate =
      app.add_subcommand("simulate", "per-trial occupancy outcomes (K,M,L)");
  auto* limit_check = app.add_subcommand(
      "limit-check", "classify the regime and test the limit law");
  auto* shotnoise = app.add_subcommand(
      "shotnoise", "coverage-count CLT and centering replaceability");
  auto* moments =
      app.add_subcommand("moments", "geometric moment table m_1..m_k");
  for (auto* sub : {simulate, limit_check, shotnoise, moments})
    add_common(sub, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run("simulate", opt);
    if (limit_check->parsed()) return run("limit-check", opt);
    if (shotnoise->parsed()) return run("shotnoise", opt);
    return run("moments", opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sievelab::kExitConfigError;
  }
}
