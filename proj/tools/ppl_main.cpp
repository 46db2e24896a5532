// ppl: exact-law computations and validation experiments for the support
// function of the Poisson polytope in the high-dimensional unit ball.
//
// Usage: ppl <kind> [--config file.json] [overrides...]
// Writes <out>.csv (data) and <out>.meta.json (provenance).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "ppl/experiment.hpp"

namespace {

using ppl::experiment::ExperimentConfig;
using ppl::experiment::Kind;

struct Overrides {
  std::string config_path;
  std::optional<int> d;
  std::optional<double> L;
  std::optional<double> x;
  std::optional<double> y;
  std::optional<int> m;
  std::optional<double> tau;
  std::optional<long> reps;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

ExperimentConfig build_config(Kind kind, const Overrides& ov) {
  nlohmann::json j;
  if (!ov.config_path.empty()) {
    std::ifstream in(ov.config_path);
    if (!in) throw ppl::config_error("cannot open config file: " + ov.config_path);
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw ppl::config_error(std::string("config parse error: ") + e.what());
    }
  } else {
    j = nlohmann::json::object();
  }
  j["kind"] = ppl::experiment::kind_name(kind);
  if (ov.d) j["d"] = *ov.d;
  if (ov.L) j["intensity"] = {{"type", "explicit"}, {"L", *ov.L}};
  if (ov.x) {
    nlohmann::json intensity = {{"type", "critical"}, {"x", *ov.x}};
    if (ov.y) intensity["y"] = *ov.y;
    j["intensity"] = intensity;
  }
  if (ov.m) j["m"] = *ov.m;
  if (ov.tau) j["tau_grid"] = {*ov.tau};
  if (ov.reps) j["reps"] = *ov.reps;
  if (ov.seed) j["seed"] = *ov.seed;
  if (ov.out) j["out"] = *ov.out;
  return ExperimentConfig::from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson polytope support-function laboratory"};
  app.require_subcommand(1);

  Overrides ov;
  std::vector<std::pair<std::string, Kind>> kinds = {
      {"sf-cdf", Kind::sf_cdf},
      {"sf-sample", Kind::sf_sample},
      {"gumbel-1d", Kind::gumbel_1d},
      {"gumbel-md", Kind::gumbel_md},
      {"polysim-crosscheck", Kind::polysim_crosscheck},
      {"covering-crosscheck", Kind::covering_crosscheck},
      {"regimes-table", Kind::regimes_table},
      {"appendix-verify", Kind::appendix_verify},
      {"volume-ratio", Kind::volume_ratio},
  };
  std::vector<CLI::App*> subs;
  for (auto& [name, kind] : kinds) {
    CLI::App* sub = app.add_subcommand(name, std::string("run a ") + name + " experiment");
    sub->add_option("--config", ov.config_path, "JSON config file");
    sub->add_option("--d", ov.d, "dimension");
    sub->add_option("--L", ov.L, "explicit log-intensity ln(lambda kappa_d)");
    sub->add_option("--x", ov.x, "critical-regime slope (L = x d + y)");
    sub->add_option("--y", ov.y, "critical-regime offset");
    sub->add_option("--m", ov.m, "section dimension");
    sub->add_option("--tau", ov.tau, "single Gumbel level tau");
    sub->add_option("--reps", ov.reps, "replication count");
    sub->add_option("--seed", ov.seed, "master seed");
    sub->add_option("--out", ov.out, "output stem (<out>.csv, <out>.meta.json)");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  Kind kind = Kind::sf_cdf;
  for (size_t i = 0; i < kinds.size(); ++i)
    if (subs[i]->parsed()) kind = kinds[i].second;

  try {
    const ExperimentConfig config = build_config(kind, ov);
    const auto result = ppl::experiment::run(config);
    if (config.out.empty()) {
      std::cout << result.csv();
    } else {
      std::cout << "wrote " << config.out << ".csv (" << result.rows.size() << " rows) and "
                << config.out << ".meta.json\n";
    }
    return 0;
  } catch (const ppl::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ppl::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  }
}
