#pragma once

// Experiment configuration, runners, and CSV/JSON persistence.  Every run is
// a pure function of (config, master seed): replication streams are derived
// per index, rows are emitted in replication order, and numbers are written
// with 17 significant digits so outputs round-trip bit-exactly.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ppl/exactlaw.hpp"

namespace ppl::experiment {

enum class Kind {
  sf_cdf,
  sf_sample,
  gumbel_1d,
  gumbel_md,
  polysim_crosscheck,
  covering_crosscheck,
  regimes_table,
  appendix_verify,
  volume_ratio,
};

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& name);

/// Intensity recipe L(d), evaluable at arbitrary d (the regime classifier
/// walks a doubling ladder through it).
struct IntensitySpec {
  enum class Type { explicit_L, critical, sqrtd_logd, log2d, d_logd, power, volume_critical };
  Type type = Type::explicit_L;
  double L = 0.0;     ///< explicit_L
  double x = 0.0;     ///< critical: L = x d + y; volume_critical: L = (d/2) ln(d/(2x))
  double y = 0.0;
  double coef = 1.0;  ///< d_logd: L = coef d ln d; power/sqrtd_logd/log2d: L = coef * form
  double power = 1.2; ///< power: L = coef d^power

  double evaluate(double d) const;
  std::string label() const;
  /// Regime implied by the recipe shape at dimension d (explicit L maps to
  /// the finite-d ratio x = L/d).
  exactlaw::Regime regime_at(double d) const;
};

struct RGrid {
  double min = 0.0;
  double max = 1.0;
  int count = 101;
};

struct RegimeCase {
  std::string label;
  IntensitySpec intensity;
  std::string compare_on = "h";  ///< "h" or "one-minus-h"
};

struct ExperimentConfig {
  Kind kind = Kind::sf_cdf;
  int d = 0;
  std::vector<int> d_ladder;
  IntensitySpec intensity;
  int m = 2;
  std::vector<double> tau_grid;
  long reps = 1;
  std::uint64_t seed = 1;
  std::string out;  ///< output stem; writes <out>.csv and <out>.meta.json
  RGrid r_grid;
  std::vector<double> r_list;
  int n_dirs = 16;
  int n_clouds = 64;
  double censor_tau = 12.0;  ///< gumbel-md: level used to truncate the annulus
  double w = 0.5;            ///< appendix-verify: radius-tail inflation parameter
  std::vector<RegimeCase> cases;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

struct ExperimentResult {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::string meta_json;  ///< serialized provenance block
  std::string csv() const;
};

/// Execute the experiment; if config.out is non-empty also writes
/// <out>.csv and <out>.meta.json.
ExperimentResult run(const ExperimentConfig& config);

/// Format a double with 17 significant digits (round-trip exact).
std::string format_g17(double v);

/// FNV-1a hash of the canonical config serialization.
std::string config_content_hash(const ExperimentConfig& config);

inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace ppl::experiment
