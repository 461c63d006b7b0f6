#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oodlab/oodlab.hpp"

namespace oodlab::cli {

enum class ExperimentKind { kVerifyLearner, kSweep, kGame, kFloor };

struct LearnerSpec {
  std::string name;
  nlohmann::json params;  // the full learner object
};

struct SweepSpec {
  std::string param;  // epsilon, delta, alpha or a learner parameter
  std::vector<double> values;
};

struct OutputNames {
  std::string csv = "results.csv";
  std::string summary = "summary.json";
  std::string svg = "sweep.svg";
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kVerifyLearner;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  LearnerConfig cfg;
  std::optional<LearnerSpec> learner;
  std::optional<Domain> domain;
  std::optional<AdversarialFamily> family;
  RiskMode risk_mode;
  std::optional<SweepSpec> sweep;
  double floor_step = kDefaultFloorStep;
  OutputNames output;
};

/// Throws InvalidArgument with a field-naming message on any schema problem.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Builds a learner from {"name": ..., params...}; applies "mode_iii": true.
Learner make_learner(const nlohmann::json& spec, const LearnerConfig& cfg);
/// {"preset": name, params...} or {"id": spec, "ood": spec}.
Domain make_domain(const nlohmann::json& spec);

struct RunOptions {
  unsigned jobs = 1;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed_override;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitContract = 2;

/// 1 - delta - 3 sqrt(delta (1 - delta) / trials).
double success_threshold(double delta, std::size_t trials);

/// Runs a parsed config and writes its artifacts; returns the exit code.
/// `expect` restricts the experiment kind (subcommands other than `run`).
int run_experiment(const ExperimentConfig& config, const RunOptions& opts, std::ostream& log,
                   std::optional<ExperimentKind> expect = std::nullopt);

/// Loads, runs and maps every error to exit code 1 with a message on `err`.
int run_file(const std::filesystem::path& config, const RunOptions& opts, std::ostream& log,
             std::ostream& err, std::optional<ExperimentKind> expect = std::nullopt);

/// Built-in domain presets, families and learners, one per line.
void list_builtins(std::ostream& os);

std::string csv_header(bool with_value);

}  // namespace oodlab::cli
