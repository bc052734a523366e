#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "signlink/active.hpp"
#include "signlink/bounds.hpp"
#include "signlink/classifiers.hpp"
#include "signlink/eval.hpp"

namespace signlink {

inline constexpr const char* kToolName = "signlink";
inline constexpr const char* kToolVersion = "1.0.0";

enum class BatchAlgorithm { blc_t, blc_u, blc_tu, perceptron };

BatchAlgorithm batch_algorithm_from_string(const std::string& s);
std::string to_string(BatchAlgorithm a);

/// Everything needed to rerun an experiment. Serialized verbatim into results.
struct ExperimentConfig {
  std::string graph;    ///< canonical edge-list path
  std::string dataset;  ///< label for records; defaults to the graph file stem
  std::string algorithm;  ///< blc-t|blc-u|blc-tu|perceptron or alcone-*/alclog-*
  std::vector<double> fractions{0.15, 0.30, 0.45, 0.60, 0.75, 0.90};
  std::size_t reps = 12;
  std::uint64_t seed = 0;
  Sign tie_label = Sign::positive;
  bool reciprocal = false;
  bool wcc = false;
  LogBase log_base = LogBase::natural;
  int perceptron_epochs = 5;
  std::string out;

  /// Throws InputError naming the offending field.
  void validate(bool active) const;

  nlohmann::json to_json() const;
  /// `key = value` lines; lists are comma separated.
  std::string to_text() const;
  static ExperimentConfig from_text(std::string_view text);
};

/// Marks exactly round(fraction * |E|) edges as training via a seeded shuffle.
/// Throws std::invalid_argument when either side would be empty.
TrainMask sample_train_mask(const SignedDigraph& g, double fraction, std::uint64_t seed);

/// Seed of repetition `rep` at fraction index `fraction_index`.
std::uint64_t rep_seed(std::uint64_t master, std::size_t fraction_index, std::size_t rep);

struct BatchRun {
  Prediction prediction;
  RunMetrics metrics;
};

/// One batch repetition: features -> fit -> predict -> optional reciprocal override -> metrics.
BatchRun run_batch_once(const SignedDigraph& g, const TrainMask& mask, BatchAlgorithm algo, const ExperimentConfig& cfg,
                        std::uint64_t seed);

/// The full fraction x rep grid as a result document.
nlohmann::json run_batch_experiment(const SignedDigraph& g, const ExperimentConfig& cfg);

/// Active strategy repeated cfg.reps times (on the largest WCC when cfg.wcc).
nlohmann::json run_active_experiment(const SignedDigraph& g, const ExperimentConfig& cfg);

/// Table-1 style statistics.
nlohmann::json graph_stats(const SignedDigraph& g, const std::string& name);

nlohmann::json to_json(const BoundReport& r);

/// One row per repetition across every record of a result document.
std::string results_to_csv(const nlohmann::json& doc);

/// Copy of `doc` with every "wall_ms" member removed (recursively).
nlohmann::json without_wall_times(const nlohmann::json& doc);

/// Writes JSON or CSV depending on the extension, atomically.
void write_results(const nlohmann::json& doc, const std::filesystem::path& out);

/// x * 100 rounded to two decimals.
double percent(double x);

}  // namespace signlink
