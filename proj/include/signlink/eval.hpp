#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "signlink/classifiers.hpp"

namespace signlink {

/// Binary confusion counts; the positive class is label +1.
struct Confusion {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

Confusion confusion(std::span<const Sign> predicted, std::span<const Sign> truth);

/// Compares `pred` against the graph's labels on pred.edges.
Confusion confusion(const Prediction& pred, const SignedDigraph& g);

/// Matthews correlation coefficient; 0 when any marginal is empty.
double mcc(const Confusion& c) noexcept;

/// (tp + tn) / total, 0 for an empty confusion.
double accuracy(const Confusion& c) noexcept;

struct RunMetrics {
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  double mcc = 0.0;
  double fraction = 0.0;  ///< training or queried share of |E|
  double wall_ms = 0.0;
  Confusion counts;
};

struct Summary {
  double accuracy = 0.0;
  double mcc = 0.0;
  double fraction = 0.0;
  double wall_ms = 0.0;
};

struct AggregateMetrics {
  std::size_t n = 0;
  Summary mean;
  Summary std;  ///< sample standard deviation (n - 1 denominator), 0 when n == 1
  bool single_run = false;
};

/// Throws std::invalid_argument on an empty list.
AggregateMetrics aggregate(std::span<const RunMetrics> runs);

/// Mean and standard error of a sample, used by the Monte Carlo checks.
struct MeanStderr {
  double mean = 0.0;
  double stddev = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(std::span<const double> xs);

}  // namespace signlink
