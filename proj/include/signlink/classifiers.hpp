#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "signlink/features.hpp"
#include "signlink/graph.hpp"
#include "signlink/mask.hpp"

namespace signlink {

/// Predicted signs for a set of edges, in the order they were requested.
struct Prediction {
  std::vector<EdgeId> edges;
  std::vector<Sign> labels;
  std::vector<std::uint8_t> reciprocal_applied;

  std::size_t size() const noexcept { return edges.size(); }
  friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Shared decision convention: -1 iff score > threshold, +1 iff below, `tie` on equality.
constexpr Sign decide(double score, double threshold, Sign tie) noexcept {
  if (score > threshold) return Sign::negative;
  if (score < threshold) return Sign::positive;
  return tie;
}

// ---- one feature -----------------------------------------------------------

/// Majority rule on a single estimate: t-hat(src) for trollness, u-hat(dst)
/// for unpleasantness, thresholded at 1/2. `which` must not be `both`.
Prediction predict_one_feature(const SignedDigraph& g, const FeatureEstimates& f, std::span<const EdgeId> edges,
                               FeatureSet which, Sign tie = Sign::positive);

/// The feature value the one-feature rule looks at for edge e.
double single_feature(const SignedDigraph& g, const FeatureEstimates& f, EdgeId e, FeatureSet which);

// ---- two features ----------------------------------------------------------

struct ScoredLabel {
  double score;
  Sign label;
};

struct ThresholdFit {
  double threshold = 1.0;
  std::size_t mistakes = 0;
};

/// Offset of the outer candidates below the smallest / above the largest score.
inline constexpr double kSentinelGap = 1e-6;

/// Best threshold under `decide` by one sort and one scan. Candidates are the
/// midpoints between consecutive distinct scores plus the two sentinels; ties
/// in mistakes go to the candidate closest to 1, then to the smaller one.
/// Throws std::invalid_argument on empty input.
ThresholdFit fit_threshold(std::vector<ScoredLabel> points);

std::size_t count_threshold_mistakes(std::span<const ScoredLabel> points, double threshold, Sign tie);

/// Separator of slope -1 in (t-hat, u-hat) space, held as an intercept on s = t-hat + u-hat.
struct Separator {
  double k_star = 1.0;
  Sign tie_label = Sign::positive;
  std::size_t training_mistakes = 0;
};

inline double edge_score(const SignedDigraph& g, const FeatureEstimates& f, EdgeId e) {
  const Edge& ed = g.edge(e);
  return f.troll[ed.src] + f.unpleasant[ed.dst];
}

std::vector<ScoredLabel> score_edges(const SignedDigraph& g, const FeatureEstimates& f, std::span<const EdgeId> edges);

Separator fit_kstar(const SignedDigraph& g, const FeatureEstimates& f, std::span<const EdgeId> train_edges,
                    Sign tie = Sign::positive);

Prediction predict_two_feature(const SignedDigraph& g, const FeatureEstimates& f, const Separator& sep,
                               std::span<const EdgeId> edges);

// ---- perceptron baseline -----------------------------------------------------

struct FeaturePoint {
  double troll;
  double unpleasant;
  Sign label;
};

struct LinearModel {
  double w_troll = 0.0;
  double w_unpleasant = 0.0;
  double bias = 0.0;
  Sign tie_label = Sign::positive;

  Sign predict(double troll, double unpleasant) const noexcept {
    const double v = w_troll * troll + w_unpleasant * unpleasant + bias;
    if (v > 0) return Sign::positive;
    if (v < 0) return Sign::negative;
    return tie_label;
  }
};

struct PerceptronOptions {
  int epochs = 5;
  double learning_rate = 1.0;
  std::uint64_t seed = 0;
  Sign tie_label = Sign::positive;
};

/// Averaged perceptron on 2-D points with a bias term, shuffled each epoch.
LinearModel fit_perceptron(std::span<const FeaturePoint> points, const PerceptronOptions& opts = {});

std::vector<FeaturePoint> feature_points(const SignedDigraph& g, const FeatureEstimates& f,
                                         std::span<const EdgeId> edges);

Prediction predict_linear(const SignedDigraph& g, const FeatureEstimates& f, const LinearModel& model,
                          std::span<const EdgeId> edges);

// ---- reciprocal edges ----------------------------------------------------------

/// Replaces the prediction of a test edge i->j by the observed label of j->i
/// whenever j->i exists and is observed in `mask`.
Prediction reciprocal_override(const SignedDigraph& g, const TrainMask& mask, Prediction pred);

}  // namespace signlink
