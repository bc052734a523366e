#include "signlink/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "signlink/rng.hpp"

namespace signlink {

double single_feature(const SignedDigraph& g, const FeatureEstimates& f, EdgeId e, FeatureSet which) {
  const Edge& ed = g.edge(e);
  switch (which) {
    case FeatureSet::trollness: return f.troll[ed.src];
    case FeatureSet::unpleasantness: return f.unpleasant[ed.dst];
    case FeatureSet::both: break;
  }
  throw std::invalid_argument("one-feature rule needs trollness or unpleasantness");
}

Prediction predict_one_feature(const SignedDigraph& g, const FeatureEstimates& f, std::span<const EdgeId> edges,
                               FeatureSet which, Sign tie) {
  if (which == FeatureSet::both) throw std::invalid_argument("one-feature rule needs trollness or unpleasantness");
  Prediction p;
  p.edges.assign(edges.begin(), edges.end());
  p.labels.resize(edges.size());
  p.reciprocal_applied.assign(edges.size(), 0);
  for (std::size_t k = 0; k < edges.size(); ++k) p.labels[k] = decide(single_feature(g, f, edges[k], which), 0.5, tie);
  return p;
}

ThresholdFit fit_threshold(std::vector<ScoredLabel> points) {
  if (points.empty()) throw std::invalid_argument("cannot fit a threshold on an empty training set");
  std::sort(points.begin(), points.end(), [](const ScoredLabel& a, const ScoredLabel& b) { return a.score < b.score; });

  // Threshold below everything: every point is predicted -1.
  std::size_t positives = 0;
  for (const auto& p : points) positives += p.label == Sign::positive;

  auto better = [](std::size_t m, double c, const ThresholdFit& best) {
    if (m != best.mistakes) return m < best.mistakes;
    const double dc = std::abs(c - 1.0), db = std::abs(best.threshold - 1.0);
    if (dc != db) return dc < db;
    return c < best.threshold;
  };

  ThresholdFit best{points.front().score - kSentinelGap, positives};
  auto mistakes = static_cast<std::ptrdiff_t>(positives);
  std::size_t k = 0;
  while (k < points.size()) {
    // Moving the threshold past a group of equal scores flips the group to +1.
    const double s = points[k].score;
    for (; k < points.size() && points[k].score == s; ++k) mistakes += points[k].label == Sign::negative ? 1 : -1;
    const double candidate = k < points.size() ? s + (points[k].score - s) / 2 : s + kSentinelGap;
    if (better(static_cast<std::size_t>(mistakes), candidate, best))
      best = {candidate, static_cast<std::size_t>(mistakes)};
  }
  return best;
}

std::size_t count_threshold_mistakes(std::span<const ScoredLabel> points, double threshold, Sign tie) {
  std::size_t m = 0;
  for (const auto& p : points) m += decide(p.score, threshold, tie) != p.label;
  return m;
}

std::vector<ScoredLabel> score_edges(const SignedDigraph& g, const FeatureEstimates& f, std::span<const EdgeId> edges) {
  std::vector<ScoredLabel> out;
  out.reserve(edges.size());
  for (EdgeId e : edges) out.push_back({edge_score(g, f, e), g.label(e)});
  return out;
}

Separator fit_kstar(const SignedDigraph& g, const FeatureEstimates& f, std::span<const EdgeId> train_edges, Sign tie) {
  const ThresholdFit fit = fit_threshold(score_edges(g, f, train_edges));
  return {fit.threshold, tie, fit.mistakes};
}

Prediction predict_two_feature(const SignedDigraph& g, const FeatureEstimates& f, const Separator& sep,
                               std::span<const EdgeId> edges) {
  Prediction p;
  p.edges.assign(edges.begin(), edges.end());
  p.labels.resize(edges.size());
  p.reciprocal_applied.assign(edges.size(), 0);
  for (std::size_t k = 0; k < edges.size(); ++k)
    p.labels[k] = decide(edge_score(g, f, edges[k]), sep.k_star, sep.tie_label);
  return p;
}

LinearModel fit_perceptron(std::span<const FeaturePoint> points, const PerceptronOptions& opts) {
  if (points.empty()) throw std::invalid_argument("cannot fit a perceptron on an empty training set");
  Rng rng(opts.seed);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  double w0 = 0, w1 = 0, b = 0;
  double s0 = 0, s1 = 0, sb = 0;
  std::size_t steps = 0;
  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[uniform_below(rng, k)]);
    for (std::size_t idx : order) {
      const FeaturePoint& p = points[idx];
      const double y = to_int(p.label);
      if (y * (w0 * p.troll + w1 * p.unpleasant + b) <= 0) {
        w0 += opts.learning_rate * y * p.troll;
        w1 += opts.learning_rate * y * p.unpleasant;
        b += opts.learning_rate * y;
      }
      s0 += w0;
      s1 += w1;
      sb += b;
      ++steps;
    }
  }
  LinearModel m;
  m.tie_label = opts.tie_label;
  if (steps > 0) {
    m.w_troll = s0 / static_cast<double>(steps);
    m.w_unpleasant = s1 / static_cast<double>(steps);
    m.bias = sb / static_cast<double>(steps);
  }
  return m;
}

std::vector<FeaturePoint> feature_points(const SignedDigraph& g, const FeatureEstimates& f,
                                         std::span<const EdgeId> edges) {
  std::vector<FeaturePoint> out;
  out.reserve(edges.size());
  for (EdgeId e : edges) {
    const Edge& ed = g.edge(e);
    out.push_back({f.troll[ed.src], f.unpleasant[ed.dst], g.label(e)});
  }
  return out;
}

Prediction predict_linear(const SignedDigraph& g, const FeatureEstimates& f, const LinearModel& model,
                          std::span<const EdgeId> edges) {
  Prediction p;
  p.edges.assign(edges.begin(), edges.end());
  p.labels.resize(edges.size());
  p.reciprocal_applied.assign(edges.size(), 0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& ed = g.edge(edges[k]);
    p.labels[k] = model.predict(f.troll[ed.src], f.unpleasant[ed.dst]);
  }
  return p;
}

Prediction reciprocal_override(const SignedDigraph& g, const TrainMask& mask, Prediction pred) {
  if (mask.size() != g.edge_count()) throw std::invalid_argument("mask/graph size mismatch");
  pred.reciprocal_applied.resize(pred.edges.size(), 0);
  for (std::size_t k = 0; k < pred.edges.size(); ++k) {
    const EdgeId back = g.reciprocal(pred.edges[k]);
    if (back == kNoEdge || !mask.observed(back)) continue;
    pred.labels[k] = g.label(back);
    pred.reciprocal_applied[k] = 1;
  }
  return pred;
}

}  // namespace signlink
