#include "signlink/eval.hpp"

#include <cmath>
#include <stdexcept>

namespace signlink {

Confusion confusion(std::span<const Sign> predicted, std::span<const Sign> truth) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("prediction and truth cover different edge sets");
  Confusion c;
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    const bool pos_pred = predicted[k] == Sign::positive;
    const bool pos_true = truth[k] == Sign::positive;
    if (pos_pred && pos_true) ++c.tp;
    else if (!pos_pred && !pos_true) ++c.tn;
    else if (pos_pred) ++c.fp;
    else ++c.fn;
  }
  return c;
}

Confusion confusion(const Prediction& pred, const SignedDigraph& g) {
  if (pred.labels.size() != pred.edges.size()) throw std::invalid_argument("malformed prediction");
  std::vector<Sign> truth;
  truth.reserve(pred.edges.size());
  for (EdgeId e : pred.edges) truth.push_back(g.label(e));
  return confusion(pred.labels, truth);
}

double mcc(const Confusion& c) noexcept {
  const double tp = static_cast<double>(c.tp), tn = static_cast<double>(c.tn);
  const double fp = static_cast<double>(c.fp), fn = static_cast<double>(c.fn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(denom);
}

double accuracy(const Confusion& c) noexcept {
  const auto n = c.total();
  return n == 0 ? 0.0 : static_cast<double>(c.tp + c.tn) / static_cast<double>(n);
}

AggregateMetrics aggregate(std::span<const RunMetrics> runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
  AggregateMetrics a;
  a.n = runs.size();
  a.single_run = runs.size() == 1;
  const auto n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    a.mean.accuracy += r.accuracy / n;
    a.mean.mcc += r.mcc / n;
    a.mean.fraction += r.fraction / n;
    a.mean.wall_ms += r.wall_ms / n;
  }
  if (runs.size() > 1) {
    Summary ss;
    for (const auto& r : runs) {
      ss.accuracy += (r.accuracy - a.mean.accuracy) * (r.accuracy - a.mean.accuracy);
      ss.mcc += (r.mcc - a.mean.mcc) * (r.mcc - a.mean.mcc);
      ss.fraction += (r.fraction - a.mean.fraction) * (r.fraction - a.mean.fraction);
      ss.wall_ms += (r.wall_ms - a.mean.wall_ms) * (r.wall_ms - a.mean.wall_ms);
    }
    a.std = {std::sqrt(ss.accuracy / (n - 1)), std::sqrt(ss.mcc / (n - 1)), std::sqrt(ss.fraction / (n - 1)),
             std::sqrt(ss.wall_ms / (n - 1))};
  }
  return a;
}

MeanStderr mean_stderr(std::span<const double> xs) {
  MeanStderr m;
  if (xs.empty()) return m;
  const auto n = static_cast<double>(xs.size());
  for (double x : xs) m.mean += x;
  m.mean /= n;
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.stddev = std::sqrt(ss / (n - 1));
    m.stderr_ = m.stddev / std::sqrt(n);
  }
  return m;
}

}  // namespace signlink
