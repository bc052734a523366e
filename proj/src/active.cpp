#include "signlink/active.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "signlink/rng.hpp"

namespace signlink {

namespace {

constexpr std::uint64_t kOutStream = 0;
constexpr std::uint64_t kInStream = 1;

std::uint32_t draws_for(Budget budget, std::uint32_t degree, LogBase base) {
  if (degree == 0) return 0;
  return budget == Budget::one ? 1 : alclog_sample_count(degree, base);
}

bool uses_out(FeatureSet w) { return w != FeatureSet::unpleasantness; }
bool uses_in(FeatureSet w) { return w != FeatureSet::trollness; }

/// Draws `count` edges uniformly with replacement from `bucket` using the
/// node's own stream, calling `mark` for each.
template <typename Mark>
void draw(std::span<const EdgeId> bucket, std::uint32_t count, std::uint64_t stream_seed, Mark&& mark) {
  Rng rng(stream_seed);
  for (std::uint32_t k = 0; k < count; ++k) mark(bucket[uniform_below(rng, bucket.size())]);
}

QueryPlan empty_plan(const SignedDigraph& g, FeatureSet which) {
  QueryPlan p;
  p.which = which;
  p.out_samples.assign(g.node_count(), 0);
  p.in_samples.assign(g.node_count(), 0);
  return p;
}

}  // namespace

Strategy strategy_from_string(const std::string& s) {
  const auto dash = s.find('-');
  if (dash == std::string::npos) throw InputError("unknown strategy '" + s + "'");
  const std::string head = s.substr(0, dash);
  Strategy st;
  if (head == "alcone") st.budget = Budget::one;
  else if (head == "alclog") st.budget = Budget::log;
  else throw InputError("unknown strategy '" + s + "'");
  st.which = feature_set_from_string(s.substr(dash + 1));
  return st;
}

std::string to_string(const Strategy& s) {
  return std::string(s.budget == Budget::one ? "alcone-" : "alclog-") + to_string(s.which);
}

std::uint32_t alclog_sample_count(std::uint32_t degree, LogBase base) {
  if (degree == 0) return 0;
  const double x = static_cast<double>(degree) + 1.0;
  const double l = base == LogBase::natural ? std::log(x) : std::log2(x);
  return 4 * static_cast<std::uint32_t>(std::ceil(l));
}

QueryPlan select_queries(const SignedDigraph& g, const Strategy& s, std::uint64_t seed, LogBase base) {
  QueryPlan p = empty_plan(g, s.which);
  const auto n = static_cast<std::int64_t>(g.node_count());
  std::vector<std::uint8_t> picked(g.edge_count(), 0);

  // Each edge sits in exactly one out bucket and one in bucket, so within a
  // pass no two nodes write the same slot of `picked`.
  if (uses_out(s.which)) {
#pragma omp parallel for schedule(dynamic, 512)
    for (std::int64_t k = 0; k < n; ++k) {
      const auto i = static_cast<NodeId>(k);
      const auto bucket = g.out_edges(i);
      p.out_samples[i] = draws_for(s.budget, static_cast<std::uint32_t>(bucket.size()), base);
      draw(bucket, p.out_samples[i], derive_seed(seed, i, kOutStream), [&](EdgeId e) { picked[e] = 1; });
    }
  }
  if (uses_in(s.which)) {
#pragma omp parallel for schedule(dynamic, 512)
    for (std::int64_t k = 0; k < n; ++k) {
      const auto i = static_cast<NodeId>(k);
      const auto bucket = g.in_edges(i);
      p.in_samples[i] = draws_for(s.budget, static_cast<std::uint32_t>(bucket.size()), base);
      draw(bucket, p.in_samples[i], derive_seed(seed, i, kInStream), [&](EdgeId e) { picked[e] = 1; });
    }
  }
  for (EdgeId e = 0; e < picked.size(); ++e)
    if (picked[e]) p.distinct_queried.push_back(e);
  return p;
}

QueryPlan select_queries_serial(const SignedDigraph& g, const Strategy& s, std::uint64_t seed, LogBase base) {
  QueryPlan p = empty_plan(g, s.which);
  std::set<EdgeId> picked;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (uses_out(s.which)) {
      p.out_samples[i] = draws_for(s.budget, g.out_degree(i), base);
      draw(g.out_edges(i), p.out_samples[i], derive_seed(seed, i, kOutStream), [&](EdgeId e) { picked.insert(e); });
    }
    if (uses_in(s.which)) {
      p.in_samples[i] = draws_for(s.budget, g.in_degree(i), base);
      draw(g.in_edges(i), p.in_samples[i], derive_seed(seed, i, kInStream), [&](EdgeId e) { picked.insert(e); });
    }
  }
  p.distinct_queried.assign(picked.begin(), picked.end());
  return p;
}

QueryPlan select_alcone(const SignedDigraph& g, FeatureSet which, std::uint64_t seed) {
  return select_queries(g, {Budget::one, which}, seed);
}

QueryPlan select_alclog(const SignedDigraph& g, FeatureSet which, std::uint64_t seed, LogBase base) {
  return select_queries(g, {Budget::log, which}, seed, base);
}

Rule rule_for(FeatureSet which) {
  switch (which) {
    case FeatureSet::trollness: return Rule::one_feature_t;
    case FeatureSet::unpleasantness: return Rule::one_feature_u;
    case FeatureSet::both: return Rule::two_feature;
  }
  return Rule::two_feature;
}

ActiveRun run_active(const SignedDigraph& g, const QueryPlan& plan, Rule rule, Sign tie) {
  if (plan.out_samples.size() != g.node_count() || plan.in_samples.size() != g.node_count())
    throw std::invalid_argument("query plan was built for a different graph");
  for (EdgeId e : plan.distinct_queried)
    if (e >= g.edge_count()) throw std::invalid_argument("query plan was built for a different graph");

  const auto start = std::chrono::steady_clock::now();
  const TrainMask mask = TrainMask::from_edges(g.edge_count(), plan.distinct_queried);
  const std::vector<EdgeId> hidden = mask.hidden_edges();
  const FeatureEstimates f = estimate_features(g, mask);

  ActiveRun run;
  switch (rule) {
    case Rule::one_feature_t: run.prediction = predict_one_feature(g, f, hidden, FeatureSet::trollness, tie); break;
    case Rule::one_feature_u: run.prediction = predict_one_feature(g, f, hidden, FeatureSet::unpleasantness, tie); break;
    case Rule::two_feature: {
      Separator sep;
      sep.tie_label = tie;
      if (!plan.distinct_queried.empty()) sep = fit_kstar(g, f, plan.distinct_queried, tie);
      run.prediction = predict_two_feature(g, f, sep, hidden);
      break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();

  run.queried = plan.distinct_queried.size();
  const Confusion c = confusion(run.prediction, g);
  run.mistakes = c.fp + c.fn;
  run.metrics.counts = c;
  run.metrics.accuracy = accuracy(c);
  run.metrics.mcc = mcc(c);
  run.metrics.fraction = g.edge_count() ? static_cast<double>(run.queried) / static_cast<double>(g.edge_count()) : 0.0;
  run.metrics.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return run;
}

}  // namespace signlink
