#include "signlink/bounds.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "signlink/features.hpp"
#include "signlink/rng.hpp"

namespace signlink {

namespace {

struct LabelVisitor {
  const SignedDigraph& g;
  std::uint64_t seed;

  std::vector<Sign> operator()(const ConsistentModel& m) const {
    std::vector<std::uint8_t> troll(g.node_count(), 0);
    for (NodeId i : m.trolls) {
      if (i >= g.node_count()) throw std::invalid_argument("troll id out of range");
      troll[i] = 1;
    }
    std::vector<Sign> labels(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) labels[e] = troll[g.edge(e).src] ? Sign::negative : Sign::positive;
    return labels;
  }

  std::vector<Sign> operator()(const PFlipModel& m) const {
    if (!(m.p >= 0.0 && m.p <= 0.5)) throw std::invalid_argument("flip probability must lie in [0, 1/2]");
    if (m.base.size() != g.edge_count()) throw std::invalid_argument("base labeling has wrong length");
    Rng rng(seed);
    std::vector<Sign> labels = m.base;
    for (Sign& s : labels)
      if (uniform_unit(rng) < m.p) s = flip(s);
    return labels;
  }

  std::vector<Sign> operator()(const UniformYKModel& m) const {
    const std::size_t n = g.edge_count();
    if (m.k > n / 2) throw std::invalid_argument("K must not exceed floor(|E|/2)");
    // Partial Fisher-Yates: the first K slots form a uniform K-subset.
    Rng rng(seed);
    std::vector<EdgeId> order(n);
    std::iota(order.begin(), order.end(), EdgeId{0});
    std::vector<Sign> labels(n, Sign::positive);
    for (std::size_t k = 0; k < m.k; ++k) {
      std::swap(order[k], order[k + uniform_below(rng, n - k)]);
      labels[order[k]] = Sign::negative;
    }
    return labels;
  }
};

struct TrialOutcome {
  double mistakes = 0;
  double lower = 0;
  std::size_t queries = 0;
};

/// Runs `trials` independent selections + predictions on a fixed labeled graph.
std::vector<TrialOutcome> run_trials(const SignedDigraph& g, const Strategy& s, std::size_t trials,
                                     std::uint64_t seed) {
  std::vector<TrialOutcome> out(trials);
  const auto t = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t k = 0; k < t; ++k) {
    const QueryPlan plan = select_queries(g, s, derive_seed(seed, static_cast<std::uint64_t>(k)));
    const ActiveRun run = run_active(g, plan, rule_for(s.which));
    out[k] = {static_cast<double>(run.mistakes), 0.0, run.queried};
  }
  return out;
}

void require_trials(std::size_t trials) {
  if (trials < 100) throw std::invalid_argument("Monte Carlo checks need at least 100 trials");
}

}  // namespace

std::vector<Sign> generate_labels(const SignedDigraph& g, const LabelingModel& model, std::uint64_t seed) {
  return std::visit(LabelVisitor{g, seed}, model);
}

SignedDigraph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j)
      if (i != j && uniform_unit(rng) < p) edges.push_back({i, j});
  std::vector<Sign> labels(edges.size(), Sign::positive);
  return SignedDigraph::from_dense(n, std::move(edges), std::move(labels));
}

BoundReport verify_alcone(const SignedDigraph& g, std::size_t trials, std::uint64_t seed) {
  require_trials(trials);
  const ComplexityStats c = complexity(g);
  BoundReport r;
  r.theorem = 2;
  r.algorithm = "alcone-t";
  r.trials = trials;
  r.psi_out = c.total_out;
  r.bound = 2.0 * static_cast<double>(c.total_out);
  r.query_cap = g.node_count();

  const auto outcomes = run_trials(g, {Budget::one, FeatureSet::trollness}, trials, seed);
  std::vector<double> mistakes;
  for (const auto& o : outcomes) {
    mistakes.push_back(o.mistakes);
    r.max_queries = std::max(r.max_queries, o.queries);
  }
  const MeanStderr m = mean_stderr(mistakes);
  r.mean_mistakes = m.mean;
  r.std_error = m.stderr_;
  r.queries_within_cap = r.max_queries <= r.query_cap;
  r.passed = r.queries_within_cap && m.mean <= r.bound + 3.0 * m.stderr_ + 1e-9;
  return r;
}

double alclog_per_node_bound(const ComplexityStats& c) {
  double total = 0;
  for (std::uint32_t psi : c.psi_out) {
    if (psi == 0) continue;
    const double x = psi;
    total += x + 10.0 * x / std::sqrt(std::log(4.0 * x + 1.0));
  }
  return total;
}

std::size_t alclog_query_cap(const SignedDigraph& g, LogBase base) {
  std::size_t cap = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) cap += alclog_sample_count(g.out_degree(i), base);
  return cap;
}

BoundReport verify_alclog(const SignedDigraph& g, std::size_t trials, std::uint64_t seed) {
  require_trials(trials);
  const ComplexityStats c = complexity(g);
  BoundReport r;
  r.theorem = 3;
  r.algorithm = "alclog-t";
  r.trials = trials;
  r.psi_out = c.total_out;
  r.query_cap = alclog_query_cap(g);
  if (c.total_out == 0) {
    r.skipped = true;
    r.skip_reason = "Psi_out = 0: the bound requires a labeling with Psi > 0";
    return r;
  }
  r.bound = alclog_per_node_bound(c);
  const double psi = static_cast<double>(c.total_out);
  r.aggregate_bound = psi + 10.0 * psi / std::sqrt(std::log(4.0 * *c.psi_bar_0 + 1.0));

  const auto outcomes = run_trials(g, {Budget::log, FeatureSet::trollness}, trials, seed);
  std::vector<double> mistakes;
  for (const auto& o : outcomes) {
    mistakes.push_back(o.mistakes);
    r.max_queries = std::max(r.max_queries, o.queries);
  }
  const MeanStderr m = mean_stderr(mistakes);
  r.mean_mistakes = m.mean;
  r.std_error = m.stderr_;
  r.queries_within_cap = r.max_queries <= r.query_cap;
  r.passed = r.queries_within_cap && m.mean <= r.bound + 3.0 * m.stderr_ + 1e-9;
  return r;
}

BoundReport estimate_lower_bound(const SignedDigraph& g, std::size_t k, std::size_t trials, const Strategy& algorithm,
                                 std::uint64_t seed) {
  require_trials(trials);
  const std::size_t n_edges = g.edge_count();
  if (n_edges == 0) throw std::invalid_argument("lower bound needs at least one edge");
  if (k > n_edges / 2) throw std::invalid_argument("K must not exceed floor(|E|/2)");
  if (algorithm.which != FeatureSet::trollness)
    throw std::invalid_argument("lower bound check runs alcone-t or alclog-t");

  BoundReport r;
  r.theorem = 1;
  r.algorithm = to_string(algorithm);
  r.trials = trials;
  r.query_cap = n_edges;

  std::vector<TrialOutcome> out(trials);
  const auto t = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < t; ++i) {
    const auto trial = static_cast<std::uint64_t>(i);
    const SignedDigraph labeled = g.relabeled(generate_labels(g, UniformYKModel{k}, derive_seed(seed, trial, 0)));
    const QueryPlan plan = select_queries(labeled, algorithm, derive_seed(seed, trial, 1));
    const ActiveRun run = run_active(labeled, plan, rule_for(algorithm.which));
    const double q = static_cast<double>(run.queried);
    const double ne = static_cast<double>(n_edges);
    out[i] = {static_cast<double>(run.mistakes), static_cast<double>(k) / ne * (ne - q) - 1.0, run.queried};
  }

  std::vector<double> mistakes, lower, gap;
  for (const auto& o : out) {
    mistakes.push_back(o.mistakes);
    lower.push_back(o.lower);
    gap.push_back(o.mistakes - o.lower);
    r.max_queries = std::max(r.max_queries, o.queries);
  }
  const MeanStderr m = mean_stderr(mistakes);
  const MeanStderr gm = mean_stderr(gap);
  r.mean_mistakes = m.mean;
  r.bound = mean_stderr(lower).mean;
  r.std_error = gm.stderr_;
  r.queries_within_cap = r.max_queries < n_edges;
  r.passed = gm.mean >= -3.0 * gm.stderr_ - 1e-9;
  return r;
}

}  // namespace signlink
