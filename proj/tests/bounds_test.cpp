#include <gtest/gtest.h>

#include <cmath>

#include "signlink/bounds.hpp"
#include "signlink/features.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace signlink;

namespace {

const Sign P = Sign::positive;
const Sign N = Sign::negative;

/// Exact expected ALCone(t) mistakes on a node's out labels: each edge is
/// queried with probability 1/d and its label predicts the rest.
double exact_alcone_star(const std::vector<Sign>& labels) {
  const double d = static_cast<double>(labels.size());
  double total = 0;
  for (Sign q : labels) {
    double m = 0;
    bool skipped = false;
    for (Sign s : labels) {
      if (!skipped && s == q) {
        skipped = true;
        continue;
      }
      m += s != q;
    }
    total += m / d;
  }
  return total;
}

}  // namespace

TEST(Models, ConsistentLabels) {
  const auto g = fixtures::graph_of(oracle::random_instance(1, 20, 80));
  const auto none = generate_labels(g, ConsistentModel{}, 0);
  for (Sign s : none) EXPECT_EQ(s, P);
  EXPECT_EQ(complexity(g.relabeled(none)).total_out, 0u);

  const auto l = generate_labels(g, ConsistentModel{{0, 2}}, 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const NodeId s = g.edge(e).src;
    EXPECT_EQ(l[e], (s == 0 || s == 2) ? N : P);
  }
  EXPECT_EQ(complexity(g.relabeled(l)).total_out, 0u);
  EXPECT_THROW(generate_labels(g, ConsistentModel{{9999}}, 0), std::invalid_argument);
}

TEST(Models, PFlipZeroIsIdentity) {
  const auto g = fixtures::random_labels(fixtures::graph_of(oracle::random_instance(2, 20, 80)), 0.4, 1);
  const std::vector<Sign> base(g.labels().begin(), g.labels().end());
  EXPECT_EQ(generate_labels(g, PFlipModel{base, 0.0}, 7), base);
  EXPECT_THROW(generate_labels(g, PFlipModel{base, 0.6}, 7), std::invalid_argument);
  EXPECT_THROW(generate_labels(g, PFlipModel{{}, 0.1}, 7), std::invalid_argument);
}

TEST(Models, PFlipRate) {
  const auto g = erdos_renyi(100, 0.2, 3);
  const std::vector<Sign> base(g.edge_count(), P);
  const auto l = generate_labels(g, PFlipModel{base, 0.3}, 5);
  double neg = 0;
  for (Sign s : l) neg += s == N;
  const double m = static_cast<double>(l.size());
  EXPECT_NEAR(neg / m, 0.3, 4 * std::sqrt(0.3 * 0.7 / m));
}

TEST(Models, UniformYKExactCountAndUniformMarginals) {
  const auto g = fixtures::graph_of(oracle::random_instance(3, 10, 20));
  const std::size_t m = g.edge_count(), k = m / 2;
  std::vector<double> hits(m, 0);
  const int draws = 4000;
  for (int s = 0; s < draws; ++s) {
    const auto l = generate_labels(g, UniformYKModel{k}, static_cast<std::uint64_t>(s));
    std::size_t neg = 0;
    for (EdgeId e = 0; e < m; ++e)
      if (l[e] == N) {
        ++neg;
        ++hits[e];
      }
    ASSERT_EQ(neg, k);
  }
  // chi-square against the uniform marginal K/|E|
  const double expect = draws * static_cast<double>(k) / m;
  double chi = 0;
  for (double h : hits) chi += (h - expect) * (h - expect) / expect;
  // the marginals are negatively correlated, which only shrinks chi
  const double df = static_cast<double>(m - 1);
  EXPECT_LT(chi, df + 5.0 * std::sqrt(2.0 * df)) << "m = " << m;
  EXPECT_THROW(generate_labels(g, UniformYKModel{m / 2 + 1}, 0), std::invalid_argument);
}

TEST(ErdosRenyi, NoSelfLoopsAndDensity) {
  const auto g = erdos_renyi(60, 0.1, 4);
  for (const auto& e : g.edges()) EXPECT_NE(e.src, e.dst);
  const double pairs = 60.0 * 59.0;
  EXPECT_NEAR(g.edge_count() / pairs, 0.1, 4 * std::sqrt(0.1 * 0.9 / pairs));
  EXPECT_EQ(erdos_renyi(60, 0.1, 4).edges().size(), g.edge_count());
  EXPECT_THROW(erdos_renyi(5, 1.5, 0), std::invalid_argument);
}

TEST(AlcOneBound, StarExpectationIsFourThirds) {
  const std::vector<Sign> labels{P, P, N};
  EXPECT_NEAR(exact_alcone_star(labels), 4.0 / 3.0, 1e-12);
  const auto r = verify_alcone(fixtures::out_star(labels), 4000, 1);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.psi_out, 1u);
  EXPECT_DOUBLE_EQ(r.bound, 2.0);
  EXPECT_NEAR(r.mean_mistakes, 4.0 / 3.0, 4 * r.std_error);
}

TEST(AlcOneBound, ZeroPsiMeansZeroMistakes) {
  const auto g = fixtures::graph_of(oracle::random_instance(12, 30, 200));
  std::vector<NodeId> trolls;
  for (NodeId i = 1; i < g.node_count(); i += 3) trolls.push_back(i);
  const auto l = generate_labels(g, ConsistentModel{trolls}, 0);
  const auto r = verify_alcone(g.relabeled(l), 100, 2);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.mean_mistakes, 0.0);
  EXPECT_THROW(verify_alcone(g, 10, 0), std::invalid_argument);
}

TEST(AlcOneBound, FlippedRandomGraph) {
  const auto g = erdos_renyi(500, 0.01, 9);
  std::vector<NodeId> trolls;
  for (NodeId i = 0; i < 500; i += 5) trolls.push_back(i);
  const auto base = generate_labels(g, ConsistentModel{trolls}, 0);
  const auto labeled = g.relabeled(generate_labels(g, PFlipModel{base, 0.1}, 3));
  const auto r = verify_alcone(labeled, 1000, 4);
  EXPECT_TRUE(r.passed) << r.mean_mistakes << " vs " << r.bound;
  EXPECT_TRUE(r.queries_within_cap);
  EXPECT_LE(r.max_queries, 500u);
}

TEST(AlcLogBound, SkipsWhenPsiIsZero) {
  const auto r = verify_alclog(fixtures::out_star({P, P, P}), 100, 0);
  EXPECT_TRUE(r.skipped);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.skip_reason.empty());
}

TEST(AlcLogBound, PerNodeBoundAndCap) {
  const auto g = fixtures::out_star({P, P, P, N, N, P, P});
  const auto c = complexity(g);
  EXPECT_NEAR(alclog_per_node_bound(c), 2.0 + 20.0 / std::sqrt(std::log(9.0)), 1e-12);
  EXPECT_EQ(alclog_query_cap(g), 12u);
  const auto r = verify_alclog(g, 500, 3);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.max_queries, 12u);
}

TEST(LowerBound, ZeroNegativesIsTrivial) {
  const auto g = erdos_renyi(20, 0.3, 1);
  const auto r = estimate_lower_bound(g, 0, 100, strategy_from_string("alcone-t"), 0);
  EXPECT_DOUBLE_EQ(r.bound, -1.0);
  EXPECT_EQ(r.mean_mistakes, 0.0);
  EXPECT_TRUE(r.passed);
}

TEST(LowerBound, RandomGraphRespectsBound) {
  // about 200 edges
  const auto g = erdos_renyi(30, 200.0 / 870.0, 6);
  const std::size_t k = g.edge_count() / 4;
  for (const char* algo : {"alcone-t", "alclog-t"}) {
    const auto r = estimate_lower_bound(g, k, 2000, strategy_from_string(algo), 7);
    EXPECT_TRUE(r.passed) << algo << ": " << r.mean_mistakes << " vs " << r.bound << " se " << r.std_error;
  }
  EXPECT_THROW(estimate_lower_bound(g, k, 100, strategy_from_string("alcone-tu"), 0), std::invalid_argument);
}
