#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "signlink/classifiers.hpp"
#include "signlink/eval.hpp"

namespace signlink {

enum class Budget { one, log };  ///< ALCone / ALClog
enum class LogBase { natural, two };

struct Strategy {
  Budget budget = Budget::one;
  FeatureSet which = FeatureSet::trollness;
};

/// Parses "alcone-t", "alclog-tu", ...
Strategy strategy_from_string(const std::string& s);
std::string to_string(const Strategy& s);

/// Non-adaptive query selection. Built from topology and seed only.
struct QueryPlan {
  std::vector<EdgeId> distinct_queried;  ///< sorted, unique
  std::vector<std::uint32_t> out_samples;  ///< draws made per node from E_out(i)
  std::vector<std::uint32_t> in_samples;   ///< draws made per node from E_in(i)
  FeatureSet which = FeatureSet::trollness;

  friend bool operator==(const QueryPlan&, const QueryPlan&) = default;
};

/// 4 * ceil(log(degree + 1)); 0 for degree 0.
std::uint32_t alclog_sample_count(std::uint32_t degree, LogBase base = LogBase::natural);

QueryPlan select_alcone(const SignedDigraph& g, FeatureSet which, std::uint64_t seed);
QueryPlan select_alclog(const SignedDigraph& g, FeatureSet which, std::uint64_t seed,
                        LogBase base = LogBase::natural);
QueryPlan select_queries(const SignedDigraph& g, const Strategy& s, std::uint64_t seed,
                         LogBase base = LogBase::natural);

/// Single-threaded reference with the same per-node random streams; must
/// return a plan identical to select_queries.
QueryPlan select_queries_serial(const SignedDigraph& g, const Strategy& s, std::uint64_t seed,
                                LogBase base = LogBase::natural);

enum class Rule { one_feature_t, one_feature_u, two_feature };

/// The prediction rule matching a feature set (t, u, or the k* separator for tu).
Rule rule_for(FeatureSet which);

struct ActiveRun {
  Prediction prediction;  ///< over E minus the queried edges
  RunMetrics metrics;
  std::size_t queried = 0;
  std::size_t mistakes = 0;
};

/// Observes the queried labels, estimates features from them and predicts
/// every other edge. Throws std::invalid_argument if the plan does not fit g.
ActiveRun run_active(const SignedDigraph& g, const QueryPlan& plan, Rule rule, Sign tie = Sign::positive);

}  // namespace signlink
