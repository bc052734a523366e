#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "signlink/active.hpp"
#include "signlink/graph.hpp"

namespace signlink {

// ---- labeling models ---------------------------------------------------------

/// Every out-edge of a troll gets -1, everything else +1 (so Psi_out = 0).
struct ConsistentModel {
  std::vector<NodeId> trolls;
};

/// Each base label flipped independently with probability p in [0, 1/2].
struct PFlipModel {
  std::vector<Sign> base;
  double p = 0.0;
};

/// Exactly K edges, chosen uniformly without replacement, get -1.
struct UniformYKModel {
  std::size_t k = 0;
};

using LabelingModel = std::variant<ConsistentModel, PFlipModel, UniformYKModel>;

/// Throws std::invalid_argument when the model's preconditions fail
/// (K > floor(|E|/2), p outside [0, 1/2], base of the wrong length, bad node id).
std::vector<Sign> generate_labels(const SignedDigraph& g, const LabelingModel& model, std::uint64_t seed);

/// Directed Erdos-Renyi graph without self-loops; labels all +1.
SignedDigraph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// ---- bound checks -------------------------------------------------------------

struct BoundReport {
  int theorem = 0;
  std::string algorithm;
  std::size_t trials = 0;
  double mean_mistakes = 0.0;
  double std_error = 0.0;
  double bound = 0.0;             ///< upper bound (Thm 2, 3) or mean lower bound (Thm 1)
  std::optional<double> aggregate_bound;  ///< Thm 3 Jensen form, informational
  std::uint64_t psi_out = 0;
  std::size_t max_queries = 0;    ///< largest distinct query count seen in any trial
  std::size_t query_cap = 0;
  bool queries_within_cap = true;
  bool passed = false;
  bool skipped = false;
  std::string skip_reason;
};

/// Monte Carlo over ALCone(t) plus the trollness rule: pass iff the mean
/// mistake count is at most 2 * Psi_out + 3 SE and every trial stays within
/// |V| distinct queries. Requires trials >= 100.
BoundReport verify_alcone(const SignedDigraph& g, std::size_t trials, std::uint64_t seed);

/// Sum over nodes of psi + 10 psi / sqrt(ln(4 psi + 1)), nodes with psi = 0 contribute 0.
double alclog_per_node_bound(const ComplexityStats& c);

/// Sum over nodes of 4 * ceil(ln(d_out + 1)).
std::size_t alclog_query_cap(const SignedDigraph& g, LogBase base = LogBase::natural);

/// Monte Carlo over ALClog(t) plus the trollness rule. Skips when Psi_out = 0.
BoundReport verify_alclog(const SignedDigraph& g, std::size_t trials, std::uint64_t seed);

/// Draws a fresh Y_K labeling per trial, runs `algorithm` (alcone-t or
/// alclog-t) and compares the mean mistakes to the mean of
/// (K/|E|)(|E| - q) - 1 over trials, q being that trial's query count.
/// Pass iff mean mistakes >= mean bound - 3 SE.
BoundReport estimate_lower_bound(const SignedDigraph& g, std::size_t k, std::size_t trials, const Strategy& algorithm,
                                 std::uint64_t seed);

}  // namespace signlink
