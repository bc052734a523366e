#pragma once

#include <array>
#include <optional>
#include <vector>

#include "signlink/graph.hpp"
#include "signlink/mask.hpp"

namespace signlink {

/// Per-node observed counts and the trollness / unpleasantness estimates
/// derived from them. A node with no observed edge in a direction gets 1/2.
struct FeatureEstimates {
  std::vector<std::uint32_t> obs_out_neg;
  std::vector<std::uint32_t> obs_out;
  std::vector<std::uint32_t> obs_in_neg;
  std::vector<std::uint32_t> obs_in;
  std::vector<double> troll;       ///< t-hat
  std::vector<double> unpleasant;  ///< u-hat

  std::size_t node_count() const noexcept { return troll.size(); }
  friend bool operator==(const FeatureEstimates&, const FeatureEstimates&) = default;
};

/// Node-parallel kernel: each node scans its own out/in buckets.
FeatureEstimates estimate_features(const SignedDigraph& g, const TrainMask& mask);

/// Reference implementation: one serial pass over the edge list.
FeatureEstimates estimate_features_serial(const SignedDigraph& g, const TrainMask& mask);

/// Label-irregularity measures computed from the true labels.
struct ComplexityStats {
  std::vector<std::uint32_t> psi_out;  ///< min(d+out, d-out)
  std::vector<std::uint32_t> psi_in;
  std::vector<Sign> y_min_out;  ///< least used outgoing label, +1 on ties
  std::vector<Sign> y_min_in;
  std::uint64_t total_out = 0;
  std::uint64_t total_in = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double d_bar = 0.0;                 ///< |E| / |V|
  std::optional<double> psi_bar_0;    ///< mean psi_out over nodes with psi_out != 0

  double psi_out_fraction() const noexcept { return edges ? static_cast<double>(total_out) / edges : 0.0; }
  double psi_in_fraction() const noexcept { return edges ? static_cast<double>(total_in) / edges : 0.0; }
  friend bool operator==(const ComplexityStats&, const ComplexityStats&) = default;
};

ComplexityStats complexity(const SignedDigraph& g);
ComplexityStats complexity_serial(const SignedDigraph& g);

/// |1/2 - t(i)| for every node with at least one outgoing edge (node order),
/// with the 25/50/75% quantiles (linear interpolation between order stats).
struct PfcSummary {
  std::vector<double> values;
  std::array<double, 3> quartiles{};
};

PfcSummary pfc_surrogate(const SignedDigraph& g);

/// Quantile of already sorted data, linear interpolation. Empty input gives 0.
double sorted_quantile(const std::vector<double>& sorted, double q);

}  // namespace signlink
