#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "signlink/graph.hpp"
#include "signlink/mask.hpp"

namespace fixtures {

using namespace signlink;

inline SignedDigraph graph_of(const oracle::Instance& in) {
  std::vector<Edge> e;
  std::vector<Sign> l;
  for (std::size_t k = 0; k < in.edges.size(); ++k) {
    e.push_back({in.edges[k].first, in.edges[k].second});
    l.push_back(in.labels[k] < 0 ? Sign::negative : Sign::positive);
  }
  return SignedDigraph::from_dense(in.nodes, std::move(e), std::move(l));
}

inline TrainMask mask_of(const oracle::Instance& in) {
  TrainMask m(in.edges.size());
  for (std::size_t k = 0; k < in.edges.size(); ++k) m.set(static_cast<EdgeId>(k), in.observed[k]);
  return m;
}

/// Center 0 with out-edges to 1..n carrying `labels`.
inline SignedDigraph out_star(const std::vector<Sign>& labels) {
  std::vector<Edge> e;
  for (NodeId k = 0; k < labels.size(); ++k) e.push_back({0, k + 1});
  return SignedDigraph::from_dense(labels.size() + 1, std::move(e), labels);
}

/// Random labels on a fixed topology, each edge negative with probability q.
inline SignedDigraph random_labels(const SignedDigraph& g, double q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution neg(q);
  std::vector<Sign> l(g.edge_count());
  for (auto& s : l) s = neg(rng) ? Sign::negative : Sign::positive;
  return g.relabeled(std::move(l));
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("signlink_" + tag + "_" + std::to_string(std::random_device{}()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
