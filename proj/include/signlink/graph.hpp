#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "signlink/types.hpp"

namespace signlink {

struct RawEdge {
  RawId src;
  RawId dst;
  Sign sign;
};

struct Edge {
  NodeId src;
  NodeId dst;
};

struct Degrees {
  std::uint32_t out_pos = 0;
  std::uint32_t out_neg = 0;
  std::uint32_t in_pos = 0;
  std::uint32_t in_neg = 0;

  std::uint32_t out() const noexcept { return out_pos + out_neg; }
  std::uint32_t in() const noexcept { return in_pos + in_neg; }
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

/// Directed signed graph with CSR-style outgoing and ingoing edge indices.
///
/// Node ids are dense in [0, node_count()), edge ids are dense in
/// [0, edge_count()). Each node's out/in bucket lists edge ids in increasing
/// order. The structure is immutable once built; `relabeled` produces a copy
/// with the same topology and a different labeling.
class SignedDigraph {
 public:
  SignedDigraph() = default;

  /// Ingests raw edges. Dense ids follow first appearance (src before dst),
  /// repeated (src, dst) pairs keep the first occurrence's sign, self-loops
  /// are kept.
  static SignedDigraph build(std::span<const RawEdge> raw);

  /// Builds from already-dense ids. `raw_ids` defaults to the identity map.
  /// Duplicate pairs are rejected.
  static SignedDigraph from_dense(std::size_t node_count, std::vector<Edge> edges, std::vector<Sign> labels,
                                  std::vector<RawId> raw_ids = {});

  std::size_t node_count() const noexcept { return raw_ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  Sign label(EdgeId e) const { return labels_.at(e); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Sign> labels() const noexcept { return labels_; }

  std::span<const EdgeId> out_edges(NodeId i) const {
    check_node(i);
    return {out_index_.data() + out_offsets_[i], out_index_.data() + out_offsets_[i + 1]};
  }
  std::span<const EdgeId> in_edges(NodeId i) const {
    check_node(i);
    return {in_index_.data() + in_offsets_[i], in_index_.data() + in_offsets_[i + 1]};
  }
  std::uint32_t out_degree(NodeId i) const { return static_cast<std::uint32_t>(out_edges(i).size()); }
  std::uint32_t in_degree(NodeId i) const { return static_cast<std::uint32_t>(in_edges(i).size()); }

  /// Signed degree counts of node i. Throws std::out_of_range for bad ids.
  Degrees degrees(NodeId i) const;

  /// Edge j->i for edge i->j, or kNoEdge.
  EdgeId reciprocal(EdgeId e) const { return reciprocal_.at(e); }

  RawId raw_id(NodeId i) const { return raw_ids_.at(i); }
  std::optional<NodeId> dense_id(RawId raw) const;

  /// Same topology, new labels. `labels.size()` must equal edge_count().
  SignedDigraph relabeled(std::vector<Sign> labels) const;

  std::size_t positive_count() const noexcept;

 private:
  void check_node(NodeId i) const {
    if (i >= node_count()) throw std::out_of_range("node id " + std::to_string(i) + " out of range");
  }
  /// out_grouped, when given, lists (edge, target) grouped by source.
  void index(const std::pair<EdgeId, NodeId>* out_grouped = nullptr);
  void index_raw_ids();

  std::vector<Edge> edges_;
  std::vector<Sign> labels_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<EdgeId> out_index_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<EdgeId> in_index_;
  std::vector<EdgeId> reciprocal_;
  std::vector<RawId> raw_ids_;
  std::vector<std::pair<RawId, NodeId>> dense_of_raw_;  ///< sorted by raw id
};

/// Largest weakly connected component, as an induced subgraph.
struct WccView {
  SignedDigraph graph;                 ///< view ids; raw ids are the parent's raw ids
  std::vector<NodeId> node_to_parent;  ///< view node -> parent node (increasing)
  std::vector<EdgeId> edge_to_parent;  ///< view edge -> parent edge (increasing)
  double coverage = 0.0;               ///< |E_wcc| / |E|, 1.0 for an edgeless parent
};

/// Picks the component with the most edges; ties go to more nodes, then to
/// the lowest minimum node id. Throws std::invalid_argument on an empty graph.
WccView largest_wcc(const SignedDigraph& g);

}  // namespace signlink
