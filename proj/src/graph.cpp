#include "signlink/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "signlink/rng.hpp"

namespace signlink {

namespace {

constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Open-addressing map from raw ids to first-appearance dense ids.
class Interner {
 public:
  explicit Interner(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    slots_.assign(cap, {0, kNoNode});
  }

  NodeId operator()(RawId r, std::vector<RawId>& order) {
    if (2 * (order.size() + 1) > slots_.size()) grow();
    std::size_t i = slot_of(r);
    if (slots_[i].second == kNoNode) {
      slots_[i] = {r, static_cast<NodeId>(order.size())};
      order.push_back(r);
    }
    return slots_[i].second;
  }

 private:
  std::size_t slot_of(RawId r) const {
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = mix64(static_cast<std::uint64_t>(r)) & mask;
    while (slots_[i].second != kNoNode && slots_[i].first != r) i = (i + 1) & mask;
    return i;
  }
  void grow() {
    auto old = std::move(slots_);
    slots_.assign(old.size() * 2, {0, kNoNode});
    for (const auto& s : old)
      if (s.second != kNoNode) slots_[slot_of(s.first)] = s;
  }

  std::vector<std::pair<RawId, NodeId>> slots_;
};

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }

  NodeId find(NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }

  std::vector<NodeId> parent;
  std::vector<std::size_t> size;
};

}  // namespace

Sign sign_from_int(long v) {
  if (v == 1) return Sign::positive;
  if (v == -1) return Sign::negative;
  throw std::invalid_argument("sign must be -1 or 1, got " + std::to_string(v));
}

std::string to_string(FeatureSet f) {
  switch (f) {
    case FeatureSet::trollness: return "t";
    case FeatureSet::unpleasantness: return "u";
    case FeatureSet::both: return "tu";
  }
  return "?";
}

FeatureSet feature_set_from_string(const std::string& s) {
  if (s == "t") return FeatureSet::trollness;
  if (s == "u") return FeatureSet::unpleasantness;
  if (s == "tu") return FeatureSet::both;
  throw InputError("unknown feature set '" + s + "' (expected t, u or tu)");
}

SignedDigraph SignedDigraph::build(std::span<const RawEdge> raw) {
  SignedDigraph g;
  RawId lo = std::numeric_limits<RawId>::max(), hi = std::numeric_limits<RawId>::min();
  for (const RawEdge& e : raw) {
    if (e.sign != Sign::positive && e.sign != Sign::negative)
      throw std::invalid_argument("edge sign must be -1 or +1");
    lo = std::min({lo, e.src, e.dst});
    hi = std::max({hi, e.src, e.dst});
  }

  std::vector<Edge> all(raw.size());
  const bool compact_ids = !raw.empty() && lo >= 0 && hi <= static_cast<RawId>(4 * raw.size() + 1024);
  if (compact_ids) {
    // Small non-negative ids (the usual case for published edge lists): direct table.
    std::vector<NodeId> table(static_cast<std::size_t>(hi) + 1, kNoNode);
    auto intern = [&](RawId r) {
      NodeId& slot = table[static_cast<std::size_t>(r)];
      if (slot == kNoNode) {
        slot = static_cast<NodeId>(g.raw_ids_.size());
        g.raw_ids_.push_back(r);
      }
      return slot;
    };
    for (std::size_t k = 0; k < raw.size(); ++k) {
      all[k].src = intern(raw[k].src);
      all[k].dst = intern(raw[k].dst);
    }
  } else {
    Interner intern(raw.size() / 4 + 16);
    for (std::size_t k = 0; k < raw.size(); ++k) {
      all[k].src = intern(raw[k].src, g.raw_ids_);
      all[k].dst = intern(raw[k].dst, g.raw_ids_);
    }
  }

  // Bucket by source in input order; the first occurrence of each (src, dst)
  // is the one seen first while walking a bucket.
  const std::size_t n = g.raw_ids_.size();
  std::vector<std::uint32_t> offsets(n + 1, 0);
  for (const Edge& e : all) ++offsets[e.src + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::pair<NodeId, std::uint32_t>> bucket(all.size());  // (dst, input position)
  {
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t k = 0; k < all.size(); ++k) bucket[fill[all[k].src]++] = {all[k].dst, static_cast<std::uint32_t>(k)};
  }
  std::vector<std::uint8_t> keep(all.size(), 0);
  std::vector<NodeId> stamp(n, kNoNode);
  std::size_t kept = 0;
  for (NodeId u = 0; u < n; ++u) {
    for (std::size_t p = offsets[u]; p < offsets[u + 1]; ++p) {
      auto& [dst, k] = bucket[p];
      if (stamp[dst] == u) {
        dst = kNoNode;
        continue;
      }
      stamp[dst] = u;
      keep[k] = 1;
      ++kept;
    }
  }

  g.edges_.reserve(kept);
  g.labels_.reserve(kept);
  std::vector<EdgeId> rank(all.size());
  for (std::size_t k = 0; k < all.size(); ++k) {
    rank[k] = static_cast<EdgeId>(g.edges_.size());
    if (!keep[k]) continue;
    g.edges_.push_back(all[k]);
    g.labels_.push_back(raw[k].sign);
  }
  // The buckets already list the kept edges grouped by source.
  std::vector<std::pair<EdgeId, NodeId>> out;
  out.reserve(kept);
  for (const auto& [dst, k] : bucket)
    if (dst != kNoNode) out.emplace_back(rank[k], dst);
  g.index_raw_ids();
  g.index(out.data());
  return g;
}

SignedDigraph SignedDigraph::from_dense(std::size_t node_count, std::vector<Edge> edges, std::vector<Sign> labels,
                                        std::vector<RawId> raw_ids) {
  if (edges.size() != labels.size()) throw std::invalid_argument("edges and labels differ in length");
  if (raw_ids.empty()) {
    raw_ids.resize(node_count);
    std::iota(raw_ids.begin(), raw_ids.end(), RawId{0});
  }
  if (raw_ids.size() != node_count) throw std::invalid_argument("raw id table has wrong length");

  SignedDigraph g;
  g.edges_ = std::move(edges);
  g.labels_ = std::move(labels);
  g.raw_ids_ = std::move(raw_ids);
  g.index_raw_ids();
  for (const Edge& e : g.edges_) {
    if (e.src >= node_count || e.dst >= node_count) throw std::invalid_argument("edge endpoint out of range");
  }
  g.index();
  return g;
}

void SignedDigraph::index_raw_ids() {
  dense_of_raw_.resize(raw_ids_.size());
  for (NodeId i = 0; i < raw_ids_.size(); ++i) dense_of_raw_[i] = {raw_ids_[i], i};
  std::sort(dense_of_raw_.begin(), dense_of_raw_.end());
  const auto dup = std::adjacent_find(dense_of_raw_.begin(), dense_of_raw_.end(),
                                      [](const auto& a, const auto& b) { return a.first == b.first; });
  if (dup != dense_of_raw_.end()) throw std::invalid_argument("raw ids are not unique");
}

void SignedDigraph::index(const std::pair<EdgeId, NodeId>* out_grouped) {
  const std::size_t n = raw_ids_.size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++out_offsets_[e.src + 1];
    ++in_offsets_[e.dst + 1];
  }
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());

  // (edge, other endpoint) grouped by source and by target
  std::vector<std::pair<EdgeId, NodeId>> out_own, in(edges_.size());
  {
    std::vector<EdgeId> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
    for (EdgeId e = 0; e < edges_.size(); ++e) in[in_fill[edges_[e].dst]++] = {e, edges_[e].src};
  }
  if (!out_grouped) {
    out_own.resize(edges_.size());
    std::vector<EdgeId> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
    for (EdgeId e = 0; e < edges_.size(); ++e) out_own[out_fill[edges_[e].src]++] = {e, edges_[e].dst};
    out_grouped = out_own.data();
  }
  const auto* out = out_grouped;
  out_index_.resize(edges_.size());
  in_index_.resize(edges_.size());
  for (std::size_t p = 0; p < edges_.size(); ++p) {
    out_index_[p] = out[p].first;
    in_index_[p] = in[p].first;
  }

  // For each node u, stamp its out-neighbours; an in-edge w->u whose source
  // carries u's stamp has the reciprocal u->w.
  std::vector<NodeId> stamp(n, kNoNode);
  std::vector<EdgeId> via(n, kNoEdge);
  reciprocal_.assign(edges_.size(), kNoEdge);
  for (NodeId u = 0; u < n; ++u) {
    for (std::size_t p = out_offsets_[u]; p < out_offsets_[u + 1]; ++p) {
      const auto [e, v] = out[p];
      if (stamp[v] == u) throw std::invalid_argument("duplicate (src, dst) pair");
      stamp[v] = u;
      via[v] = e;
    }
    for (std::size_t p = in_offsets_[u]; p < in_offsets_[u + 1]; ++p) {
      const auto [e, w] = in[p];
      if (stamp[w] == u) reciprocal_[e] = via[w];
    }
  }
}

Degrees SignedDigraph::degrees(NodeId i) const {
  Degrees d;
  for (EdgeId e : out_edges(i)) (is_negative(labels_[e]) ? d.out_neg : d.out_pos)++;
  for (EdgeId e : in_edges(i)) (is_negative(labels_[e]) ? d.in_neg : d.in_pos)++;
  return d;
}

std::optional<NodeId> SignedDigraph::dense_id(RawId raw) const {
  const auto it = std::lower_bound(dense_of_raw_.begin(), dense_of_raw_.end(), std::make_pair(raw, NodeId{0}));
  if (it == dense_of_raw_.end() || it->first != raw) return std::nullopt;
  return it->second;
}

SignedDigraph SignedDigraph::relabeled(std::vector<Sign> labels) const {
  if (labels.size() != edges_.size()) throw std::invalid_argument("label vector has wrong length");
  SignedDigraph copy = *this;
  copy.labels_ = std::move(labels);
  return copy;
}

std::size_t SignedDigraph::positive_count() const noexcept {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), Sign::positive));
}

WccView largest_wcc(const SignedDigraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("largest_wcc: empty graph");

  DisjointSets sets(n);
  for (const Edge& e : g.edges()) sets.unite(e.src, e.dst);

  std::vector<std::size_t> node_count(n, 0), edge_count(n, 0);
  std::vector<NodeId> min_node(n, static_cast<NodeId>(n));
  for (NodeId i = 0; i < n; ++i) {
    const NodeId r = sets.find(i);
    ++node_count[r];
    min_node[r] = std::min(min_node[r], i);
  }
  for (const Edge& e : g.edges()) ++edge_count[sets.find(e.src)];

  NodeId best = sets.find(0);
  for (NodeId i = 0; i < n; ++i) {
    if (sets.find(i) != i) continue;
    const auto key = [&](NodeId r) {
      return std::tuple(edge_count[r], node_count[r], static_cast<NodeId>(n) - min_node[r]);
    };
    if (key(i) > key(best)) best = i;
  }

  WccView view;
  std::vector<NodeId> local(n, static_cast<NodeId>(n));
  std::vector<RawId> raw;
  for (NodeId i = 0; i < n; ++i) {
    if (sets.find(i) != best) continue;
    local[i] = static_cast<NodeId>(view.node_to_parent.size());
    view.node_to_parent.push_back(i);
    raw.push_back(g.raw_id(i));
  }
  std::vector<Edge> edges;
  std::vector<Sign> labels;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& pe = g.edge(e);
    if (local[pe.src] == n) continue;
    edges.push_back({local[pe.src], local[pe.dst]});
    labels.push_back(g.label(e));
    view.edge_to_parent.push_back(e);
  }
  view.coverage = g.edge_count() == 0 ? 1.0 : static_cast<double>(edges.size()) / static_cast<double>(g.edge_count());
  view.graph = SignedDigraph::from_dense(view.node_to_parent.size(), std::move(edges), std::move(labels), std::move(raw));
  return view;
}

}  // namespace signlink
