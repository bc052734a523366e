#include "signlink/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace signlink {

namespace {

double ratio_or_half(std::uint32_t neg, std::uint32_t total) {
  return total == 0 ? 0.5 : static_cast<double>(neg) / static_cast<double>(total);
}

FeatureEstimates allocate(std::size_t n) {
  FeatureEstimates f;
  f.obs_out_neg.assign(n, 0);
  f.obs_out.assign(n, 0);
  f.obs_in_neg.assign(n, 0);
  f.obs_in.assign(n, 0);
  f.troll.assign(n, 0.5);
  f.unpleasant.assign(n, 0.5);
  return f;
}

void check_mask(const SignedDigraph& g, const TrainMask& mask) {
  if (mask.size() != g.edge_count())
    throw std::invalid_argument("mask covers " + std::to_string(mask.size()) + " edges, graph has " +
                                std::to_string(g.edge_count()));
}

struct NodeIrregularity {
  std::uint32_t psi;
  Sign y_min;
};

NodeIrregularity irregularity(std::uint32_t pos, std::uint32_t neg) {
  return {std::min(pos, neg), neg < pos ? Sign::negative : Sign::positive};
}

void finish_totals(ComplexityStats& c) {
  std::uint64_t nonzero = 0;
  for (auto p : c.psi_out) nonzero += p != 0;
  c.d_bar = c.nodes ? static_cast<double>(c.edges) / static_cast<double>(c.nodes) : 0.0;
  if (nonzero > 0) c.psi_bar_0 = static_cast<double>(c.total_out) / static_cast<double>(nonzero);
}

}  // namespace

FeatureEstimates estimate_features(const SignedDigraph& g, const TrainMask& mask) {
  check_mask(g, mask);
  const auto n = static_cast<std::int64_t>(g.node_count());
  FeatureEstimates f = allocate(g.node_count());
  const auto labels = g.labels();

#pragma omp parallel for schedule(dynamic, 512)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<NodeId>(k);
    std::uint32_t out = 0, out_neg = 0, in = 0, in_neg = 0;
    for (EdgeId e : g.out_edges(i)) {
      if (!mask.observed(e)) continue;
      ++out;
      out_neg += is_negative(labels[e]);
    }
    for (EdgeId e : g.in_edges(i)) {
      if (!mask.observed(e)) continue;
      ++in;
      in_neg += is_negative(labels[e]);
    }
    f.obs_out[i] = out;
    f.obs_out_neg[i] = out_neg;
    f.obs_in[i] = in;
    f.obs_in_neg[i] = in_neg;
    f.troll[i] = ratio_or_half(out_neg, out);
    f.unpleasant[i] = ratio_or_half(in_neg, in);
  }
  return f;
}

FeatureEstimates estimate_features_serial(const SignedDigraph& g, const TrainMask& mask) {
  check_mask(g, mask);
  FeatureEstimates f = allocate(g.node_count());
  const auto edges = g.edges();
  const auto labels = g.labels();
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (!mask.observed(e)) continue;
    const bool neg = is_negative(labels[e]);
    ++f.obs_out[edges[e].src];
    f.obs_out_neg[edges[e].src] += neg;
    ++f.obs_in[edges[e].dst];
    f.obs_in_neg[edges[e].dst] += neg;
  }
  for (NodeId i = 0; i < g.node_count(); ++i) {
    f.troll[i] = ratio_or_half(f.obs_out_neg[i], f.obs_out[i]);
    f.unpleasant[i] = ratio_or_half(f.obs_in_neg[i], f.obs_in[i]);
  }
  return f;
}

ComplexityStats complexity(const SignedDigraph& g) {
  const std::size_t n = g.node_count();
  ComplexityStats c;
  c.nodes = n;
  c.edges = g.edge_count();
  c.psi_out.resize(n);
  c.psi_in.resize(n);
  c.y_min_out.resize(n);
  c.y_min_in.resize(n);

  std::uint64_t total_out = 0, total_in = 0;
#pragma omp parallel for schedule(dynamic, 512) reduction(+ : total_out, total_in)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
    const auto i = static_cast<NodeId>(k);
    const Degrees d = g.degrees(i);
    const auto out = irregularity(d.out_pos, d.out_neg);
    const auto in = irregularity(d.in_pos, d.in_neg);
    c.psi_out[i] = out.psi;
    c.y_min_out[i] = out.y_min;
    c.psi_in[i] = in.psi;
    c.y_min_in[i] = in.y_min;
    total_out += out.psi;
    total_in += in.psi;
  }
  c.total_out = total_out;
  c.total_in = total_in;
  finish_totals(c);
  return c;
}

ComplexityStats complexity_serial(const SignedDigraph& g) {
  const std::size_t n = g.node_count();
  std::vector<Degrees> deg(n);
  const auto edges = g.edges();
  const auto labels = g.labels();
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (is_negative(labels[e])) {
      ++deg[edges[e].src].out_neg;
      ++deg[edges[e].dst].in_neg;
    } else {
      ++deg[edges[e].src].out_pos;
      ++deg[edges[e].dst].in_pos;
    }
  }
  ComplexityStats c;
  c.nodes = n;
  c.edges = edges.size();
  for (const Degrees& d : deg) {
    const auto out = irregularity(d.out_pos, d.out_neg);
    const auto in = irregularity(d.in_pos, d.in_neg);
    c.psi_out.push_back(out.psi);
    c.y_min_out.push_back(out.y_min);
    c.psi_in.push_back(in.psi);
    c.y_min_in.push_back(in.y_min);
    c.total_out += out.psi;
    c.total_in += in.psi;
  }
  finish_totals(c);
  return c;
}

double sorted_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

PfcSummary pfc_surrogate(const SignedDigraph& g) {
  PfcSummary s;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const Degrees d = g.degrees(i);
    if (d.out() == 0) continue;
    s.values.push_back(std::abs(0.5 - ratio_or_half(d.out_neg, d.out())));
  }
  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end());
  s.quartiles = {sorted_quantile(sorted, 0.25), sorted_quantile(sorted, 0.5), sorted_quantile(sorted, 0.75)};
  return s;
}

}  // namespace signlink
