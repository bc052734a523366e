#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "signlink/types.hpp"

namespace signlink {

/// Edge-indexed split of labels into observed (training/queried) and hidden.
class TrainMask {
 public:
  TrainMask() = default;
  explicit TrainMask(std::size_t edge_count, bool observed = false) : bits_(edge_count, observed ? 1 : 0) {}

  static TrainMask from_edges(std::size_t edge_count, std::span<const EdgeId> observed) {
    TrainMask m(edge_count);
    for (EdgeId e : observed) m.set(e);
    return m;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool observed(EdgeId e) const noexcept { return bits_[e] != 0; }
  void set(EdgeId e, bool value = true) { bits_.at(e) = value ? 1 : 0; }

  std::size_t observed_count() const noexcept {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
  }
  std::vector<EdgeId> observed_edges() const { return collect(true); }
  std::vector<EdgeId> hidden_edges() const { return collect(false); }

  friend bool operator==(const TrainMask&, const TrainMask&) = default;

 private:
  std::vector<EdgeId> collect(bool want) const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < bits_.size(); ++e)
      if ((bits_[e] != 0) == want) out.push_back(e);
    return out;
  }

  std::vector<std::uint8_t> bits_;
};

}  // namespace signlink
