#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace signlink {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using RawId = std::int64_t;

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// Edge label. The underlying value is the numeric sign.
enum class Sign : std::int8_t { negative = -1, positive = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign flip(Sign s) noexcept { return s == Sign::positive ? Sign::negative : Sign::positive; }
constexpr bool is_negative(Sign s) noexcept { return s == Sign::negative; }

/// Parses -1 / 1 (also accepts "+1"). Throws std::invalid_argument otherwise.
Sign sign_from_int(long v);

/// Which node feature(s) a rule or selection strategy uses.
enum class FeatureSet { trollness, unpleasantness, both };

std::string to_string(FeatureSet f);
FeatureSet feature_set_from_string(const std::string& s);

/// Thrown for malformed user input (files, configs, CLI values).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace signlink
