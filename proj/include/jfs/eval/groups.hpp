#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jfs/error.hpp"

namespace jfs::eval {

/// Per-sample quantities the selection rules look at.
struct ScoredSample {
  std::string image_id;
  std::uint8_t class_id = 0;
  double iou_coarse_true = 0.0;
  double iou_refined_true = 0.0;
};

/// IoU(refined) - IoU(coarse) against the query ground truth.
inline double improvement(double iou_coarse_true, double iou_refined_true) noexcept {
  return iou_refined_true - iou_coarse_true;
}
inline double improvement(const ScoredSample& s) noexcept {
  return improvement(s.iou_coarse_true, s.iou_refined_true);
}

struct GroupSpec {
  enum class Kind { kRandomStratified, kTopK, kBottomK, kTopBottom };
  Kind kind = Kind::kTopK;
  int k = 1;
  int per_class = 1;
  std::optional<int> expected_classes;  // random groups: class count to insist on
  std::string name;                     // empty = derived (see display_name)

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Parses one token: "top:K", "bottom:K", "topbottom:K", "random:P" or
/// "random:PxC", optionally prefixed by "name=". Throws GroupError.
GroupSpec parse_group(std::string_view token);
/// Comma-separated list of tokens.
std::vector<GroupSpec> parse_groups(std::string_view text);

/// Row name: the explicit name, else topK / bottomK / topbottomK /
/// random<P * classes>.
std::string display_name(const GroupSpec& spec, std::size_t class_count);

/// Indices into `samples` making up the group, sorted ascending by
/// (image_id, class_id). Top/bottom sort by improvement (descending /
/// ascending), ties by (image_id, class_id). Random groups draw per_class
/// samples of every class without replacement, seeded. Throws GroupError
/// when the pool is too small.
std::vector<std::size_t> select_group(std::span<const ScoredSample> samples, const GroupSpec& spec,
                                      std::uint64_t seed);

/// Distinct class ids in `samples`, ascending.
std::vector<std::uint8_t> sample_classes(std::span<const ScoredSample> samples);

}  // namespace jfs::eval
