#pragma once

#include <array>
#include <span>

#include "jfs/fss/backend.hpp"

namespace jfs::fss {

struct PrototypeConfig {
  // Weight of the normalised (x, y) position in the feature vector.
  double spatial_weight = 0.0;
};

/// Mean feature vector (r, g, b, λx/W, λy/H) of the support foreground and
/// background pixels, pooled over all shots.
struct Prototypes {
  std::array<double, 5> fg{};
  std::array<double, 5> bg{};
  std::size_t fg_count = 0;
  std::size_t bg_count = 0;
};

/// Pooled means. Colour sums are exact integers and per-shot position
/// contributions are summed in sorted order, so the result does not depend
/// on the order of the support pairs.
Prototypes compute_prototypes(const PrototypeConfig& config, std::span<const SupportRef> support);

/// Nearest-mean segmentation: a query pixel is foreground iff its squared
/// distance to the foreground prototype is strictly smaller than to the
/// background one. No support foreground gives an empty mask; no support
/// background gives a full mask.
BinaryMask prototype_predict(const PrototypeConfig& config, const RgbImage& query,
                             std::span<const SupportRef> support);

class PrototypeBackend final : public FssBackend {
 public:
  explicit PrototypeBackend(PrototypeConfig config = {});
  std::string name() const override { return "builtin:prototype"; }
  bool concurrency_safe() const override { return true; }
  const PrototypeConfig& config() const noexcept { return config_; }

 protected:
  BinaryMask do_predict(const RgbImage& query, std::span<const SupportRef> support) override {
    return prototype_predict(config_, query, support);
  }

 private:
  PrototypeConfig config_;
};

}  // namespace jfs::fss
