#pragma once

#include <span>
#include <string>

#include "jfs/image.hpp"
#include "jfs/maskcore/mask.hpp"

namespace jfs::fss {

/// Non-owning (image, mask) prompt. Dimensions must match.
struct SupportRef {
  const RgbImage& image;
  const BinaryMask& mask;
};

/// Owning (image, mask) prompt.
struct SupportPair {
  RgbImage image;
  BinaryMask mask;

  SupportRef ref() const noexcept { return {image, mask}; }
};

/// A few-shot segmentation oracle: segments `query` given annotated support
/// pairs. Identical inputs must give identical masks.
class FssBackend {
 public:
  virtual ~FssBackend() = default;

  virtual std::string name() const = 0;
  /// Whether predict may be called concurrently on one instance.
  virtual bool concurrency_safe() const = 0;

 protected:
  friend BinaryMask predict(FssBackend&, const RgbImage&, std::span<const SupportRef>);
  virtual BinaryMask do_predict(const RgbImage& query, std::span<const SupportRef> support) = 0;
};

/// Validates the prompt, calls the backend, and checks the returned mask has
/// the query's dimensions (ContractViolationError otherwise).
BinaryMask predict(FssBackend& backend, const RgbImage& query, std::span<const SupportRef> support);

}  // namespace jfs::fss
