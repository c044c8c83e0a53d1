#pragma once

#include <span>

#include "jfs/fss/backend.hpp"

namespace jfs::fss {

/// Nearest-neighbour resample: src = floor(dst * src_dim / dst_dim) per axis.
BinaryMask resample_nearest(const BinaryMask& mask, Dims target);

/// Returns support[0].mask resampled to the query's dimensions.
BinaryMask echo_predict(const RgbImage& query, std::span<const SupportRef> support);

class EchoBackend final : public FssBackend {
 public:
  std::string name() const override { return "builtin:echo"; }
  bool concurrency_safe() const override { return true; }

 protected:
  BinaryMask do_predict(const RgbImage& query, std::span<const SupportRef> support) override {
    return echo_predict(query, support);
  }
};

}  // namespace jfs::fss
