#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jfs/dataio/dataset.hpp"
#include "jfs/fss/backend.hpp"

namespace jfs::eval {

/// Ids of `shots` pool images containing `class_id`, excluding the query
/// image itself, drawn without replacement. Deterministic in (seed,
/// image_id, class_id) and independent of evaluation order. Throws
/// SupportPoolError when fewer than `shots` images qualify.
std::vector<std::string> select_support_ids(std::string_view image_id, std::uint8_t class_id,
                                            const dataio::DatasetIndex& pool, int shots,
                                            std::uint64_t seed);

/// The support split held in memory: images plus label maps, so pairing can
/// hand out (image, class mask) pairs without touching the disk again.
class SupportPool {
 public:
  explicit SupportPool(dataio::DatasetIndex index);

  const dataio::DatasetIndex& index() const noexcept { return index_; }

  /// Support pairs for one (image, class) sample; masks come from
  /// extract_class on the pool image's label map.
  std::vector<fss::SupportPair> pair_support(std::string_view image_id, std::uint8_t class_id,
                                             int shots, std::uint64_t seed) const;

 private:
  struct Loaded {
    RgbImage image;
    LabelMap labels;
  };
  dataio::DatasetIndex index_;
  std::vector<Loaded> loaded_;  // parallel to index_.entries
};

}  // namespace jfs::eval
