#include "jfs/eval/pairing.hpp"

#include <algorithm>

#include "jfs/dataio/png.hpp"
#include "jfs/rng.hpp"

namespace jfs::eval {

std::vector<std::string> select_support_ids(std::string_view image_id, std::uint8_t class_id,
                                            const dataio::DatasetIndex& pool, int shots,
                                            std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  std::vector<std::string> eligible;
  for (const auto& e : pool.entries) {
    if (e.image_id == image_id) continue;
    if (std::find(e.classes.begin(), e.classes.end(), class_id) != e.classes.end())
      eligible.push_back(e.image_id);
  }
  std::sort(eligible.begin(), eligible.end());
  if (eligible.size() < static_cast<std::size_t>(shots))
    throw SupportPoolError("only " + std::to_string(eligible.size()) + " support images contain class " +
                           std::to_string(class_id) + " (need " + std::to_string(shots) + ") for " +
                           std::string(image_id));
  Rng rng(child_seed(seed, fnv1a(image_id) ^ (static_cast<std::uint64_t>(class_id) << 56)));
  for (std::size_t k = 0; k < static_cast<std::size_t>(shots); ++k) {
    const std::size_t pick = k + rng.below(eligible.size() - k);
    std::swap(eligible[k], eligible[pick]);
  }
  eligible.resize(static_cast<std::size_t>(shots));
  return eligible;
}

SupportPool::SupportPool(dataio::DatasetIndex index) : index_(std::move(index)) {
  loaded_.reserve(index_.entries.size());
  for (const auto& e : index_.entries)
    loaded_.push_back({dataio::load_rgb(index_.resolve(e.image_path)),
                       dataio::load_labels(index_.resolve(e.labelmap_path))});
}

std::vector<fss::SupportPair> SupportPool::pair_support(std::string_view image_id, std::uint8_t class_id,
                                                        int shots, std::uint64_t seed) const {
  std::vector<fss::SupportPair> out;
  for (const auto& id : select_support_ids(image_id, class_id, index_, shots, seed)) {
    std::size_t i = 0;
    while (index_.entries[i].image_id != id) ++i;
    const auto& l = loaded_[i];
    if (l.image.dims() != l.labels.dims())
      throw DimensionError("support " + id + ": image and label map sizes differ");
    out.push_back({l.image, extract_class(l.labels, class_id).mask});
  }
  return out;
}

}  // namespace jfs::eval
