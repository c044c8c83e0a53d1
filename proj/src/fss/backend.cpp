#include "jfs/fss/backend.hpp"

#include <stdexcept>
#include <string>

namespace jfs::fss {

BinaryMask predict(FssBackend& backend, const RgbImage& query, std::span<const SupportRef> support) {
  if (support.empty()) throw std::invalid_argument("predict needs at least one support pair");
  for (std::size_t i = 0; i < support.size(); ++i)
    if (support[i].image.dims() != support[i].mask.dims())
      throw DimensionError("support pair " + std::to_string(i) + ": image and mask sizes differ");
  BinaryMask out = backend.do_predict(query, support);
  if (out.dims() != query.dims())
    throw ContractViolationError("backend '" + backend.name() + "' returned a " +
                                 std::to_string(out.width()) + "x" + std::to_string(out.height()) +
                                 " mask for a " + std::to_string(query.width()) + "x" +
                                 std::to_string(query.height()) + " query");
  return out;
}

}  // namespace jfs::fss
