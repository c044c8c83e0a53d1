#include "jfs/maskcore/metrics.hpp"

#include <string>

#include "jfs/simd/kernels.hpp"

namespace jfs {
namespace {

void require_same_dims(const BinaryMask& a, const BinaryMask& b, const char* what) {
  if (a.dims() != b.dims())
    throw DimensionError(std::string(what) + ": " + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()));
}

double ratio(std::uint64_t inter, std::uint64_t uni) {
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
  require_same_dims(a, b, "mask_and");
  BinaryMask out(a.dims());
  simd::active().bit_and(a.words().data(), b.words().data(), out.mutable_words().data(),
                         a.words().size());
  return out;
}

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
  require_same_dims(a, b, "mask_or");
  BinaryMask out(a.dims());
  simd::active().bit_or(a.words().data(), b.words().data(), out.mutable_words().data(),
                        a.words().size());
  return out;
}

std::size_t intersection_area(const BinaryMask& a, const BinaryMask& b) {
  require_same_dims(a, b, "intersection_area");
  return simd::active().popcount_and(a.words().data(), b.words().data(), a.words().size());
}

MaskAlgebra mask_algebra(const BinaryMask& a, const BinaryMask& b) {
  require_same_dims(a, b, "mask_algebra");
  MaskAlgebra out;
  out.intersection = mask_and(a, b);
  out.union_ = mask_or(a, b);
  out.a_area = a.area();
  out.b_area = b.area();
  out.intersection_area = out.intersection.area();
  out.union_area = out.union_.area();
  return out;
}

double iou(const BinaryMask& a, const BinaryMask& b) {
  require_same_dims(a, b, "iou");
  const auto& k = simd::active();
  const auto n = a.words().size();
  return ratio(k.popcount_and(a.words().data(), b.words().data(), n),
               k.popcount_or(a.words().data(), b.words().data(), n));
}

double masked_iou(const BinaryMask& pred, const BinaryMask& gt, const BinaryMask& valid) {
  require_same_dims(pred, gt, "masked_iou");
  require_same_dims(pred, valid, "masked_iou valid region");
  if (valid.empty()) throw UndefinedRegionError("masked_iou: valid region is empty");
  const auto& k = simd::active();
  const auto n = pred.words().size();
  const auto* p = pred.words().data();
  const auto* g = gt.words().data();
  const auto* v = valid.words().data();
  return ratio(k.popcount_and_masked(p, g, v, n), k.popcount_or_masked(p, g, v, n));
}

double mean_iou(std::span<const double> values) {
  if (values.empty()) throw EmptyAggregateError("mean_iou of an empty list");
  long double sum = 0.0L;
  for (double v : values) sum += v;
  return static_cast<double>(sum / static_cast<long double>(values.size()));
}

}  // namespace jfs
