#include <cstdio>

#include "jfs/eval/evaluate.hpp"

namespace jfs::eval {
namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string format_details(std::span<const SampleRecord> records) {
  std::string out = "image_id,class_id,iou_coarse,iou_refined,e_coarse,e_refined,verdict,picked_iou,success\n";
  for (const auto& r : records) {
    if (r.excluded()) continue;
    out += r.image_id + "," + std::to_string(r.class_id) + "," + fixed6(r.iou_coarse_true) + "," +
           fixed6(r.iou_refined_true) + "," + fixed6(r.judge->e_coarse) + "," + fixed6(r.judge->e_refined) +
           "," + std::string(judge::verdict_name(r.judge->verdict)) + "," + fixed6(r.picked_iou_true) + "," +
           (r.success ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace jfs::eval
