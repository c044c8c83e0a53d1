#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jfs/dataio/dataset.hpp"
#include "jfs/dataio/report.hpp"
#include "jfs/eval/groups.hpp"
#include "jfs/eval/pairing.hpp"
#include "jfs/judge/judge.hpp"

namespace jfs::eval {

/// One (query image, class) unit with everything needed to judge and score it.
struct Sample {
  std::string image_id;
  std::uint8_t class_id = 0;
  RgbImage query;
  BinaryMask gt;
  BinaryMask valid;
  BinaryMask coarse;
  BinaryMask refined;
  double iou_coarse_true = 0.0;
  double iou_refined_true = 0.0;

  ScoredSample scored() const { return {image_id, class_id, iou_coarse_true, iou_refined_true}; }
};

/// Samples of a train split: every coarse/<id>_<class>.png with its refined
/// counterpart. True IoUs are recomputed against the label maps with ignore
/// pixels excluded. Sorted by (image_id, class_id).
std::vector<Sample> load_samples(const dataio::DatasetIndex& train);

struct SampleRecord {
  std::string image_id;
  std::uint8_t class_id = 0;
  double iou_coarse_true = 0.0;
  double iou_refined_true = 0.0;
  std::optional<judge::JudgeResult> judge;  // empty for excluded samples
  double picked_iou_true = 0.0;
  bool success = false;

  bool excluded() const noexcept { return !judge.has_value(); }
};

/// Samples where both masks miss the object entirely are not judged and do
/// not count anywhere.
inline bool is_excluded(double iou_coarse_true, double iou_refined_true) noexcept {
  return iou_coarse_true == 0.0 && iou_refined_true == 0.0;
}

/// A verdict is correct when it certifies a real improvement, or declines to
/// certify (CoarseBetter or Tie) when there was none.
bool success(judge::Verdict verdict, double improvement) noexcept;

/// Completes a record from its judge result: picked IoU and success flag.
SampleRecord make_record(const ScoredSample& s, std::optional<judge::JudgeResult> result);

/// Folds one group into a report row; excluded records are skipped entirely.
/// Throws EmptyAggregateError when nothing remains.
ReportRow fold_group(const std::string& name, std::span<const SampleRecord> records);

/// Produces a verdict for a sample.
class SampleJudge {
 public:
  virtual ~SampleJudge() = default;
  virtual judge::JudgeResult judge(const Sample& sample) = 0;
  virtual bool concurrency_safe() const = 0;
};

/// Role-inverted FSS judging against pool supports.
class FssSampleJudge final : public SampleJudge {
 public:
  FssSampleJudge(fss::FssBackend& backend, const SupportPool& pool, int shots, std::uint64_t seed)
      : backend_(backend), pool_(pool), shots_(shots), seed_(seed) {}
  judge::JudgeResult judge(const Sample& sample) override;
  bool concurrency_safe() const override { return backend_.concurrency_safe(); }

 private:
  fss::FssBackend& backend_;
  const SupportPool& pool_;
  int shots_;
  std::uint64_t seed_;
};

/// Verdict from the true IoUs: the best any judge could do.
class OracleSampleJudge final : public SampleJudge {
 public:
  judge::JudgeResult judge(const Sample& sample) override;
  bool concurrency_safe() const override { return true; }
};

struct EvalOptions {
  int shots = 1;
  std::uint64_t seed = 42;
  int jobs = 1;
};

struct EvalOutput {
  EvalReport report;
  std::vector<SampleRecord> details;  // judged + excluded members of any group, by key
};

/// Selects every group over all samples, judges the non-excluded members of
/// their union once, and folds each group in argument order. Parallel judging is only used
/// when the judge is concurrency safe; output never depends on `jobs`.
EvalOutput evaluate_samples(std::span<const Sample> samples, SampleJudge& judge,
                            std::span<const GroupSpec> groups, const EvalOptions& options);

/// Full harness over a dataset root: queries from the train split, supports
/// from the val split.
EvalOutput evaluate(const std::filesystem::path& root, fss::FssBackend& backend,
                    std::span<const GroupSpec> groups, const EvalOptions& options);

/// details.csv: image_id,class_id,iou_coarse,iou_refined,e_coarse,e_refined,verdict,picked_iou,success
std::string format_details(std::span<const SampleRecord> records);

}  // namespace jfs::eval
