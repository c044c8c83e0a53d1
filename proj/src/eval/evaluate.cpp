#include "jfs/eval/evaluate.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "jfs/dataio/png.hpp"
#include "jfs/maskcore/metrics.hpp"

namespace fs = std::filesystem;

namespace jfs::eval {
namespace {

bool key_less(const Sample& a, const Sample& b) {
  if (a.image_id != b.image_id) return a.image_id < b.image_id;
  return a.class_id < b.class_id;
}

}  // namespace

std::vector<Sample> load_samples(const dataio::DatasetIndex& train) {
  std::vector<Sample> out;
  const fs::path coarse_dir = train.root / dataio::layout::kCoarse;
  const fs::path refined_dir = train.root / dataio::layout::kRefined;
  for (const auto& entry : train.entries) {
    const auto files = dataio::list_indexed_masks(coarse_dir, entry.image_id);
    if (files.empty()) continue;
    const auto image = dataio::load_rgb(train.resolve(entry.image_path));
    const auto labels = dataio::load_labels(train.resolve(entry.labelmap_path));
    if (image.dims() != labels.dims())
      throw DimensionError(entry.image_id + ": image and label map sizes differ");
    for (const auto& [class_id, coarse_path] : files) {
      if (class_id < 0 || class_id > 255 || class_id == labels.ignore_value())
        throw InvalidClassError(coarse_path.string() + ": class id out of range");
      const fs::path refined_path = refined_dir / coarse_path.filename();
      if (!fs::exists(refined_path)) throw MissingEntryError("no refined mask for " + coarse_path.string());
      Sample s;
      s.image_id = entry.image_id;
      s.class_id = static_cast<std::uint8_t>(class_id);
      s.query = image;
      auto cls = extract_class(labels, s.class_id);
      s.gt = std::move(cls.mask);
      s.valid = std::move(cls.valid);
      s.coarse = dataio::load_mask(coarse_path);
      s.refined = dataio::load_mask(refined_path);
      if (s.coarse.dims() != image.dims() || s.refined.dims() != image.dims())
        throw DimensionError(coarse_path.filename().string() + ": mask size differs from image " + entry.image_id);
      s.iou_coarse_true = masked_iou(s.coarse, s.gt, s.valid);
      s.iou_refined_true = masked_iou(s.refined, s.gt, s.valid);
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

bool success(judge::Verdict verdict, double improvement) noexcept {
  if (verdict == judge::Verdict::kRefinedBetter) return improvement > 0.0;
  return improvement <= 0.0;
}

SampleRecord make_record(const ScoredSample& s, std::optional<judge::JudgeResult> result) {
  SampleRecord r;
  r.image_id = s.image_id;
  r.class_id = s.class_id;
  r.iou_coarse_true = s.iou_coarse_true;
  r.iou_refined_true = s.iou_refined_true;
  r.judge = std::move(result);
  if (r.judge) {
    r.picked_iou_true = r.judge->verdict == judge::Verdict::kRefinedBetter ? r.iou_refined_true : r.iou_coarse_true;
    r.success = success(r.judge->verdict, improvement(s));
  }
  return r;
}

ReportRow fold_group(const std::string& name, std::span<const SampleRecord> records) {
  std::vector<double> coarse, refined, picked, ok;
  for (const auto& r : records) {
    if (r.excluded()) continue;
    coarse.push_back(r.iou_coarse_true);
    refined.push_back(r.iou_refined_true);
    picked.push_back(r.picked_iou_true);
    ok.push_back(r.success ? 1.0 : 0.0);
  }
  if (coarse.empty()) throw EmptyAggregateError("group '" + name + "' has no samples after exclusion");
  ReportRow row;
  row.group = name;
  row.n = coarse.size();
  row.miou_coarse = mean_iou(coarse);
  row.miou_refined = mean_iou(refined);
  row.miou_jfs = mean_iou(picked);
  row.success_rate = mean_iou(ok);
  return row;
}

judge::JudgeResult FssSampleJudge::judge(const Sample& sample) {
  judge::JudgeCase c;
  c.query = sample.query;
  c.coarse = sample.coarse;
  c.refined = sample.refined;
  c.class_id = sample.class_id;
  c.supports = pool_.pair_support(sample.image_id, sample.class_id, shots_, seed_);
  return judge::judge(backend_, c);
}

judge::JudgeResult OracleSampleJudge::judge(const Sample& sample) {
  judge::JudgeResult r;
  r.e_coarse = sample.iou_coarse_true;
  r.e_refined = sample.iou_refined_true;
  r.verdict = judge::verdict_from_scores(r.e_coarse, r.e_refined);
  return r;
}

EvalOutput evaluate_samples(std::span<const Sample> samples, SampleJudge& judge,
                            std::span<const GroupSpec> groups, const EvalOptions& options) {
  std::vector<ScoredSample> scored;
  for (const auto& s : samples) scored.push_back(s.scored());
  const std::size_t class_count = sample_classes(scored).size();

  // Groups are drawn from every sample; excluded members are dropped when
  // the group is folded, so they reach no column, n included.
  std::vector<std::vector<std::size_t>> members;
  std::vector<bool> needed(scored.size(), false);
  for (const auto& g : groups) {
    members.push_back(select_group(scored, g, options.seed));
    for (auto i : members.back()) needed[i] = true;
  }

  std::vector<std::size_t> work;
  for (std::size_t i = 0; i < scored.size(); ++i)
    if (needed[i] && !is_excluded(scored[i].iou_coarse_true, scored[i].iou_refined_true)) work.push_back(i);

  std::vector<std::optional<judge::JudgeResult>> results(scored.size());
  std::vector<std::exception_ptr> errors(work.size());
  const auto run = [&](std::size_t worker, std::size_t stride) {
    for (std::size_t w = worker; w < work.size(); w += stride) {
      const auto& s = samples[work[w]];
      try {
        try {
          results[work[w]] = judge.judge(s);
        } catch (const BackendError& e) {
          throw BackendError("sample " + s.image_id + "/" + std::to_string(s.class_id) + ": " + e.what());
        } catch (const SupportPoolError& e) {
          throw SupportPoolError("sample " + s.image_id + "/" + std::to_string(s.class_id) + ": " + e.what());
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = judge.concurrency_safe() ? static_cast<std::size_t>(std::max(1, options.jobs)) : 1;
  if (jobs <= 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t k = 0; k < jobs; ++k) threads.emplace_back(run, k, jobs);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<SampleRecord> records(scored.size());
  for (std::size_t i = 0; i < scored.size(); ++i)
    if (needed[i]) records[i] = make_record(scored[i], results[i]);

  EvalOutput out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<SampleRecord> group;
    for (auto i : members[g]) group.push_back(records[i]);
    out.report.rows.push_back(fold_group(display_name(groups[g], class_count), group));
  }
  for (std::size_t i = 0; i < scored.size(); ++i)
    if (needed[i]) out.details.push_back(records[i]);
  return out;
}

EvalOutput evaluate(const fs::path& root, fss::FssBackend& backend, std::span<const GroupSpec> groups,
                    const EvalOptions& options) {
  const auto train = dataio::load_dataset(root, dataio::Split::kTrain);
  const SupportPool pool(dataio::load_dataset(root, dataio::Split::kVal));
  const auto samples = load_samples(train);
  FssSampleJudge judge(backend, pool, options.shots, options.seed);
  return evaluate_samples(samples, judge, groups, options);
}

}  // namespace jfs::eval
