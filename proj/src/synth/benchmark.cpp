#include "jfs/synth/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "jfs/dataio/png.hpp"
#include "jfs/maskcore/metrics.hpp"
#include "jfs/rng.hpp"
#include "jfs/synth/oversegment.hpp"

namespace fs = std::filesystem;

namespace jfs::synth {
namespace {

// Independent seed streams under the benchmark seed.
constexpr std::uint64_t kTrainStream = 0x7472616eULL;
constexpr std::uint64_t kValStream = 0x76616cULL;
constexpr std::uint64_t kCorruptStream = 0x636f7272ULL;

constexpr double kStrictGap = 1e-6;

std::string numbered(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%04d", prefix, i);
  return buf;
}

struct TrainSample {
  Scene scene;
  BinaryMask coarse;
  BinaryMask refined;
  dataio::CandidateBank bank;
  ManifestEntry manifest;
};

DegradeConfig base_config() {
  DegradeConfig c;
  c.mode = DegradeMode::kMarginal;
  c.boundary_jitter_radius = 1;
  c.blob_rate = 0.5;
  return c;
}

TrainSample make_train_sample(std::uint64_t seed, int index, bool corrupt, const SceneConfig& scene_cfg,
                              const DegradeConfig& improve, const DegradeConfig& corrupt_cfg,
                              int granularity) {
  const std::uint64_t s = child_seed(seed ^ kTrainStream, static_cast<std::uint64_t>(index));
  const auto class_id = static_cast<std::uint8_t>(index % scene_cfg.num_classes + 1);
  TrainSample t;
  t.scene = generate_scene(child_seed(s, 0), scene_cfg, class_id);
  const BinaryMask gt = extract_class(t.scene.gt, class_id).mask;

  const BinaryMask better = degrade_to_band(gt, child_seed(s, 1), base_config(), kBaseIouLo, kBaseIouHi);
  const double b = iou(better, gt);
  const DegradeConfig& cfg = corrupt ? corrupt_cfg : improve;
  const double lo = std::max(0.0, b - cfg.gap_hi);
  const double hi = b - (corrupt ? std::max(cfg.gap_lo, kStrictGap) : cfg.gap_lo);
  if (hi < lo) throw GenerationError("gap band unreachable below base IoU " + std::to_string(b));
  BinaryMask worse = degrade_to_band(gt, child_seed(s, 2), cfg, lo, hi);

  t.coarse = corrupt ? better : worse;
  t.refined = corrupt ? std::move(worse) : better;
  t.bank = oversegment(t.scene.gt, child_seed(s, 3), granularity);
  t.manifest.image_id = numbered("train", index);
  t.bank.image_id = t.manifest.image_id;
  t.manifest.class_id = class_id;
  t.manifest.iou_coarse_true = iou(t.coarse, gt);
  t.manifest.iou_refined_true = iou(t.refined, gt);
  t.manifest.mode = corrupt ? "corrupt" : "improve";
  return t;
}

void write_png(const fs::path& path, const dataio::Bytes& bytes) { dataio::write_file(path, bytes); }

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  dataio::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// Runs fn(i) for i in [0, n) on `jobs` threads; rethrows the first failure
// by index so the error reported does not depend on scheduling.
template <class Fn>
void parallel_for(int n, int jobs, Fn fn) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  const auto run = [&](int worker) {
    for (int i = worker; i < n; i += jobs) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    run(0);
    jobs = 1;
  } else {
    std::vector<std::thread> threads;
    for (int k = 0; k < jobs; ++k) threads.emplace_back(run, k);
    for (auto& th : threads) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void prepare_output(const fs::path& out) {
  if (fs::exists(out)) {
    if (!fs::is_directory(out)) throw IoError(out.string() + " exists and is not a directory");
    const bool empty = fs::directory_iterator(out) == fs::directory_iterator();
    if (!empty && !fs::exists(out / dataio::layout::kManifest))
      throw IoError(out.string() + " is not empty and holds no benchmark manifest");
    for (auto sub : {dataio::layout::kImages, dataio::layout::kLabels, dataio::layout::kSplits,
                     dataio::layout::kCandidates, dataio::layout::kCoarse, dataio::layout::kRefined})
      fs::remove_all(out / sub);
    fs::remove(out / dataio::layout::kManifest);
  }
  for (auto sub : {dataio::layout::kImages, dataio::layout::kLabels, dataio::layout::kSplits,
                   dataio::layout::kCandidates, dataio::layout::kCoarse, dataio::layout::kRefined})
    fs::create_directories(out / sub);
}

}  // namespace

SceneConfig default_scene_config() { return SceneConfig{}; }

DegradeConfig default_improve_config() {
  DegradeConfig c;
  c.mode = DegradeMode::kImprove;
  c.boundary_jitter_radius = 2;
  c.blob_rate = 1.0;
  c.gap_lo = 0.0;
  c.gap_hi = 0.6;
  return c;
}

DegradeConfig default_corrupt_config() {
  DegradeConfig c;
  c.mode = DegradeMode::kCorrupt;
  c.boundary_jitter_radius = 2;
  c.blob_rate = 1.0;
  c.gap_lo = 0.0;
  c.gap_hi = 0.6;
  return c;
}

dataio::DatasetIndex generate_benchmark(std::uint64_t seed, int n_samples, const SceneConfig& scene,
                                        const DegradeConfig& degrade_improve,
                                        const DegradeConfig& degrade_corrupt,
                                        double corrupt_fraction, const fs::path& out,
                                        const BenchmarkOptions& options) {
  if (!(corrupt_fraction >= 0.0 && corrupt_fraction <= 1.0))
    throw std::invalid_argument("corrupt_fraction must be in [0, 1]");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (options.val_per_class < 1) throw std::invalid_argument("val_per_class must be >= 1");
  class_palette(scene);  // validates colour separation up front

  // Which samples get a corrupted refinement.
  const int n_corrupt = static_cast<int>(std::floor(corrupt_fraction * n_samples + 1e-9));
  std::vector<int> order(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) order[static_cast<std::size_t>(i)] = i;
  Rng(seed ^ kCorruptStream).shuffle(order.begin(), order.end());
  std::vector<bool> corrupt(static_cast<std::size_t>(n_samples), false);
  for (int k = 0; k < n_corrupt; ++k) corrupt[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = true;

  prepare_output(out);
  const int jobs = std::max(1, options.jobs);

  std::vector<ManifestEntry> manifest(static_cast<std::size_t>(n_samples));
  parallel_for(n_samples, jobs, [&](int i) {
    auto t = make_train_sample(seed, i, corrupt[static_cast<std::size_t>(i)], scene, degrade_improve,
                               degrade_corrupt, options.granularity);
    const auto& id = t.manifest.image_id;
    write_png(out / dataio::layout::kImages / (id + ".png"), dataio::encode_rgb_png(t.scene.image));
    write_png(out / dataio::layout::kLabels / (id + ".png"), dataio::encode_label_png(t.scene.gt));
    const auto mask_name = dataio::layout::class_mask_name(id, t.manifest.class_id);
    write_png(out / dataio::layout::kCoarse / mask_name, dataio::encode_mask_png(t.coarse));
    write_png(out / dataio::layout::kRefined / mask_name, dataio::encode_mask_png(t.refined));
    for (std::size_t k = 0; k < t.bank.candidates.size(); ++k)
      write_png(out / dataio::layout::kCandidates / dataio::layout::candidate_name(id, static_cast<int>(k)),
                dataio::encode_mask_png(t.bank.candidates[k]));
    manifest[static_cast<std::size_t>(i)] = t.manifest;
  });

  const int n_val = options.val_per_class * scene.num_classes;
  parallel_for(n_val, jobs, [&](int j) {
    const auto class_id = static_cast<std::uint8_t>(j % scene.num_classes + 1);
    const auto s = generate_scene(child_seed(seed ^ kValStream, static_cast<std::uint64_t>(j)), scene, class_id);
    const auto id = numbered("val", j);
    write_png(out / dataio::layout::kImages / (id + ".png"), dataio::encode_rgb_png(s.image));
    write_png(out / dataio::layout::kLabels / (id + ".png"), dataio::encode_label_png(s.gt));
  });

  std::vector<std::string> train_ids, val_ids;
  for (int i = 0; i < n_samples; ++i) train_ids.push_back(numbered("train", i));
  for (int j = 0; j < n_val; ++j) val_ids.push_back(numbered("val", j));
  write_lines(out / dataio::layout::kSplits / "train.txt", train_ids);
  write_lines(out / dataio::layout::kSplits / "val.txt", val_ids);
  write_manifest(manifest, out / dataio::layout::kManifest);

  return dataio::load_dataset(out, dataio::Split::kTrain);
}

void write_manifest(const std::vector<ManifestEntry>& entries, const fs::path& path) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    doc.push_back({{"image_id", e.image_id},
                   {"class_id", e.class_id},
                   {"iou_coarse_true", e.iou_coarse_true},
                   {"iou_refined_true", e.iou_refined_true},
                   {"mode", e.mode}});
  }
  const auto text = doc.dump(2) + "\n";
  dataio::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  const auto bytes = dataio::read_file(path);
  std::vector<ManifestEntry> out;
  try {
    const auto doc = nlohmann::json::parse(bytes.begin(), bytes.end());
    for (const auto& j : doc) {
      ManifestEntry e;
      e.image_id = j.at("image_id").get<std::string>();
      e.class_id = j.at("class_id").get<int>();
      e.iou_coarse_true = j.at("iou_coarse_true").get<double>();
      e.iou_refined_true = j.at("iou_refined_true").get<double>();
      e.mode = j.at("mode").get<std::string>();
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return out;
}

}  // namespace jfs::synth
