#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "jfs/dataio/dataset.hpp"
#include "jfs/synth/degrade.hpp"
#include "jfs/synth/scene.hpp"

namespace jfs::synth {

struct BenchmarkOptions {
  int val_per_class = 4;    // support-pool images per class
  int granularity = 3;      // oversegmentation parts per region
  int jobs = 1;             // worker threads; output is identical for any value
};

/// Quality band of the better mask of each pair, as IoU against GT.
inline constexpr double kBaseIouLo = 0.75;
inline constexpr double kBaseIouHi = 0.98;

struct ManifestEntry {
  std::string image_id;
  int class_id = 0;
  double iou_coarse_true = 0.0;
  double iou_refined_true = 0.0;
  std::string mode;  // "improve" or "corrupt"

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

SceneConfig default_scene_config();
DegradeConfig default_improve_config();
DegradeConfig default_corrupt_config();

/// Writes a complete dataset tree under `out`: n_samples train queries (one
/// target class each, with coarse/refined masks and a candidate bank), a val
/// support pool, split files and manifest.json. Exactly
/// floor(corrupt_fraction * n_samples) samples have a refined mask strictly
/// worse than the coarse one. Returns the train index.
///
/// `out` must be absent, empty, or a previous benchmark tree (identified by
/// its manifest), whose generated files are replaced.
dataio::DatasetIndex generate_benchmark(std::uint64_t seed, int n_samples, const SceneConfig& scene,
                                        const DegradeConfig& degrade_improve,
                                        const DegradeConfig& degrade_corrupt,
                                        double corrupt_fraction, const std::filesystem::path& out,
                                        const BenchmarkOptions& options = {});

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path);

}  // namespace jfs::synth
