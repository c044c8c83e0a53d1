#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jfs/image.hpp"
#include "jfs/maskcore/mask.hpp"

namespace jfs::dataio {

// On-disk layout shared by the loader, the synthetic generator and the CLI:
//
//   <root>/images/<id>.png           8-bit RGB
//   <root>/labels/<id>.png           8-bit paletted/gray class ids, 255 = ignore
//   <root>/splits/{train,val}.txt    LF-separated image ids
//   <root>/candidates/<id>_<k>.png   class-agnostic candidate masks, k = 0..L
//   <root>/coarse/<id>_<class>.png   coarse mask per (image, class)
//   <root>/refined/<id>_<class>.png  refined mask per (image, class)
//   <root>/manifest.json             true IoUs, written by the generator
namespace layout {
inline constexpr std::string_view kImages = "images";
inline constexpr std::string_view kLabels = "labels";
inline constexpr std::string_view kSplits = "splits";
inline constexpr std::string_view kCandidates = "candidates";
inline constexpr std::string_view kCoarse = "coarse";
inline constexpr std::string_view kRefined = "refined";
inline constexpr std::string_view kManifest = "manifest.json";

std::string class_mask_name(std::string_view image_id, int class_id);
std::string candidate_name(std::string_view image_id, int k);
}  // namespace layout

enum class Split { kTrain, kVal };
std::string_view split_name(Split split) noexcept;

struct DatasetEntry {
  std::string image_id;
  std::filesystem::path image_path;     // relative to the dataset root
  std::filesystem::path labelmap_path;  // relative to the dataset root
  std::vector<std::uint8_t> classes;    // from the decoded label map

  friend bool operator==(const DatasetEntry&, const DatasetEntry&) = default;
};

struct DatasetIndex {
  std::filesystem::path root;
  Split split = Split::kTrain;
  std::vector<DatasetEntry> entries;

  const DatasetEntry* find(std::string_view image_id) const noexcept;
  std::filesystem::path resolve(const std::filesystem::path& relative) const { return root / relative; }

  friend bool operator==(const DatasetIndex&, const DatasetIndex&) = default;
};

/// Reads splits/<split>.txt and decodes every listed label map.
DatasetIndex load_dataset(const std::filesystem::path& root, Split split);

std::vector<std::string> read_split_file(const std::filesystem::path& path);

struct CandidateBank {
  std::string image_id;
  std::vector<BinaryMask> candidates;
};

/// Loads <dir>/<image_id>_<k>.png for k = 0..L in ascending order. A missing
/// directory or no matching files yields an empty bank.
CandidateBank load_candidate_bank(const std::filesystem::path& dir, std::string_view image_id,
                                  std::optional<Dims> expected = std::nullopt);

/// Files named <image_id>_<n>.png in `dir`, keyed by n ascending.
std::vector<std::pair<int, std::filesystem::path>> list_indexed_masks(
    const std::filesystem::path& dir, std::string_view image_id);

}  // namespace jfs::dataio
