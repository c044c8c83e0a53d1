#include "jfs/dataio/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "jfs/dataio/png.hpp"

namespace fs = std::filesystem;

namespace jfs::dataio {

std::string layout::class_mask_name(std::string_view image_id, int class_id) {
  return std::string(image_id) + "_" + std::to_string(class_id) + ".png";
}

std::string layout::candidate_name(std::string_view image_id, int k) {
  return std::string(image_id) + "_" + std::to_string(k) + ".png";
}

std::string_view split_name(Split split) noexcept { return split == Split::kTrain ? "train" : "val"; }

const DatasetEntry* DatasetIndex::find(std::string_view image_id) const noexcept {
  for (const auto& e : entries)
    if (e.image_id == image_id) return &e;
  return nullptr;
}

std::vector<std::string> read_split_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open split file " + path.string());
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

DatasetIndex load_dataset(const fs::path& root, Split split) {
  DatasetIndex index{root, split, {}};
  const auto ids = read_split_file(root / layout::kSplits / (std::string(split_name(split)) + ".txt"));
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) throw DuplicateEntryError("image id listed twice: " + id);
    DatasetEntry e;
    e.image_id = id;
    e.image_path = fs::path(layout::kImages) / (id + ".png");
    e.labelmap_path = fs::path(layout::kLabels) / (id + ".png");
    if (!fs::exists(root / e.image_path))
      throw MissingEntryError("listed image missing: " + (root / e.image_path).string());
    if (!fs::exists(root / e.labelmap_path))
      throw MissingEntryError("listed label map missing: " + (root / e.labelmap_path).string());
    e.classes = present_classes(load_labels(root / e.labelmap_path));
    index.entries.push_back(std::move(e));
  }
  return index;
}

std::vector<std::pair<int, fs::path>> list_indexed_masks(const fs::path& dir, std::string_view image_id) {
  std::vector<std::pair<int, fs::path>> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  const std::string prefix = std::string(image_id) + "_";
  for (const auto& item : fs::directory_iterator(dir)) {
    if (!item.is_regular_file()) continue;
    const std::string name = item.path().filename().string();
    if (name.size() <= prefix.size() + 4 || name.compare(0, prefix.size(), prefix) != 0) continue;
    if (name.compare(name.size() - 4, 4, ".png") != 0) continue;
    const std::string_view digits(name.data() + prefix.size(), name.size() - prefix.size() - 4);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      continue;
    int k = 0;
    auto [ptr, err] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (err != std::errc{}) continue;
    out.emplace_back(k, item.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

CandidateBank load_candidate_bank(const fs::path& dir, std::string_view image_id,
                                  std::optional<Dims> expected) {
  CandidateBank bank{std::string(image_id), {}};
  const auto files = list_indexed_masks(dir, image_id);
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (files[i].first != static_cast<int>(i))
      throw MissingEntryError("candidate bank for " + std::string(image_id) + " has a gap at k=" +
                              std::to_string(i));
    auto mask = load_mask(files[i].second);
    const Dims want = expected ? *expected : (bank.candidates.empty() ? mask.dims() : bank.candidates.front().dims());
    if (mask.dims() != want)
      throw DimensionError("candidate " + files[i].second.string() + " is " +
                           std::to_string(mask.width()) + "x" + std::to_string(mask.height()) +
                           ", expected " + std::to_string(want.width) + "x" + std::to_string(want.height));
    bank.candidates.push_back(std::move(mask));
  }
  return bank;
}

}  // namespace jfs::dataio
