#include "jfs/refine/refine.hpp"

#include <stdexcept>
#include <string>

#include "jfs/maskcore/metrics.hpp"

namespace jfs::refine {

std::vector<Assignment> assign_candidates(const ClassMaskMap& coarse, const dataio::CandidateBank& bank) {
  std::optional<Dims> dims;
  for (const auto& [k, m] : coarse) {
    if (dims && m.dims() != *dims) throw DimensionError("coarse masks differ in size");
    dims = m.dims();
  }
  std::vector<Assignment> out;
  out.reserve(bank.candidates.size());
  for (std::size_t l = 0; l < bank.candidates.size(); ++l) {
    const auto& candidate = bank.candidates[l];
    if (dims && candidate.dims() != *dims)
      throw DimensionError("candidate " + std::to_string(l) + " does not match the coarse mask size");
    Assignment a;
    a.candidate_index = l;
    std::size_t best = 0;
    for (const auto& [k, m] : coarse) {
      const std::size_t overlap = intersection_area(candidate, m);
      a.overlap_by_class[k] = overlap;
      if (overlap > best) {  // strict: earlier (lower) class wins ties
        best = overlap;
        a.assigned_class = k;
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

ClassMaskMap select_and_merge(const std::vector<Assignment>& assignments,
                            const dataio::CandidateBank& bank, const ClassMaskMap& coarse,
                            const RefineConfig& config) {
  if (!(config.min_overlap_fraction >= 0.0 && config.min_overlap_fraction <= 1.0))
    throw std::invalid_argument("min_overlap_fraction must be in [0, 1]");
  std::map<std::uint8_t, std::optional<BinaryMask>> merged;
  for (const auto& a : assignments) {
    if (a.discarded()) continue;
    const auto& candidate = bank.candidates.at(a.candidate_index);
    const auto k = *a.assigned_class;
    const double area = static_cast<double>(candidate.area());
    const double fraction = static_cast<double>(a.overlap_by_class.at(k)) / area;
    if (fraction < config.min_overlap_fraction) continue;
    auto& slot = merged[k];
    slot = slot ? mask_or(*slot, candidate) : candidate;
  }
  ClassMaskMap out;
  for (const auto& [k, m] : coarse) {
    auto it = merged.find(k);
    out.emplace(k, it != merged.end() && it->second ? *it->second : m);
  }
  return out;
}

ClassMaskMap refine(const ClassMaskMap& coarse, const dataio::CandidateBank& bank, const RefineConfig& config) {
  return select_and_merge(assign_candidates(coarse, bank), bank, coarse, config);
}

}  // namespace jfs::refine
