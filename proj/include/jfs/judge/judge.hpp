#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "jfs/fss/backend.hpp"

namespace jfs::judge {

enum class Verdict { kRefinedBetter, kCoarseBetter, kTie };

std::string_view verdict_name(Verdict v) noexcept;
Verdict parse_verdict(std::string_view name);

/// One judging unit. The query image with each candidate mask becomes the
/// prompt; each support image is segmented and scored against its trusted
/// mask.
struct JudgeCase {
  RgbImage query;
  BinaryMask coarse;
  BinaryMask refined;
  std::vector<fss::SupportPair> supports;
  std::uint8_t class_id = 0;
};

struct JudgeResult {
  double e_coarse = 0.0;
  double e_refined = 0.0;
  Verdict verdict = Verdict::kTie;
  std::vector<std::pair<double, double>> per_support_scores;  // (E_c_i, E_r_i)

  friend bool operator==(const JudgeResult&, const JudgeResult&) = default;
};

/// Throws CaseError when dimensions disagree, supports are empty, or a
/// support image is pixel-identical to the query.
void validate(const JudgeCase& c);

Verdict verdict_from_scores(double e_coarse, double e_refined) noexcept;

/// For each support i: prompt with (query, coarse) and (query, refined),
/// segment the support image, score both predictions against the support
/// mask by IoU, then average over supports. Backend failures are rethrown as
/// BackendError naming the support index.
JudgeResult judge(fss::FssBackend& backend, const JudgeCase& c);

/// Refined on RefinedBetter; coarse on CoarseBetter or Tie.
const BinaryMask& pick(Verdict verdict, const BinaryMask& coarse, const BinaryMask& refined) noexcept;

}  // namespace jfs::judge
