#include "jfs/judge/judge.hpp"

#include <string>

#include "jfs/maskcore/metrics.hpp"

namespace jfs::judge {

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::kRefinedBetter:
      return "RefinedBetter";
    case Verdict::kCoarseBetter:
      return "CoarseBetter";
    case Verdict::kTie:
      return "Tie";
  }
  return "Tie";
}

Verdict parse_verdict(std::string_view name) {
  if (name == "RefinedBetter") return Verdict::kRefinedBetter;
  if (name == "CoarseBetter") return Verdict::kCoarseBetter;
  if (name == "Tie") return Verdict::kTie;
  throw FormatError("unknown verdict '" + std::string(name) + "'");
}

void validate(const JudgeCase& c) {
  if (c.coarse.dims() != c.query.dims() || c.refined.dims() != c.query.dims())
    throw CaseError("coarse and refined masks must match the query image size");
  if (c.supports.empty()) throw CaseError("judging needs at least one support pair");
  for (std::size_t i = 0; i < c.supports.size(); ++i) {
    const auto& s = c.supports[i];
    if (s.image.dims() != s.mask.dims())
      throw CaseError("support " + std::to_string(i) + ": image and mask sizes differ");
    if (s.image == c.query) throw CaseError("support " + std::to_string(i) + " is the query image itself");
  }
}

Verdict verdict_from_scores(double e_coarse, double e_refined) noexcept {
  if (e_refined > e_coarse) return Verdict::kRefinedBetter;
  if (e_coarse > e_refined) return Verdict::kCoarseBetter;
  return Verdict::kTie;
}

JudgeResult judge(fss::FssBackend& backend, const JudgeCase& c) {
  validate(c);
  JudgeResult r;
  // Extended-precision sums: n identical scores average back to that score.
  long double sum_c = 0.0L;
  long double sum_r = 0.0L;
  const fss::SupportRef coarse_prompt[] = {{c.query, c.coarse}};
  const fss::SupportRef refined_prompt[] = {{c.query, c.refined}};
  for (std::size_t i = 0; i < c.supports.size(); ++i) {
    const auto& s = c.supports[i];
    try {
      const auto smp_c = fss::predict(backend, s.image, coarse_prompt);
      const auto smp_r = fss::predict(backend, s.image, refined_prompt);
      const double ec = iou(smp_c, s.mask);
      const double er = iou(smp_r, s.mask);
      r.per_support_scores.emplace_back(ec, er);
      sum_c += ec;
      sum_r += er;
    } catch (const BackendError& e) {
      throw BackendError("support " + std::to_string(i) + ": " + e.what());
    }
  }
  const auto n = static_cast<long double>(c.supports.size());
  r.e_coarse = static_cast<double>(sum_c / n);
  r.e_refined = static_cast<double>(sum_r / n);
  r.verdict = verdict_from_scores(r.e_coarse, r.e_refined);
  return r;
}

const BinaryMask& pick(Verdict verdict, const BinaryMask& coarse, const BinaryMask& refined) noexcept {
  return verdict == Verdict::kRefinedBetter ? refined : coarse;
}

}  // namespace jfs::judge
