#include <doctest.h>

#include "jfs/fss/echo.hpp"
#include "jfs/fss/prototype.hpp"
#include "jfs/judge/judge.hpp"
#include "jfs/maskcore/metrics.hpp"
#include "jfs/synth/degrade.hpp"
#include "jfs/synth/scene.hpp"
#include "support.hpp"

using namespace jfs;
using namespace jfs::judge;

namespace {

class Failing final : public fss::FssBackend {
 public:
  std::string name() const override { return "test:failing"; }
  bool concurrency_safe() const override { return true; }

 protected:
  BinaryMask do_predict(const RgbImage&, std::span<const fss::SupportRef>) override {
    throw BackendError("out of memory");
  }
};

JudgeCase scene_case(std::uint64_t seed, std::uint8_t cls) {
  synth::SceneConfig cfg;
  const auto q = synth::generate_scene(seed, cfg, cls);
  const auto s = synth::generate_scene(seed + 1000, cfg, cls);
  JudgeCase c;
  c.query = q.image;
  c.class_id = cls;
  c.coarse = extract_class(q.gt, cls).mask;
  c.refined = c.coarse;
  c.supports.push_back({s.image, extract_class(s.gt, cls).mask});
  return c;
}

}  // namespace

TEST_CASE("identical masks tie") {
  fss::PrototypeBackend proto;
  const auto c = scene_case(1, 2);
  const auto r = judge::judge(proto, c);
  CHECK(r.verdict == Verdict::kTie);
  CHECK(r.e_coarse == r.e_refined);
  CHECK(r.per_support_scores.size() == 1);
}

TEST_CASE("accurate refinement of a corrupted mask is recognised") {
  fss::PrototypeBackend proto;
  int refined_better = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto c = scene_case(seed, 1);
    const auto gt = c.coarse;
    // Coarse swallows a large part of the background.
    c.coarse = synth::degrade_to_band(gt, seed, synth::DegradeConfig{synth::DegradeMode::kCorrupt, 2, 1.0, 0, 1}, 0.2, 0.3);
    c.refined = gt;
    const auto r = judge::judge(proto, c);
    CHECK(r.e_refined >= r.e_coarse);
    refined_better += r.verdict == Verdict::kRefinedBetter;
  }
  CHECK(refined_better >= 8);
}

TEST_CASE("refinement that engulfs background is rejected") {
  fss::PrototypeBackend proto;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto c = scene_case(seed, 3);
    auto engulf = c.coarse;
    // Everything in the left half becomes foreground.
    for (int y = 0; y < engulf.height(); ++y)
      for (int x = 0; x < engulf.width() / 2; ++x) engulf.set(x, y);
    c.refined = engulf;
    const auto r = judge::judge(proto, c);
    CHECK(r.verdict == Verdict::kCoarseBetter);
  }
}

TEST_CASE("swapping coarse and refined mirrors the result") {
  fss::PrototypeBackend proto;
  Rng rng(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = scene_case(seed, 1 + seed % 5);
    c.refined = testing::random_mask(rng, c.query.width(), c.query.height(), 0.3);
    auto swapped = c;
    std::swap(swapped.coarse, swapped.refined);
    const auto a = judge::judge(proto, c), b = judge::judge(proto, swapped);
    CHECK(a.e_coarse == b.e_refined);
    CHECK(a.e_refined == b.e_coarse);
    if (a.verdict == Verdict::kTie) CHECK(b.verdict == Verdict::kTie);
    if (a.verdict == Verdict::kRefinedBetter) CHECK(b.verdict == Verdict::kCoarseBetter);
    if (a.verdict == Verdict::kCoarseBetter) CHECK(b.verdict == Verdict::kRefinedBetter);
    CHECK(judge::judge(proto, c) == a);
  }
}

TEST_CASE("identical supports average to the single-support score") {
  fss::PrototypeBackend proto;
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto c = scene_case(seed, 2);
    c.refined = testing::random_mask(rng, c.query.width(), c.query.height(), 0.5);
    const auto one = judge::judge(proto, c);
    for (int n : {2, 3, 5, 7}) {
      auto many = c;
      many.supports.assign(static_cast<std::size_t>(n), c.supports[0]);
      const auto r = judge::judge(proto, many);
      CHECK(r.e_coarse == one.e_coarse);
      CHECK(r.e_refined == one.e_refined);
      CHECK(r.verdict == one.verdict);
    }
  }
}

TEST_CASE("echo backend scores follow the closed form") {
  fss::EchoBackend echo;
  for (const auto& f : testing::echo_fixtures()) {
    JudgeCase c{f.query, f.coarse, f.refined, {{f.support_image, f.support_mask}}, 1};
    const auto r = judge::judge(echo, c);
    const int w = f.support_image.width(), h = f.support_image.height();
    CHECK(r.e_coarse == testing::naive_iou(testing::naive_resample(f.coarse, w, h).to_bytes(), f.support_mask.to_bytes()));
    CHECK(r.e_refined == testing::naive_iou(testing::naive_resample(f.refined, w, h).to_bytes(), f.support_mask.to_bytes()));
  }
}

TEST_CASE("case validation") {
  fss::EchoBackend echo;
  const auto base = scene_case(1, 1);
  auto no_support = base;
  no_support.supports.clear();
  CHECK_THROWS_AS(judge::judge(echo, no_support), CaseError);
  auto bad_dims = base;
  bad_dims.refined = BinaryMask(3, 3);
  CHECK_THROWS_AS(judge::judge(echo, bad_dims), CaseError);
  auto self = base;
  self.supports.push_back({base.query, base.coarse});
  CHECK_THROWS_AS(judge::judge(echo, self), CaseError);
  auto pair_dims = base;
  pair_dims.supports[0].mask = BinaryMask(2, 2);
  CHECK_THROWS_AS(judge::judge(echo, pair_dims), CaseError);
}

TEST_CASE("backend failures name the support index") {
  Failing failing;
  auto c = scene_case(2, 1);
  c.supports.push_back(c.supports[0]);
  try {
    judge::judge(failing, c);
    FAIL("expected BackendError");
  } catch (const BackendError& e) {
    CHECK(std::string(e.what()).find("support 0") != std::string::npos);
    CHECK(std::string(e.what()).find("out of memory") != std::string::npos);
  }
}

TEST_CASE("pick and verdict helpers") {
  const BinaryMask coarse(2, 2), refined = BinaryMask::full(2, 2);
  CHECK(&pick(Verdict::kRefinedBetter, coarse, refined) == &refined);
  CHECK(&pick(Verdict::kCoarseBetter, coarse, refined) == &coarse);
  CHECK(&pick(Verdict::kTie, coarse, refined) == &coarse);
  CHECK(verdict_from_scores(0.5, 0.6) == Verdict::kRefinedBetter);
  CHECK(verdict_from_scores(0.6, 0.5) == Verdict::kCoarseBetter);
  CHECK(verdict_from_scores(0.5, 0.5) == Verdict::kTie);
  for (auto v : {Verdict::kRefinedBetter, Verdict::kCoarseBetter, Verdict::kTie})
    CHECK(parse_verdict(verdict_name(v)) == v);
  CHECK_THROWS_AS(parse_verdict("Maybe"), FormatError);
}
