#include <doctest.h>

#include <stdexcept>

#include "jfs/fss/echo.hpp"
#include "jfs/fss/prototype.hpp"
#include "jfs/maskcore/metrics.hpp"
#include "jfs/simd/kernels.hpp"
#include "jfs/synth/scene.hpp"
#include "support.hpp"

using namespace jfs;
using namespace jfs::fss;

namespace {

RgbImage two_tone(int w, int h, Rgb left, Rgb right, int split) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.set(x, y, x < split ? left : right);
  return img;
}

BinaryMask columns(int w, int h, int x0, int x1) {
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = x0; x < x1; ++x) m.set(x, y);
  return m;
}

class ShapeShifter final : public FssBackend {
 public:
  std::string name() const override { return "test:wrong-size"; }
  bool concurrency_safe() const override { return true; }

 protected:
  BinaryMask do_predict(const RgbImage& q, std::span<const SupportRef>) override {
    return BinaryMask(q.width() + 1, q.height());
  }
};

}  // namespace

TEST_CASE("echo at equal size is a copy") {
  Rng rng(1);
  const auto img = testing::random_image(rng, 9, 5);
  const auto m = testing::random_mask(rng, 9, 5, 0.5);
  const SupportRef s[] = {{img, m}};
  CHECK(echo_predict(img, s) == m);
}

TEST_CASE("echo upsamples 2x2 to 4x4 by the floor rule") {
  const auto m = BinaryMask::from_bytes(2, 2, std::vector<std::uint8_t>{1, 0, 0, 0});
  const auto r = resample_nearest(m, Dims{4, 4});
  CHECK(r.to_bytes() == std::vector<std::uint8_t>{1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("echo matches the per-pixel floor formula on all fixtures") {
  EchoBackend echo;
  for (const auto& f : testing::echo_fixtures()) {
    const SupportRef s[] = {{f.query, f.coarse}};
    const auto out = predict(echo, f.support_image, s);
    CHECK(out == testing::naive_resample(f.coarse, f.support_image.width(), f.support_image.height()));
    CHECK(predict(echo, f.support_image, s) == out);
  }
}

TEST_CASE("prototype separates red from blue exactly") {
  const Rgb red{255, 0, 0}, blue{0, 0, 255};
  const auto support = two_tone(6, 4, red, blue, 3);
  const auto mask = columns(6, 4, 0, 3);
  const auto query = two_tone(8, 8, red, blue, 4);
  const SupportRef s[] = {{support, mask}};
  const auto p = compute_prototypes(PrototypeConfig{}, s);
  CHECK(p.fg[0] == 1.0);
  CHECK(p.fg[2] == 0.0);
  CHECK(p.bg[0] == 0.0);
  CHECK(p.bg[2] == 1.0);
  CHECK(prototype_predict(PrototypeConfig{}, query, s) == columns(8, 8, 0, 4));
}

TEST_CASE("prototype degenerate prompts") {
  Rng rng(2);
  const auto img = testing::random_image(rng, 7, 7);
  const auto query = testing::random_image(rng, 5, 3);
  const BinaryMask none(7, 7);
  const auto all = BinaryMask::full(7, 7);
  const SupportRef empty_prompt[] = {{img, none}};
  const SupportRef full_prompt[] = {{img, all}};
  CHECK(prototype_predict(PrototypeConfig{}, query, empty_prompt).empty());
  CHECK(prototype_predict(PrototypeConfig{}, query, full_prompt) == BinaryMask::full(5, 3));
}

TEST_CASE("exact distance ties go to background") {
  // Prototypes red and green; pure blue is at squared distance 2 from both.
  const auto support = two_tone(4, 1, Rgb{255, 0, 0}, Rgb{0, 255, 0}, 2);
  const SupportRef s[] = {{support, columns(4, 1, 0, 2)}};
  const auto p = compute_prototypes(PrototypeConfig{}, s);
  CHECK(p.fg_count == 2);
  CHECK(p.bg_count == 2);
  const auto blue = two_tone(3, 3, Rgb{0, 0, 255}, Rgb{0, 0, 255}, 0);
  CHECK(prototype_predict(PrototypeConfig{}, blue, s).empty());
  const auto reddish = two_tone(2, 1, Rgb{200, 0, 0}, Rgb{0, 0, 255}, 1);
  CHECK(prototype_predict(PrototypeConfig{}, reddish, s).to_bytes() == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("prototype is invariant to support order and deterministic") {
  Rng rng(3);
  for (double lambda : {0.0, 0.5, 2.0}) {
    const PrototypeConfig cfg{lambda};
    std::vector<SupportPair> pairs;
    for (int i = 0; i < 4; ++i) {
      const int w = 3 + static_cast<int>(rng.below(20)), h = 3 + static_cast<int>(rng.below(20));
      pairs.push_back({testing::random_image(rng, w, h), testing::random_mask(rng, w, h, 0.4)});
    }
    const auto query = testing::random_image(rng, 17, 11);
    std::vector<SupportRef> fwd, rev;
    for (const auto& p : pairs) fwd.push_back(p.ref());
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) rev.push_back(it->ref());
    const auto a = prototype_predict(cfg, query, fwd);
    CHECK(a == prototype_predict(cfg, query, rev));
    CHECK(a == prototype_predict(cfg, query, fwd));
    CHECK(a.dims() == query.dims());
  }
}

TEST_CASE("prototype output is identical under every kernel variant") {
  const auto saved = simd::active().isa;
  Rng rng(4);
  const auto img = testing::random_image(rng, 33, 29);
  const auto mask = testing::random_mask(rng, 33, 29, 0.5);
  const auto query = testing::random_image(rng, 41, 19);
  const SupportRef s[] = {{img, mask}};
  simd::select(simd::Isa::kScalar);
  const auto ref = prototype_predict(PrototypeConfig{0.7}, query, s);
  for (auto isa : simd::available_isas()) {
    simd::select(isa);
    CHECK(prototype_predict(PrototypeConfig{0.7}, query, s) == ref);
  }
  simd::select(saved);
}

TEST_CASE("prompt corruption along a constructed path never helps") {
  // Support and query share a separable scene; the prompt grows into
  // background one column band at a time.
  synth::SceneConfig cfg;
  cfg.num_classes = 2;
  const auto support = synth::generate_scene(11, cfg, 1);
  const auto query = synth::generate_scene(12, cfg, 1);
  const auto sgt = extract_class(support.gt, 1).mask;
  const auto qgt = extract_class(query.gt, 1).mask;
  double prev_prompt = 2.0, prev_pred = 2.0;
  for (int band = 0; band <= support.gt.width(); band += 4) {
    auto prompt = sgt;
    for (int y = 0; y < prompt.height(); ++y)
      for (int x = 0; x < band; ++x) prompt.set(x, y);
    const SupportRef s[] = {{support.image, prompt}};
    const double prompt_iou = iou(prompt, sgt);
    const double pred_iou = iou(prototype_predict(PrototypeConfig{}, query.image, s), qgt);
    CHECK(prompt_iou <= prev_prompt);
    CHECK(pred_iou <= prev_pred);
    prev_prompt = prompt_iou;
    prev_pred = pred_iou;
  }
  CHECK(prev_pred < 1.0);
}

TEST_CASE("predict enforces the backend contract") {
  EchoBackend echo;
  Rng rng(5);
  const auto img = testing::random_image(rng, 4, 4);
  CHECK_THROWS_AS(predict(echo, img, {}), std::invalid_argument);
  const BinaryMask wrong(3, 4);
  const SupportRef bad[] = {{img, wrong}};
  CHECK_THROWS_AS(predict(echo, img, bad), DimensionError);
  ShapeShifter shifter;
  const BinaryMask ok(4, 4);
  const SupportRef good[] = {{img, ok}};
  CHECK_THROWS_AS(predict(shifter, img, good), ContractViolationError);
}

TEST_CASE("builtin backend names and flags") {
  CHECK(EchoBackend{}.name() == "builtin:echo");
  CHECK(PrototypeBackend{}.name() == "builtin:prototype");
  CHECK(EchoBackend{}.concurrency_safe());
  CHECK(PrototypeBackend{}.concurrency_safe());
}
