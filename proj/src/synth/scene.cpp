#include "jfs/synth/scene.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jfs/rng.hpp"

namespace jfs::synth {
namespace {

std::array<double, 3> hsv_to_rgb(double h, double s, double v) {
  const double c = v * s;
  const double hp = h * 6.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = v - c;
  return {r + m, g + m, b + m};
}

bool covers(const Shape& s, int x, int y) {
  if (x < s.x0 || x > s.x1 || y < s.y0 || y > s.y1) return false;
  if (s.kind == ShapeKind::kRect) return true;
  // Pixel centre inside the inscribed ellipse, in exact integer arithmetic:
  // ((2x - x0 - x1) / W)^2 + ((2y - y0 - y1) / H)^2 <= 1.
  const std::int64_t w = s.x1 - s.x0 + 1;
  const std::int64_t h = s.y1 - s.y0 + 1;
  const std::int64_t dx = 2 * x - s.x0 - s.x1;
  const std::int64_t dy = 2 * y - s.y0 - s.y1;
  return dx * dx * h * h + dy * dy * w * w <= w * w * h * h;
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

std::vector<std::array<double, 3>> class_palette(const SceneConfig& config) {
  if (config.num_classes < 1 || config.num_classes > 254)
    throw GenerationError("num_classes must be in [1, 254]");
  std::vector<std::array<double, 3>> colors;
  colors.push_back({0.5, 0.5, 0.5});
  for (int k = 0; k < config.num_classes; ++k)
    colors.push_back(hsv_to_rgb(static_cast<double>(k) / config.num_classes, 0.8, 0.9));
  const double sigma = std::max(config.color_noise_sigma, config.background_texture_sigma);
  for (std::size_t i = 0; i < colors.size(); ++i) {
    for (std::size_t j = i + 1; j < colors.size(); ++j) {
      double d2 = 0;
      for (int c = 0; c < 3; ++c) d2 += (colors[i][c] - colors[j][c]) * (colors[i][c] - colors[j][c]);
      if (std::sqrt(d2) < 4.0 * sigma)
        throw GenerationError("class colours " + std::to_string(i) + " and " + std::to_string(j) +
                              " closer than 4 sigma; reduce num_classes or noise");
    }
  }
  return colors;
}

Scene generate_scene(std::uint64_t seed, const SceneConfig& config,
                     std::optional<std::uint8_t> required_class) {
  const auto palette = class_palette(config);
  const int w = config.width;
  const int h = config.height;
  const int min_side = std::max(3, std::min(w, h) / 6);
  const int max_side = std::max(min_side, std::min(w, h) / 2);
  if (w < min_side || h < min_side || w < 4 || h < 4)
    throw GenerationError("shapes cannot fit in a " + std::to_string(w) + "x" + std::to_string(h) + " frame");
  if (config.shapes_min < 1 || config.shapes_max < config.shapes_min)
    throw GenerationError("invalid shapes_per_image range");
  if (required_class && (*required_class < 1 || *required_class > config.num_classes))
    throw GenerationError("required class out of range");

  Rng rng(seed);
  Scene scene;
  const int count = rng.between(config.shapes_min, config.shapes_max);
  for (int i = 0; i < count; ++i) {
    Shape s;
    s.kind = rng.bernoulli(0.5) ? ShapeKind::kRect : ShapeKind::kEllipse;
    const int sw = rng.between(min_side, max_side);
    const int sh = rng.between(min_side, max_side);
    s.x0 = rng.between(0, w - sw);
    s.y0 = rng.between(0, h - sh);
    s.x1 = s.x0 + sw - 1;
    s.y1 = s.y0 + sh - 1;
    s.class_id = static_cast<std::uint8_t>(rng.between(1, config.num_classes));
    scene.shapes.push_back(s);
  }
  if (required_class) scene.shapes.back().class_id = *required_class;

  scene.gt = LabelMap(w, h, 0);
  for (const auto& s : scene.shapes)
    for (int y = s.y0; y <= s.y1; ++y)
      for (int x = s.x0; x <= s.x1; ++x)
        if (covers(s, x, y)) scene.gt.set(x, y, s.class_id);

  scene.image = RgbImage(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto label = scene.gt.at(x, y);
      const auto& base = palette[label];
      const double sigma = label == 0 ? config.background_texture_sigma : config.color_noise_sigma;
      Rgb c;
      c.r = to_byte(base[0] + sigma * rng.normal());
      c.g = to_byte(base[1] + sigma * rng.normal());
      c.b = to_byte(base[2] + sigma * rng.normal());
      scene.image.set(x, y, c);
    }
  }
  return scene;
}

}  // namespace jfs::synth
