#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "jfs/image.hpp"
#include "jfs/maskcore/mask.hpp"

namespace jfs::synth {

struct SceneConfig {
  int width = 64;
  int height = 64;
  int num_classes = 5;
  int shapes_min = 1;
  int shapes_max = 3;
  double color_noise_sigma = 0.05;         // per channel, [0,1] colour units
  double background_texture_sigma = 0.06;  // same units
};

enum class ShapeKind { kRect, kEllipse };

/// Axis-aligned shape over the inclusive pixel box [x0, x1] x [y0, y1].
/// Ellipses are inscribed in the box and cover pixels whose centres fall
/// inside.
struct Shape {
  ShapeKind kind = ShapeKind::kRect;
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  std::uint8_t class_id = 1;
};

struct Scene {
  RgbImage image;
  LabelMap gt;
  std::vector<Shape> shapes;  // paint order; later shapes occlude earlier ones
};

/// Base colours in [0,1]: index 0 is the background, index k is class k.
/// Throws GenerationError if two colours are closer than 4x the noise sigma.
std::vector<std::array<double, 3>> class_palette(const SceneConfig& config);

/// Deterministic in (seed, config). With `required_class` set, the topmost
/// shape carries that class so it is always visible.
Scene generate_scene(std::uint64_t seed, const SceneConfig& config,
                     std::optional<std::uint8_t> required_class = std::nullopt);

}  // namespace jfs::synth
