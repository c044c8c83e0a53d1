#include "jfs/synth/oversegment.hpp"

#include <deque>
#include <stdexcept>
#include <vector>

#include "jfs/rng.hpp"

namespace jfs::synth {

dataio::CandidateBank oversegment(const LabelMap& gt, std::uint64_t seed, int granularity) {
  if (granularity < 1) throw std::invalid_argument("granularity must be >= 1");
  const int w = gt.width();
  const int h = gt.height();
  const std::size_t n = gt.labels().size();
  const auto& labels = gt.labels();
  constexpr int kUnset = -1;
  std::vector<int> component(n, kUnset);
  std::vector<int> part(n, kUnset);
  Rng rng(seed);
  dataio::CandidateBank bank;

  const auto neighbours = [&](std::size_t i, auto&& visit) {
    const int x = static_cast<int>(i % w);
    const int y = static_cast<int>(i / w);
    if (x > 0) visit(i - 1);
    if (x + 1 < w) visit(i + 1);
    if (y > 0) visit(i - w);
    if (y + 1 < h) visit(i + w);
  };

  int next_component = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (component[start] != kUnset) continue;
    // Flood the component in scan order.
    std::vector<std::size_t> pixels{start};
    component[start] = next_component;
    for (std::size_t head = 0; head < pixels.size(); ++head) {
      neighbours(pixels[head], [&](std::size_t j) {
        if (component[j] == kUnset && labels[j] == labels[start]) {
          component[j] = next_component;
          pixels.push_back(j);
        }
      });
    }
    ++next_component;

    // Distinct seeds, then breadth-first growth restricted to the component.
    const std::size_t parts = std::min<std::size_t>(static_cast<std::size_t>(granularity), pixels.size());
    std::vector<std::size_t> order(pixels.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::deque<std::size_t> frontier;
    for (std::size_t k = 0; k < parts; ++k) {
      const std::size_t pick = k + rng.below(order.size() - k);
      std::swap(order[k], order[pick]);
      const std::size_t p = pixels[order[k]];
      part[p] = static_cast<int>(k);
      frontier.push_back(p);
    }
    while (!frontier.empty()) {
      const std::size_t p = frontier.front();
      frontier.pop_front();
      neighbours(p, [&](std::size_t j) {
        if (part[j] == kUnset && component[j] == component[p]) {
          part[j] = part[p];
          frontier.push_back(j);
        }
      });
    }
    std::vector<BinaryMask> masks(parts, BinaryMask(w, h));
    for (auto p : pixels) masks[static_cast<std::size_t>(part[p])].assign(p, true);
    for (auto& m : masks) bank.candidates.push_back(std::move(m));
  }
  return bank;
}

}  // namespace jfs::synth
