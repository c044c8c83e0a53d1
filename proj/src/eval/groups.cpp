#include "jfs/eval/groups.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "jfs/error.hpp"
#include "jfs/rng.hpp"

namespace jfs::eval {
namespace {

int parse_positive(std::string_view text, std::string_view token) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || v < 1)
    throw GroupError("bad count in group '" + std::string(token) + "'");
  return v;
}

bool key_less(const ScoredSample& a, const ScoredSample& b) {
  if (a.image_id != b.image_id) return a.image_id < b.image_id;
  return a.class_id < b.class_id;
}

std::vector<std::size_t> by_key(std::span<const ScoredSample> samples) {
  std::vector<std::size_t> idx(samples.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return key_less(samples[a], samples[b]); });
  return idx;
}

// k best by improvement (descending when `top`), ties by key.
std::vector<std::size_t> extreme(std::span<const ScoredSample> samples, int k, bool top) {
  if (static_cast<std::size_t>(k) > samples.size())
    throw GroupError("group asks for " + std::to_string(k) + " samples, only " +
                     std::to_string(samples.size()) + " available");
  auto idx = by_key(samples);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) {
    const double da = improvement(samples[a]);
    const double db = improvement(samples[b]);
    return top ? da > db : da < db;
  });
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

}  // namespace

GroupSpec parse_group(std::string_view token) {
  GroupSpec spec;
  std::string_view body = token;
  if (const auto eq = body.find('='); eq != std::string_view::npos) {
    spec.name = std::string(body.substr(0, eq));
    body = body.substr(eq + 1);
    if (spec.name.empty()) throw GroupError("empty group name in '" + std::string(token) + "'");
  }
  const auto colon = body.find(':');
  if (colon == std::string_view::npos) throw GroupError("group '" + std::string(token) + "' lacks ':'");
  const auto kind = body.substr(0, colon);
  const auto arg = body.substr(colon + 1);
  if (kind == "top" || kind == "bottom" || kind == "topbottom") {
    spec.kind = kind == "top" ? GroupSpec::Kind::kTopK
              : kind == "bottom" ? GroupSpec::Kind::kBottomK
                                 : GroupSpec::Kind::kTopBottom;
    spec.k = parse_positive(arg, token);
  } else if (kind == "random") {
    spec.kind = GroupSpec::Kind::kRandomStratified;
    const auto x = arg.find('x');
    if (x == std::string_view::npos) {
      spec.per_class = parse_positive(arg, token);
    } else {
      spec.per_class = parse_positive(arg.substr(0, x), token);
      spec.expected_classes = parse_positive(arg.substr(x + 1), token);
    }
  } else {
    throw GroupError("unknown group kind '" + std::string(kind) + "'");
  }
  return spec;
}

std::vector<GroupSpec> parse_groups(std::string_view text) {
  std::vector<GroupSpec> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_group(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string display_name(const GroupSpec& spec, std::size_t class_count) {
  if (!spec.name.empty()) return spec.name;
  switch (spec.kind) {
    case GroupSpec::Kind::kTopK:
      return "top" + std::to_string(spec.k);
    case GroupSpec::Kind::kBottomK:
      return "bottom" + std::to_string(spec.k);
    case GroupSpec::Kind::kTopBottom:
      return "topbottom" + std::to_string(spec.k);
    case GroupSpec::Kind::kRandomStratified:
      return "random" + std::to_string(static_cast<std::size_t>(spec.per_class) * class_count);
  }
  return "group";
}

std::vector<std::uint8_t> sample_classes(std::span<const ScoredSample> samples) {
  std::vector<std::uint8_t> out;
  for (const auto& s : samples) out.push_back(s.class_id);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> select_group(std::span<const ScoredSample> samples, const GroupSpec& spec,
                                      std::uint64_t seed) {
  std::vector<std::size_t> picked;
  switch (spec.kind) {
    case GroupSpec::Kind::kTopK:
      picked = extreme(samples, spec.k, true);
      break;
    case GroupSpec::Kind::kBottomK:
      picked = extreme(samples, spec.k, false);
      break;
    case GroupSpec::Kind::kTopBottom: {
      picked = extreme(samples, spec.k, true);
      const auto low = extreme(samples, spec.k, false);
      picked.insert(picked.end(), low.begin(), low.end());
      std::sort(picked.begin(), picked.end());
      picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
      break;
    }
    case GroupSpec::Kind::kRandomStratified: {
      if (spec.per_class < 1) throw GroupError("per_class must be >= 1");
      const auto classes = sample_classes(samples);
      if (spec.expected_classes && static_cast<std::size_t>(*spec.expected_classes) != classes.size())
        throw GroupError("random group expects " + std::to_string(*spec.expected_classes) +
                         " classes, samples cover " + std::to_string(classes.size()));
      const auto order = by_key(samples);
      for (auto c : classes) {
        std::vector<std::size_t> members;
        for (auto i : order)
          if (samples[i].class_id == c) members.push_back(i);
        if (members.size() < static_cast<std::size_t>(spec.per_class))
          throw GroupError("class " + std::to_string(c) + " has " + std::to_string(members.size()) +
                           " samples, group needs " + std::to_string(spec.per_class));
        Rng rng(child_seed(seed, c));
        for (std::size_t k = 0; k < static_cast<std::size_t>(spec.per_class); ++k) {
          const std::size_t j = k + rng.below(members.size() - k);
          std::swap(members[k], members[j]);
        }
        picked.insert(picked.end(), members.begin(), members.begin() + spec.per_class);
      }
      break;
    }
  }
  std::sort(picked.begin(), picked.end(), [&](auto a, auto b) { return key_less(samples[a], samples[b]); });
  return picked;
}

}  // namespace jfs::eval
