#include <bit>

#include "simd_internal.hpp"

namespace jfs::simd::detail {
namespace {

std::uint64_t popcount(const std::uint64_t* a, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

std::uint64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::uint64_t popcount_or(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i] | b[i]);
  return total;
}

std::uint64_t popcount_and_masked(const std::uint64_t* a, const std::uint64_t* b,
                                  const std::uint64_t* v, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i] & b[i] & v[i]);
  return total;
}

std::uint64_t popcount_or_masked(const std::uint64_t* a, const std::uint64_t* b,
                                 const std::uint64_t* v, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount((a[i] | b[i]) & v[i]);
  return total;
}

void bit_and(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
}

void bit_or(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
}

void classify(const ClassifyArgs& args, std::uint8_t* out) {
  for (std::size_t i = 0; i < args.count; ++i) {
    float dfg = 0.0f;
    float dbg = 0.0f;
    for (int f = 0; f < ClassifyArgs::kFeatures; ++f) {
      const float v = args.planes[f][i];
      const float a = v - args.fg[f];
      const float b = v - args.bg[f];
      dfg = dfg + a * a;
      dbg = dbg + b * b;
    }
    out[i] = dfg < dbg ? 1 : 0;
  }
}

}  // namespace

const Kernels kScalarKernels = {
    Isa::kScalar,       popcount, popcount_and, popcount_or, popcount_and_masked,
    popcount_or_masked, bit_and,  bit_or,       classify,
};

}  // namespace jfs::simd::detail
