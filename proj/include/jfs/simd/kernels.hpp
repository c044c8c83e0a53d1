#pragma once

// Data-parallel inner loops behind mask algebra and the prototype backend.
//
// Every kernel has a portable scalar reference and, where the build and the
// CPU allow it, a vectorized variant. The active table is chosen once at
// startup from CPUID; variants must agree with the scalar reference bit for
// bit (tests/unit/test_simd.cpp enforces this).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace jfs::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Inputs to the nearest-prototype pixel classifier. Feature planes are
/// planar float arrays of equal length; prototypes hold one value per plane.
struct ClassifyArgs {
  static constexpr int kFeatures = 5;
  const float* planes[kFeatures];
  float fg[kFeatures];
  float bg[kFeatures];
  std::size_t count;
};

struct Kernels {
  Isa isa;
  std::uint64_t (*popcount)(const std::uint64_t* a, std::size_t n);
  std::uint64_t (*popcount_and)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  std::uint64_t (*popcount_or)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  // popcount(a & b & v) and popcount((a | b) & v)
  std::uint64_t (*popcount_and_masked)(const std::uint64_t* a, const std::uint64_t* b,
                                       const std::uint64_t* v, std::size_t n);
  std::uint64_t (*popcount_or_masked)(const std::uint64_t* a, const std::uint64_t* b,
                                      const std::uint64_t* v, std::size_t n);
  void (*bit_and)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                  std::size_t n);
  void (*bit_or)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                 std::size_t n);
  // out[i] = 1 iff squared distance to fg is strictly below distance to bg.
  void (*classify)(const ClassifyArgs& args, std::uint8_t* out);
};

const Kernels& scalar_kernels() noexcept;

/// Table for `isa`, or nullptr when that variant is not compiled in or the
/// running CPU lacks it.
const Kernels* kernels_for(Isa isa) noexcept;

/// Every variant usable on this machine, scalar first.
std::vector<Isa> available_isas();

/// The table used by the library. Defaults to the widest available variant.
const Kernels& active() noexcept;

/// Pins the active table (tests and benchmarks). Returns false if `isa` is
/// unavailable, leaving the selection unchanged.
bool select(Isa isa) noexcept;

}  // namespace jfs::simd
