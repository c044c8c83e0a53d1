#include <atomic>

#include "simd_internal.hpp"

namespace jfs::simd {
namespace {

bool cpu_has(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(JFS_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
  }
  return false;
}

const Kernels* best() noexcept {
  if (const Kernels* k = kernels_for(Isa::kAvx2)) return k;
  return &detail::kScalarKernels;
}

std::atomic<const Kernels*>& slot() noexcept {
  static std::atomic<const Kernels*> current{best()};
  return current;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

const Kernels& scalar_kernels() noexcept { return detail::kScalarKernels; }

const Kernels* kernels_for(Isa isa) noexcept {
  if (!cpu_has(isa)) return nullptr;
  switch (isa) {
    case Isa::kScalar:
      return &detail::kScalarKernels;
    case Isa::kAvx2:
#if defined(JFS_HAVE_AVX2_KERNELS)
      return &detail::kAvx2Kernels;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2})
    if (kernels_for(isa) != nullptr) out.push_back(isa);
  return out;
}

const Kernels& active() noexcept { return *slot().load(std::memory_order_acquire); }

bool select(Isa isa) noexcept {
  const Kernels* k = kernels_for(isa);
  if (k == nullptr) return false;
  slot().store(k, std::memory_order_release);
  return true;
}

}  // namespace jfs::simd
