#pragma once

#include "jfs/simd/kernels.hpp"

namespace jfs::simd::detail {

extern const Kernels kScalarKernels;
#if defined(JFS_HAVE_AVX2_KERNELS)
extern const Kernels kAvx2Kernels;
#endif

}  // namespace jfs::simd::detail
