// Compiled with -mavx2 only; selected at runtime after a CPUID check.

#include <immintrin.h>

#include <bit>

#include "simd_internal.hpp"

namespace jfs::simd::detail {
namespace {

// Nibble-LUT popcount (Mula): per-byte counts via pshufb, folded with psadbw.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  const __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

inline std::uint64_t hsum_epi64(__m256i v) {
  return static_cast<std::uint64_t>(_mm256_extract_epi64(v, 0)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 1)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 2)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 3));
}

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

template <class Combine, class Tail>
std::uint64_t count_words(std::size_t n, Combine combine, Tail tail) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_epi64(acc, popcount_bytes(combine(i)));
  std::uint64_t total = hsum_epi64(acc);
  for (; i < n; ++i) total += std::popcount(tail(i));
  return total;
}

std::uint64_t popcount(const std::uint64_t* a, std::size_t n) {
  return count_words(
      n, [=](std::size_t i) { return load(a + i); }, [=](std::size_t i) { return a[i]; });
}

std::uint64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  return count_words(
      n, [=](std::size_t i) { return _mm256_and_si256(load(a + i), load(b + i)); },
      [=](std::size_t i) { return a[i] & b[i]; });
}

std::uint64_t popcount_or(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  return count_words(
      n, [=](std::size_t i) { return _mm256_or_si256(load(a + i), load(b + i)); },
      [=](std::size_t i) { return a[i] | b[i]; });
}

std::uint64_t popcount_and_masked(const std::uint64_t* a, const std::uint64_t* b,
                                  const std::uint64_t* v, std::size_t n) {
  return count_words(
      n,
      [=](std::size_t i) {
        return _mm256_and_si256(_mm256_and_si256(load(a + i), load(b + i)), load(v + i));
      },
      [=](std::size_t i) { return a[i] & b[i] & v[i]; });
}

std::uint64_t popcount_or_masked(const std::uint64_t* a, const std::uint64_t* b,
                                 const std::uint64_t* v, std::size_t n) {
  return count_words(
      n,
      [=](std::size_t i) {
        return _mm256_and_si256(_mm256_or_si256(load(a + i), load(b + i)), load(v + i));
      },
      [=](std::size_t i) { return (a[i] | b[i]) & v[i]; });
}

void bit_and(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                        _mm256_and_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] & b[i];
}

void bit_or(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                        _mm256_or_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] | b[i];
}

// Same operation order as the scalar reference (sub, mul, add per feature, no
// FMA) so both produce identical bits.
void classify(const ClassifyArgs& args, std::uint8_t* out) {
  constexpr int kF = ClassifyArgs::kFeatures;
  __m256 fg[kF];
  __m256 bg[kF];
  for (int f = 0; f < kF; ++f) {
    fg[f] = _mm256_set1_ps(args.fg[f]);
    bg[f] = _mm256_set1_ps(args.bg[f]);
  }
  std::size_t i = 0;
  for (; i + 8 <= args.count; i += 8) {
    __m256 dfg = _mm256_setzero_ps();
    __m256 dbg = _mm256_setzero_ps();
    for (int f = 0; f < kF; ++f) {
      const __m256 v = _mm256_loadu_ps(args.planes[f] + i);
      const __m256 a = _mm256_sub_ps(v, fg[f]);
      const __m256 b = _mm256_sub_ps(v, bg[f]);
      dfg = _mm256_add_ps(dfg, _mm256_mul_ps(a, a));
      dbg = _mm256_add_ps(dbg, _mm256_mul_ps(b, b));
    }
    const int bits = _mm256_movemask_ps(_mm256_cmp_ps(dfg, dbg, _CMP_LT_OQ));
    for (int k = 0; k < 8; ++k) out[i + k] = static_cast<std::uint8_t>((bits >> k) & 1);
  }
  for (; i < args.count; ++i) {
    float dfg = 0.0f;
    float dbg = 0.0f;
    for (int f = 0; f < kF; ++f) {
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

const Kernels kAvx2Kernels = {
    Isa::kAvx2,         popcount, popcount_and, popcount_or, popcount_and_masked,
    popcount_or_masked, bit_and,  bit_or,       classify,
};

}  // namespace jfs::simd::detail
