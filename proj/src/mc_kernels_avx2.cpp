// AVX2 variant of the Monte Carlo counting kernel: 8 samples per pass, one
// Philox lane each. Integer arithmetic end to end, so hit counts match the
// scalar kernel bitwise. Compiled with -mavx2 and guarded by a runtime
// cpuid check in the dispatcher.

#include "eqd/mc_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstring>

namespace eqd {

namespace {

struct PhiloxBlock8 {
    __m256i x0, x1, x2, x3;
};

// 32x32 -> (hi, lo) per 32-bit lane.
inline void mul_hilo(__m256i a, std::uint32_t m, __m256i& hi, __m256i& lo) {
    const __m256i mv = _mm256_set1_epi32(static_cast<int>(m));
    __m256i even = _mm256_mul_epu32(a, mv);
    __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), mv);
    lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0b10101010);
    hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0b10101010);
}

inline PhiloxBlock8 philox8(std::uint64_t seed, __m256i sample_lo, __m256i sample_hi,
                            std::uint64_t block) {
    __m256i c0 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(block)));
    __m256i c1 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(block >> 32)));
    __m256i c2 = sample_lo;
    __m256i c3 = sample_hi;
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (int round = 0; round < 10; ++round) {
        __m256i hi0, lo0, hi1, lo1;
        mul_hilo(c0, 0xD2511F53u, hi0, lo0);
        mul_hilo(c2, 0xCD9E8D57u, hi1, lo1);
        __m256i k0v = _mm256_set1_epi32(static_cast<int>(k0));
        __m256i k1v = _mm256_set1_epi32(static_cast<int>(k1));
        c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0v);
        c1 = lo1;
        c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1v);
        c3 = lo0;
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
    }
    return {c0, c1, c2, c3};
}

}  // namespace

std::uint64_t mc_count_avx2(const MCJob& job, std::uint64_t first, std::uint64_t count) {
    if (!avx2_eligible(job)) return mc_count_scalar(job, first, count);
    const int n = job.n, k = job.k;
    const int m = n * (n - 1) / 2;
    const __m256i kmask = _mm256_set1_epi32(static_cast<int>(job.denom - 1));
    // cdf thresholds for value selection; denom is a power of two here.
    __m256i cdfv[15];
    for (int j = 0; j + 1 < k; ++j)
        cdfv[j] = _mm256_set1_epi32(static_cast<int>(job.cdf[std::size_t(j)]));

    std::uint64_t hits = 0;
    std::uint64_t s = first;
    const std::uint64_t last = first + count;
    __m256i acc[28];
    __m256i vals[8];

    for (; s + 8 <= last; s += 8) {
        alignas(32) std::uint32_t slo[8], shi[8];
        for (int l = 0; l < 8; ++l) {
            slo[l] = static_cast<std::uint32_t>(s + static_cast<std::uint64_t>(l));
            shi[l] = static_cast<std::uint32_t>((s + static_cast<std::uint64_t>(l)) >> 32);
        }
        __m256i sample_lo = _mm256_load_si256(reinterpret_cast<const __m256i*>(slo));
        __m256i sample_hi = _mm256_load_si256(reinterpret_cast<const __m256i*>(shi));

        for (int p = 0; p < m; ++p) acc[p] = _mm256_setzero_si256();
        std::uint64_t widx = 0;
        PhiloxBlock8 blk{};
        for (long c = 0; c < job.d; ++c) {
            for (int i = 0; i < n; ++i) {
                if ((widx & 3) == 0) blk = philox8(job.seed, sample_lo, sample_hi, widx >> 2);
                __m256i w;
                switch (widx & 3) {
                    case 0: w = blk.x0; break;
                    case 1: w = blk.x1; break;
                    case 2: w = blk.x2; break;
                    default: w = blk.x3; break;
                }
                ++widx;
                __m256i u = _mm256_and_si256(w, kmask);
                // v = #{j : u >= cdf[j]}; both sides < 2^31, signed compare is safe.
                __m256i v = _mm256_setzero_si256();
                for (int j = 0; j + 1 < k; ++j) {
                    __m256i lt = _mm256_cmpgt_epi32(cdfv[j], u);  // u < cdf[j]
                    v = _mm256_sub_epi32(v, _mm256_andnot_si256(lt, _mm256_set1_epi32(-1)));
                }
                vals[i] = v;
            }
            int p = 0;
            const __m256i kv = _mm256_set1_epi32(k);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++p) {
                    __m256i idx = _mm256_add_epi32(_mm256_mullo_epi32(vals[i], kv), vals[j]);
                    __m256i e = _mm256_i32gather_epi32(job.table.data(), idx, 4);
                    acc[p] = _mm256_add_epi32(acc[p], e);
                }
        }
        __m256i eq = _mm256_set1_epi32(-1);
        for (int p = 1; p < m; ++p)
            eq = _mm256_and_si256(eq, _mm256_cmpeq_epi32(acc[p], acc[0]));
        hits += static_cast<unsigned>(
            __builtin_popcount(static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)))));
    }
    if (s < last) hits += mc_count_scalar(job, s, last - s);
    return hits;
}

}  // namespace eqd

#else

namespace eqd {

std::uint64_t mc_count_avx2(const MCJob& job, std::uint64_t first, std::uint64_t count) {
    return mc_count_scalar(job, first, count);
}

}  // namespace eqd

#endif
