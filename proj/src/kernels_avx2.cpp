#include "enr/kernels.hpp"

#include <immintrin.h>

namespace enr::kernels {

// 8-lane int32 sweep.  q(t) = q0 + 2*g*t + h*t^2 is evaluated for eight
// consecutive t per iteration; a compare mask picks out the hits, which are
// appended in ascending order so the result matches the scalar kernel exactly.
int qsweep_avx2(std::int32_t q0, std::int32_t g, std::int32_t h,
                std::int32_t t0, std::int32_t t1,
                std::int32_t lo, std::int32_t hi, std::int32_t* out) {
    int n = 0;
    const __m256i vq0 = _mm256_set1_epi32(q0);
    const __m256i v2g = _mm256_set1_epi32(2 * g);
    const __m256i vh = _mm256_set1_epi32(h);
    const __m256i vlo = _mm256_set1_epi32(lo);
    const __m256i vhi = _mm256_set1_epi32(hi);
    const __m256i ramp = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

    std::int32_t t = t0;
    for (; t + 7 <= t1; t += 8) {
        __m256i vt = _mm256_add_epi32(_mm256_set1_epi32(t), ramp);
        __m256i vt2 = _mm256_mullo_epi32(vt, vt);
        __m256i q = _mm256_add_epi32(vq0, _mm256_add_epi32(_mm256_mullo_epi32(v2g, vt),
                                                           _mm256_mullo_epi32(vh, vt2)));
        __m256i ge = _mm256_cmpgt_epi32(vlo, q); // q < lo
        __m256i le = _mm256_cmpgt_epi32(q, vhi); // q > hi
        __m256i bad = _mm256_or_si256(ge, le);
        unsigned mask = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(bad))) ^ 0xffu;
        while (mask) {
            int bit = __builtin_ctz(mask);
            out[n++] = t + bit;
            mask &= mask - 1;
        }
    }
    for (; t <= t1; ++t) {
        std::int32_t q = q0 + 2 * g * t + h * t * t;
        if (q >= lo && q <= hi) out[n++] = t;
    }
    return n;
}

} // namespace enr::kernels
