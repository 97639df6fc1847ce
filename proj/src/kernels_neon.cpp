#include "enr/kernels.hpp"

#include <arm_neon.h>

namespace enr::kernels {

// 4-lane int32 sweep; mirrors the scalar kernel bit for bit.
int qsweep_neon(std::int32_t q0, std::int32_t g, std::int32_t h,
                std::int32_t t0, std::int32_t t1,
                std::int32_t lo, std::int32_t hi, std::int32_t* out) {
    int n = 0;
    const int32x4_t vq0 = vdupq_n_s32(q0);
    const int32x4_t v2g = vdupq_n_s32(2 * g);
    const int32x4_t vh = vdupq_n_s32(h);
    const int32x4_t vlo = vdupq_n_s32(lo);
    const int32x4_t vhi = vdupq_n_s32(hi);
    const int32x4_t ramp = {0, 1, 2, 3};

    std::int32_t t = t0;
    for (; t + 3 <= t1; t += 4) {
        int32x4_t vt = vaddq_s32(vdupq_n_s32(t), ramp);
        int32x4_t q = vaddq_s32(vq0, vaddq_s32(vmulq_s32(v2g, vt), vmulq_s32(vh, vmulq_s32(vt, vt))));
        uint32x4_t ok = vandq_u32(vcgeq_s32(q, vlo), vcleq_s32(q, vhi));
        std::uint32_t lanes[4];
        vst1q_u32(lanes, ok);
        for (int b = 0; b < 4; ++b)
            if (lanes[b]) out[n++] = t + b;
    }
    for (; t <= t1; ++t) {
        std::int32_t q = q0 + 2 * g * t + h * t * t;
        if (q >= lo && q <= hi) out[n++] = t;
    }
    return n;
}

} // namespace enr::kernels
