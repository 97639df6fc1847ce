#include "enr/kernels.hpp"

#include <stdexcept>

namespace enr::kernels {

int qsweep_scalar(std::int32_t q0, std::int32_t g, std::int32_t h,
                  std::int32_t t0, std::int32_t t1,
                  std::int32_t lo, std::int32_t hi, std::int32_t* out) {
    int n = 0;
    for (std::int32_t t = t0; t <= t1; ++t) {
        std::int32_t q = q0 + 2 * g * t + h * t * t;
        if (q >= lo && q <= hi) out[n++] = t;
    }
    return n;
}

namespace {

QSweepFn pick_default(std::string& name) {
#ifdef ENR_BUILD_AVX2
    if (__builtin_cpu_supports("avx2")) {
        name = "avx2";
        return &qsweep_avx2;
    }
#endif
#ifdef ENR_BUILD_NEON
    name = "neon";
    return &qsweep_neon;
#endif
    name = "scalar";
    return &qsweep_scalar;
}

struct Dispatch {
    QSweepFn fn;
    std::string name;
    Dispatch() { fn = pick_default(name); }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

} // namespace

QSweepFn qsweep() { return dispatch().fn; }

const std::string& backend_name() { return dispatch().name; }

void set_backend(const std::string& name) {
    if (name == "scalar") {
        dispatch().fn = &qsweep_scalar;
        dispatch().name = name;
        return;
    }
#ifdef ENR_BUILD_AVX2
    if (name == "avx2") {
        if (!__builtin_cpu_supports("avx2"))
            throw std::runtime_error("set_backend: avx2 not supported by this CPU");
        dispatch().fn = &qsweep_avx2;
        dispatch().name = name;
        return;
    }
#endif
#ifdef ENR_BUILD_NEON
    if (name == "neon") {
        dispatch().fn = &qsweep_neon;
        dispatch().name = name;
        return;
    }
#endif
    throw std::runtime_error("set_backend: unknown or unavailable backend '" + name + "'");
}

} // namespace enr::kernels
