// Data-parallel inner loops for lattice box scans.
//
// The only hot operation is the "quadratic sweep": given the restriction of
// the quadratic form to a line  q(t) = q0 + 2*g*t + h*t*t, collect every
// integer t in [t0, t1] with lo <= q(t) <= hi.  The grid drivers keep q0 and g
// incrementally, so one sweep retires a whole innermost coordinate row.
//
// All kernels are exact integer arithmetic.  The 32-bit variants require every
// intermediate value to fit in int32; the drivers guarantee that by bounding
// the coefficient box (|x_i| <= kMaxBoxHeight implies |q| <= 32*B^2 plus the
// affine terms, comfortably below 2^31).  A 64-bit scalar fallback covers
// anything larger.

#pragma once

#include <cstdint>
#include <string>

namespace enr::kernels {

// Largest box half-width the int32 sweep kernels accept.
inline constexpr std::int64_t kMaxBoxHeight = 4096;

// Writes each matching t into out (ascending) and returns the match count.
// out must have room for t1 - t0 + 1 entries.
using QSweepFn = int (*)(std::int32_t q0, std::int32_t g, std::int32_t h,
                         std::int32_t t0, std::int32_t t1,
                         std::int32_t lo, std::int32_t hi, std::int32_t* out);

int qsweep_scalar(std::int32_t q0, std::int32_t g, std::int32_t h,
                  std::int32_t t0, std::int32_t t1,
                  std::int32_t lo, std::int32_t hi, std::int32_t* out);
#ifdef ENR_BUILD_AVX2
int qsweep_avx2(std::int32_t q0, std::int32_t g, std::int32_t h,
                std::int32_t t0, std::int32_t t1,
                std::int32_t lo, std::int32_t hi, std::int32_t* out);
#endif
#ifdef ENR_BUILD_NEON
int qsweep_neon(std::int32_t q0, std::int32_t g, std::int32_t h,
                std::int32_t t0, std::int32_t t1,
                std::int32_t lo, std::int32_t hi, std::int32_t* out);
#endif

// Best kernel for this machine, chosen once at startup (AVX2/NEON when the
// CPU supports it, scalar otherwise).
QSweepFn qsweep();
// Name of the selected backend: "scalar", "avx2" or "neon".
const std::string& backend_name();
// Force a specific backend ("scalar" always works); throws on unknown names.
void set_backend(const std::string& name);

} // namespace enr::kernels
