#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops shared by the zernike, raster and classify
// modules. Every kernel has a scalar reference implementation and an AVX2
// variant; the free functions at namespace scope dispatch on the backend
// selected at runtime (cpuid, overridable via FLOORPLAN_SIMD=scalar|avx2
// or force_backend()). Scalar and SIMD variants are equivalence-tested
// against each other in tests/test_kernels.cpp.
namespace floorplan::kernels {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_compiled(Backend b);
bool backend_available(Backend b);  // compiled and supported by this CPU
Backend active_backend();
void force_backend(Backend b);  // throws std::runtime_error if unavailable

// Packing of the complex monomial sums G[m][j] = sum over set pixels of
// u^j * (x - iy)^m with u = x^2 + y^2, for 0 <= m <= n_max and
// 0 <= j <= (n_max - m) / 2. m-major, j ascending. 16 entries for n_max=6.
int monomial_count(int n_max);
int monomial_index(int n_max, int m, int j);

// Accumulates the monomial sums over a width x height grid of pixel
// centers (x0 + col*step, y0 + row*step). A pixel contributes iff its
// mask byte is nonzero and it lies in the unit disk (u <= 1). sums_re and
// sums_im must hold monomial_count(n_max) doubles and are overwritten.
void zernike_monomial_sums(const std::uint8_t* mask, int width, int height,
                           double x0, double y0, double step, int n_max,
                           double* sums_re, double* sums_im);

// y = W x, W row-major rows x cols.
void matvec(const double* w, const double* x, double* y, int rows, int cols);
// y += W^T g, W row-major rows x cols, g has rows entries, y has cols.
void matvec_t_add(const double* w, const double* g, double* y, int rows, int cols);

// dst[i] = src[i] < threshold ? 1 : 0  (ink-is-dark convention).
void binarize_u8(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                 std::uint8_t threshold);

// 3x3 binary dilation with clamped borders; src/dst are 0/1 bytes and must
// not alias.
void dilate3x3_u8(const std::uint8_t* src, std::uint8_t* dst, int width, int height);

namespace scalar {
void zernike_monomial_sums(const std::uint8_t* mask, int width, int height,
                           double x0, double y0, double step, int n_max,
                           double* sums_re, double* sums_im);
void matvec(const double* w, const double* x, double* y, int rows, int cols);
void matvec_t_add(const double* w, const double* g, double* y, int rows, int cols);
void binarize_u8(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                 std::uint8_t threshold);
void dilate3x3_u8(const std::uint8_t* src, std::uint8_t* dst, int width, int height);
}  // namespace scalar

namespace avx2 {
void zernike_monomial_sums(const std::uint8_t* mask, int width, int height,
                           double x0, double y0, double step, int n_max,
                           double* sums_re, double* sums_im);
void matvec(const double* w, const double* x, double* y, int rows, int cols);
void matvec_t_add(const double* w, const double* g, double* y, int rows, int cols);
void binarize_u8(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                 std::uint8_t threshold);
void dilate3x3_u8(const std::uint8_t* src, std::uint8_t* dst, int width, int height);
}  // namespace avx2

}  // namespace floorplan::kernels
