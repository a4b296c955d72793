#include "floorplan/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string>

namespace floorplan::kernels {

int monomial_count(int n_max) {
    int c = 0;
    for (int m = 0; m <= n_max; ++m) c += (n_max - m) / 2 + 1;
    return c;
}

int monomial_index(int n_max, int m, int j) {
    int off = 0;
    for (int mm = 0; mm < m; ++mm) off += (n_max - mm) / 2 + 1;
    return off + j;
}

namespace scalar {

void zernike_monomial_sums(const std::uint8_t* mask, int width, int height,
                           double x0, double y0, double step, int n_max,
                           double* sums_re, double* sums_im) {
    const int count = monomial_count(n_max);
    std::fill(sums_re, sums_re + count, 0.0);
    std::fill(sums_im, sums_im + count, 0.0);
    for (int row = 0; row < height; ++row) {
        const double y = y0 + row * step;
        const std::uint8_t* mrow = mask + static_cast<std::size_t>(row) * width;
        for (int col = 0; col < width; ++col) {
            if (!mrow[col]) continue;
            const double x = x0 + col * step;
            const double u = x * x + y * y;
            if (u > 1.0) continue;
            // t = (x - iy)^m built by complex multiplication
            double tr = 1.0, ti = 0.0;
            int idx = 0;
            for (int m = 0; m <= n_max; ++m) {
                if (m > 0) {
                    const double ntr = tr * x + ti * y;
                    const double nti = ti * x - tr * y;
                    tr = ntr;
                    ti = nti;
                }
                double uj = 1.0;
                const int jmax = (n_max - m) / 2;
                for (int j = 0; j <= jmax; ++j) {
                    sums_re[idx] += uj * tr;
                    sums_im[idx] += uj * ti;
                    ++idx;
                    uj *= u;
                }
            }
        }
    }
}

void matvec(const double* w, const double* x, double* y, int rows, int cols) {
    for (int i = 0; i < rows; ++i) {
        double acc = 0.0;
        const double* wr = w + static_cast<std::size_t>(i) * cols;
        for (int j = 0; j < cols; ++j) acc += wr[j] * x[j];
        y[i] = acc;
    }
}

void matvec_t_add(const double* w, const double* g, double* y, int rows, int cols) {
    for (int i = 0; i < rows; ++i) {
        const double gi = g[i];
        if (gi == 0.0) continue;
        const double* wr = w + static_cast<std::size_t>(i) * cols;
        for (int j = 0; j < cols; ++j) y[j] += wr[j] * gi;
    }
}

void binarize_u8(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                 std::uint8_t threshold) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] < threshold ? 1 : 0;
}

void dilate3x3_u8(const std::uint8_t* src, std::uint8_t* dst, int width, int height) {
    for (int y = 0; y < height; ++y) {
        const int y0 = std::max(0, y - 1), y1 = std::min(height - 1, y + 1);
        for (int x = 0; x < width; ++x) {
            const int x0 = std::max(0, x - 1), x1 = std::min(width - 1, x + 1);
            std::uint8_t v = 0;
            for (int yy = y0; yy <= y1 && !v; ++yy)
                for (int xx = x0; xx <= x1; ++xx)
                    v |= src[static_cast<std::size_t>(yy) * width + xx];
            dst[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
        }
    }
}

}  // namespace scalar

#if !FLOORPLAN_HAVE_AVX2_TU
namespace avx2 {
[[noreturn]] static void unavailable() {
    throw std::runtime_error("AVX2 kernels were not compiled into this build");
}
void zernike_monomial_sums(const std::uint8_t*, int, int, double, double, double,
                           int, double*, double*) { unavailable(); }
void matvec(const double*, const double*, double*, int, int) { unavailable(); }
void matvec_t_add(const double*, const double*, double*, int, int) { unavailable(); }
void binarize_u8(const std::uint8_t*, std::uint8_t*, std::size_t, std::uint8_t) {
    unavailable();
}
void dilate3x3_u8(const std::uint8_t*, std::uint8_t*, int, int) { unavailable(); }
}  // namespace avx2
#endif

const char* backend_name(Backend b) {
    return b == Backend::scalar ? "scalar" : "avx2";
}

bool backend_compiled(Backend b) {
#if FLOORPLAN_HAVE_AVX2_TU
    (void)b;
    return true;
#else
    return b == Backend::scalar;
#endif
}

bool backend_available(Backend b) {
    if (!backend_compiled(b)) return false;
    if (b == Backend::scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {

Backend g_backend = Backend::scalar;
std::once_flag g_backend_once;

void init_backend() {
    Backend b = backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("FLOORPLAN_SIMD")) {
        const std::string v(env);
        if (v == "scalar") b = Backend::scalar;
        else if (v == "avx2" && backend_available(Backend::avx2)) b = Backend::avx2;
    }
    g_backend = b;
}

Backend backend() {
    std::call_once(g_backend_once, init_backend);
    return g_backend;
}

}  // namespace

Backend active_backend() { return backend(); }

void force_backend(Backend b) {
    if (!backend_available(b))
        throw std::runtime_error(std::string("backend unavailable: ") + backend_name(b));
    std::call_once(g_backend_once, init_backend);
    g_backend = b;
}

void zernike_monomial_sums(const std::uint8_t* mask, int width, int height,
                           double x0, double y0, double step, int n_max,
                           double* sums_re, double* sums_im) {
    if (backend() == Backend::avx2)
        avx2::zernike_monomial_sums(mask, width, height, x0, y0, step, n_max, sums_re, sums_im);
    else
        scalar::zernike_monomial_sums(mask, width, height, x0, y0, step, n_max, sums_re, sums_im);
}

void matvec(const double* w, const double* x, double* y, int rows, int cols) {
    if (backend() == Backend::avx2) avx2::matvec(w, x, y, rows, cols);
    else scalar::matvec(w, x, y, rows, cols);
}

void matvec_t_add(const double* w, const double* g, double* y, int rows, int cols) {
    if (backend() == Backend::avx2) avx2::matvec_t_add(w, g, y, rows, cols);
    else scalar::matvec_t_add(w, g, y, rows, cols);
}

void binarize_u8(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                 std::uint8_t threshold) {
    if (backend() == Backend::avx2) avx2::binarize_u8(src, dst, n, threshold);
    else scalar::binarize_u8(src, dst, n, threshold);
}

void dilate3x3_u8(const std::uint8_t* src, std::uint8_t* dst, int width, int height) {
    if (backend() == Backend::avx2) avx2::dilate3x3_u8(src, dst, width, height);
    else scalar::dilate3x3_u8(src, dst, width, height);
}

}  // namespace floorplan::kernels
