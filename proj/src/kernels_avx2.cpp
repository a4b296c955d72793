#include <immintrin.h>

#include <cstring>
#include <vector>

#include "floorplan/kernels.hpp"

namespace floorplan::kernels::avx2 {

namespace {

// fixed-order horizontal sum so results are run-to-run deterministic
inline double hsum(__m256d v) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return ((lane[0] + lane[1]) + lane[2]) + lane[3];
}

inline __m256d load_mask01(const std::uint8_t* p) {
    int packed;
    std::memcpy(&packed, p, 4);
    const __m128i bytes = _mm_cvtsi32_si128(packed);
    const __m256d v = _mm256_cvtepi32_pd(_mm_cvtepu8_epi32(bytes));
    return _mm256_and_pd(_mm256_cmp_pd(v, _mm256_setzero_pd(), _CMP_NEQ_OQ),
                         _mm256_set1_pd(1.0));
}

}  // namespace

void zernike_monomial_sums(const std::uint8_t* mask, int width, int height,
                           double x0, double y0, double step, int n_max,
                           double* sums_re, double* sums_im) {
    constexpr int kMaxVecOrder = 12;  // 49 accumulator pairs
    if (n_max > kMaxVecOrder) {
        scalar::zernike_monomial_sums(mask, width, height, x0, y0, step, n_max,
                                      sums_re, sums_im);
        return;
    }
    const int count = monomial_count(n_max);
    __m256d acc_re[49], acc_im[49];
    for (int i = 0; i < count; ++i) acc_re[i] = acc_im[i] = _mm256_setzero_pd();
    std::vector<double> tail_re(count, 0.0), tail_im(count, 0.0);

    const __m256d vstep4 = _mm256_set1_pd(4.0 * step);
    const __m256d one = _mm256_set1_pd(1.0);
    const int wv = width & ~3;

    for (int row = 0; row < height; ++row) {
        const double y = y0 + row * step;
        const std::uint8_t* mrow = mask + static_cast<std::size_t>(row) * width;
        const __m256d vy = _mm256_set1_pd(y);
        __m256d vx = _mm256_add_pd(
            _mm256_set1_pd(x0),
            _mm256_mul_pd(_mm256_set_pd(3.0, 2.0, 1.0, 0.0), _mm256_set1_pd(step)));
        for (int col = 0; col < wv; col += 4, vx = _mm256_add_pd(vx, vstep4)) {
            const __m256d w0 = load_mask01(mrow + col);
            if (_mm256_testz_pd(_mm256_cmp_pd(w0, _mm256_setzero_pd(), _CMP_NEQ_OQ),
                                _mm256_castsi256_pd(_mm256_set1_epi64x(-1))))
                continue;
            const __m256d u = _mm256_fmadd_pd(vx, vx, _mm256_mul_pd(vy, vy));
            const __m256d disk = _mm256_and_pd(_mm256_cmp_pd(u, one, _CMP_LE_OQ), one);
            // seeding t0 with the 0/1 weight zeroes masked lanes throughout
            __m256d tr = _mm256_mul_pd(w0, disk);
            __m256d ti = _mm256_setzero_pd();
            int idx = 0;
            for (int m = 0; m <= n_max; ++m) {
                if (m > 0) {
                    const __m256d ntr = _mm256_fmadd_pd(tr, vx, _mm256_mul_pd(ti, vy));
                    const __m256d nti = _mm256_fmsub_pd(ti, vx, _mm256_mul_pd(tr, vy));
                    tr = ntr;
                    ti = nti;
                }
                __m256d uj = one;
                const int jmax = (n_max - m) / 2;
                for (int j = 0; j <= jmax; ++j) {
                    acc_re[idx] = _mm256_fmadd_pd(uj, tr, acc_re[idx]);
                    acc_im[idx] = _mm256_fmadd_pd(uj, ti, acc_im[idx]);
                    ++idx;
                    uj = _mm256_mul_pd(uj, u);
                }
            }
        }
        for (int col = wv; col < width; ++col) {
            if (!mrow[col]) continue;
            const double x = x0 + col * step;
            const double u = x * x + y * y;
            if (u > 1.0) continue;
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
                    tail_re[idx] += uj * tr;
                    tail_im[idx] += uj * ti;
                    ++idx;
                    uj *= u;
                }
            }
        }
    }
    for (int i = 0; i < count; ++i) {
        sums_re[i] = hsum(acc_re[i]) + tail_re[i];
        sums_im[i] = hsum(acc_im[i]) + tail_im[i];
    }
}

void matvec(const double* w, const double* x, double* y, int rows, int cols) {
    const int cv = cols & ~3;
    for (int i = 0; i < rows; ++i) {
        const double* wr = w + static_cast<std::size_t>(i) * cols;
        __m256d acc = _mm256_setzero_pd();
        for (int j = 0; j < cv; j += 4)
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(wr + j), _mm256_loadu_pd(x + j), acc);
        double total = hsum(acc);
        for (int j = cv; j < cols; ++j) total += wr[j] * x[j];
        y[i] = total;
    }
}

void matvec_t_add(const double* w, const double* g, double* y, int rows, int cols) {
    const int cv = cols & ~3;
    for (int i = 0; i < rows; ++i) {
        const double gi = g[i];
        if (gi == 0.0) continue;
        const double* wr = w + static_cast<std::size_t>(i) * cols;
        const __m256d vg = _mm256_set1_pd(gi);
        for (int j = 0; j < cv; j += 4)
            _mm256_storeu_pd(y + j, _mm256_fmadd_pd(_mm256_loadu_pd(wr + j), vg,
                                                    _mm256_loadu_pd(y + j)));
        for (int j = cv; j < cols; ++j) y[j] += wr[j] * gi;
    }
}

void binarize_u8(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                 std::uint8_t threshold) {
    const __m256i bias = _mm256_set1_epi8(static_cast<char>(0x80));
    const __m256i tv = _mm256_set1_epi8(static_cast<char>(threshold ^ 0x80));
    const __m256i ones = _mm256_set1_epi8(1);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        const __m256i lt = _mm256_cmpgt_epi8(tv, _mm256_xor_si256(v, bias));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(lt, ones));
    }
    for (; i < n; ++i) dst[i] = src[i] < threshold ? 1 : 0;
}

void dilate3x3_u8(const std::uint8_t* src, std::uint8_t* dst, int width, int height) {
    std::vector<std::uint8_t> tmp(static_cast<std::size_t>(width) + 2, 0);
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* r0 = src + static_cast<std::size_t>(y > 0 ? y - 1 : y) * width;
        const std::uint8_t* r1 = src + static_cast<std::size_t>(y) * width;
        const std::uint8_t* r2 =
            src + static_cast<std::size_t>(y < height - 1 ? y + 1 : y) * width;
        int x = 0;
        for (; x + 32 <= width; x += 32) {
            const __m256i v = _mm256_or_si256(
                _mm256_or_si256(
                    _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r0 + x)),
                    _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r1 + x))),
                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r2 + x)));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(tmp.data() + 1 + x), v);
        }
        for (; x < width; ++x) tmp[1 + x] = r0[x] | r1[x] | r2[x];
        std::uint8_t* out = dst + static_cast<std::size_t>(y) * width;
        x = 0;
        for (; x + 32 <= width; x += 32) {
            const __m256i v = _mm256_or_si256(
                _mm256_or_si256(
                    _mm256_loadu_si256(reinterpret_cast<const __m256i*>(tmp.data() + x)),
                    _mm256_loadu_si256(reinterpret_cast<const __m256i*>(tmp.data() + x + 1))),
                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(tmp.data() + x + 2)));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + x), v);
        }
        for (; x < width; ++x) out[x] = tmp[x] | tmp[x + 1] | tmp[x + 2] ? 1 : 0;
    }
}

}  // namespace floorplan::kernels::avx2
