#include "floorplan/zernike.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "floorplan/kernels.hpp"
#include "floorplan/raster.hpp"

namespace floorplan::zernike {

using geometry::PolygonWithHoles;

std::vector<std::pair<int, int>> index_pairs(int n_max) {
    std::vector<std::pair<int, int>> out;
    for (int n = 0; n <= n_max; ++n)
        for (int m = (n % 2 == 0) ? 0 : 1; m <= n; m += 2) out.emplace_back(n, m);
    return out;
}

std::vector<std::string> feature_names(int n_max) {
    std::vector<std::string> out;
    for (const auto& [n, m] : index_pairs(n_max))
        out.push_back("z_" + std::to_string(n) + "_" + std::to_string(m));
    return out;
}

namespace {

double factorial(int n) {
    static const auto table = [] {
        std::array<double, 35> t{};
        t[0] = 1.0;
        for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
        return t;
    }();
    return table.at(static_cast<std::size_t>(n));
}

// R_nm(rho) = sum_k radial_coefficient(n,m,k) * rho^(n-2k)
double radial_coefficient(int n, int m, int k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * factorial(n - k) /
           (factorial(k) * factorial((n + m) / 2 - k) * factorial((n - m) / 2 - k));
}

void check_indices(int n, int m) {
    if (n < 0 || m < 0 || m > n || (n - m) % 2 != 0)
        throw std::invalid_argument("invalid Zernike indices: require 0 <= m <= n, n - m even");
}

}  // namespace

double radial_polynomial(int n, int m, double rho) {
    check_indices(n, m);
    double acc = 0.0;
    for (int k = 0; k <= (n - m) / 2; ++k)
        acc += radial_coefficient(n, m, k) * std::pow(rho, n - 2 * k);
    return acc;
}

double invariant_ratio(const PolygonWithHoles& p) {
    const double a = geometry::area(p);
    if (a <= 0.0) throw std::invalid_argument("degenerate polygon");
    const geometry::Point c = geometry::centroid(p);
    const PolygonWithHoles centered = geometry::translated(p, -c.x, -c.y);
    const double r = geometry::origin_radius(centered);
    return a / (r * r * M_PI);
}

NormalizedPolygon normalize(const PolygonWithHoles& p, double c, double r) {
    const double a = geometry::area(p);
    if (a <= 0.0) throw std::invalid_argument("degenerate polygon");
    if (c <= 0.0 || r <= 0.0) throw std::invalid_argument("c and r must be positive");
    const geometry::Point ctr = geometry::centroid(p);
    PolygonWithHoles centered = geometry::translated(p, -ctr.x, -ctr.y);
    const double radius = geometry::origin_radius(centered);
    const double ratio = a / (radius * radius * M_PI);

    NormalizedPolygon out;
    out.scale_factor = std::sqrt(c * r * r * M_PI / a);
    out.polygon = geometry::scaled(centered, out.scale_factor);
    out.fully_captured = c <= ratio;
    return out;
}

ZernikeFeatures amplitudes(const NormalizedPolygon& p, const ZernikeConfig& cfg) {
    if (cfg.n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    if (cfg.grid < 32) throw std::invalid_argument("grid must be >= 32");
    const int d = cfg.grid;
    const geometry::BoundingBox window{-1.0, -1.0, 1.0, 1.0};
    const raster::BinaryRaster mask = raster::rasterize_into(p.polygon, d, d, window);

    const double step = 2.0 / d;
    const double origin = -1.0 + 0.5 * step;
    const int count = kernels::monomial_count(cfg.n_max);
    std::vector<double> sums_re(count), sums_im(count);
    kernels::zernike_monomial_sums(mask.bits.data(), d, d, origin, origin, step,
                                   cfg.n_max, sums_re.data(), sums_im.data());

    const double cell_area = step * step;
    ZernikeFeatures out;
    for (const auto& [n, m] : index_pairs(cfg.n_max)) {
        std::complex<double> z{0.0, 0.0};
        for (int k = 0; k <= (n - m) / 2; ++k) {
            const int j = (n - m) / 2 - k;  // power of rho^2 paired with (x-iy)^m
            const int idx = kernels::monomial_index(cfg.n_max, m, j);
            z += radial_coefficient(n, m, k) *
                 std::complex<double>(sums_re[idx], sums_im[idx]);
        }
        z *= (n + 1) / M_PI * cell_area;
        out.amplitudes.push_back(std::abs(z));
    }
    return out;
}

ZernikeFeatures feature_pipeline(const PolygonWithHoles& p, const ZernikeConfig& cfg) {
    return amplitudes(normalize(p, cfg.c, 1.0), cfg);
}

ZernikeFeatures feature_pipeline_raw(const PolygonWithHoles& p, double image_width,
                                     double image_height, const ZernikeConfig& cfg) {
    const double half_diag = 0.5 * std::hypot(image_width, image_height);
    if (half_diag <= 0.0) throw std::invalid_argument("empty image frame");
    const double s = 1.0 / half_diag;
    NormalizedPolygon frame;
    frame.polygon = geometry::scaled(
        geometry::translated(p, -image_width * 0.5, -image_height * 0.5), s);
    frame.scale_factor = s;
    frame.fully_captured = true;
    return amplitudes(frame, cfg);
}

}  // namespace floorplan::zernike
