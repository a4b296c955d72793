#pragma once

#include <string>
#include <utility>
#include <vector>

#include "floorplan/geometry.hpp"

// Normalized Zernike-moment features: centroid translation, invariant-ratio
// scaling, amplitude computation up to order n_max with repetition m >= 0.
namespace floorplan::zernike {

struct ZernikeConfig {
    int n_max = 6;
    double c = 1.0 / 80.0;  // invariant-ratio target for the scaled area c*r^2*pi
    int grid = 256;         // unit-disk raster resolution D
};

// Amplitudes ordered lexicographically by (n, m), m >= 0, n - m even.
// 16 entries for n_max = 6.
struct ZernikeFeatures {
    std::vector<double> amplitudes;
};

std::vector<std::pair<int, int>> index_pairs(int n_max);
std::vector<std::string> feature_names(int n_max);

// Polygon scaled so its area equals c*r^2*pi, centroid at the origin.
// fully_captured is true iff the scaled polygon lies inside the radius-r
// circle, equivalently c <= invariant_ratio(original).
struct NormalizedPolygon {
    geometry::PolygonWithHoles polygon;
    double scale_factor = 1.0;  // F_P
    bool fully_captured = true;
};

// area(centered p) / (origin_radius(centered p)^2 * pi), in (0, 1].
double invariant_ratio(const geometry::PolygonWithHoles& p);

NormalizedPolygon normalize(const geometry::PolygonWithHoles& p, double c, double r = 1.0);

// R_nm(rho) by the direct factorial sum; throws on parity violation.
double radial_polynomial(int n, int m, double rho);

// Rasterizes the normalized polygon on a grid x grid window over [-r, r]^2
// (r = 1 in normalized space) and integrates against the Zernike basis;
// pixels with rho > 1 are excluded, which clips polygons that are not
// fully captured.
ZernikeFeatures amplitudes(const NormalizedPolygon& p, const ZernikeConfig& cfg);

// normalize then amplitudes.
ZernikeFeatures feature_pipeline(const geometry::PolygonWithHoles& p,
                                 const ZernikeConfig& cfg);

// No-normalization baseline: moments of the polygon in the fixed image
// frame (image center to disk center, half-diagonal to radius 1); no
// per-polygon translation or scaling.
ZernikeFeatures feature_pipeline_raw(const geometry::PolygonWithHoles& p,
                                     double image_width, double image_height,
                                     const ZernikeConfig& cfg);

}  // namespace floorplan::zernike
