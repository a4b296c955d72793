#pragma once

#include <cstdint>
#include <vector>

#include "floorplan/geometry.hpp"

// Binary/label raster operations: thresholding, dilation, contour tracing,
// connected-component labeling, polygon rasterization and the rotation
// harness. Pixel (x, y) covers the unit square [x, x+1] x [y, y+1]; ring
// vertices produced by tracing sit on integer lattice corners.
namespace floorplan::raster {

struct GrayRaster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> values;  // row-major intensities, 255 = white

    GrayRaster() = default;
    GrayRaster(int w, int h, std::uint8_t fill = 255)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}
    std::uint8_t at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    void set(int x, int y, std::uint8_t v) {
        values[static_cast<std::size_t>(y) * width + x] = v;
    }
};

struct BinaryRaster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // row-major, 1 = foreground/ink

    BinaryRaster() = default;
    BinaryRaster(int w, int h)
        : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}
    bool at(int x, int y) const {
        return bits[static_cast<std::size_t>(y) * width + x] != 0;
    }
    void set(int x, int y, bool v) {
        bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
    }
    std::size_t count_foreground() const;
    bool operator==(const BinaryRaster& o) const = default;
};

struct LabelRaster {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;  // 0 = unlabeled, ids start at 1
    int label_count = 0;

    std::int32_t at(int x, int y) const {
        return labels[static_cast<std::size_t>(y) * width + x];
    }
};

// Foreground iff intensity < threshold (ink is dark).
BinaryRaster binarize(const GrayRaster& img, int threshold);

// 3x3 dilation with clamped borders.
BinaryRaster dilate3x3(const BinaryRaster& r);

// Labels maximal connected regions of the given binary value (foreground
// by default); ids are assigned in raster-scan order of each region's
// first pixel.
LabelRaster connected_components(const BinaryRaster& r, int connectivity,
                                 bool foreground = true);

// Boundary cycles of one labeled region as closed rings on lattice
// corners. The exterior comes back with positive signed area, holes
// negative; collinear runs are merged. join_diagonals must match the
// connectivity the labels were produced with (8 -> true, 4 -> false).
std::vector<geometry::LineString> region_boundary(const LabelRaster& labels,
                                                  std::int32_t label,
                                                  bool join_diagonals);
geometry::PolygonWithHoles region_polygon(const LabelRaster& labels,
                                          std::int32_t label, bool join_diagonals);

// Outer contours of all 8-connected foreground components, ordered by
// descending enclosed area (ties by scan order of the component).
std::vector<geometry::LineString> trace_contours(const BinaryRaster& r);

// Samples pixel centers of a width x height grid over the window; a pixel
// is set iff its center lies inside the polygon (even-odd, holes excluded).
BinaryRaster rasterize_into(const geometry::PolygonWithHoles& p, int width,
                            int height, const geometry::BoundingBox& window);
BinaryRaster rasterize(const geometry::PolygonWithHoles& p, int grid,
                       const geometry::BoundingBox& window);

// Rotation about the image center with the canvas grown to the rotated
// bounding box; new pixels are white. Bilinear sampling.
struct RotationTransform {
    double cos_a = 1.0, sin_a = 0.0;
    geometry::Point center_in;
    geometry::Point center_out;
    int out_width = 0, out_height = 0;
    geometry::Point apply(const geometry::Point& p) const;
};
RotationTransform rotation_transform(int width, int height, double angle_deg);
GrayRaster rotate_expand(const GrayRaster& img, double angle_deg);

inline geometry::PolygonWithHoles rotate_polygon(const geometry::PolygonWithHoles& p,
                                                 double angle_deg,
                                                 const geometry::Point& center) {
    return geometry::rotated(p, angle_deg, center);
}

}  // namespace floorplan::raster
