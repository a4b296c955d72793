#include "floorplan/preprocess.hpp"

#include <algorithm>
#include <stdexcept>

#include "floorplan/image_io.hpp"

namespace floorplan::preprocess {

using geometry::MultiPolygon;
using geometry::PolygonWithHoles;
using raster::BinaryRaster;

BinaryRaster mask_text(const BinaryRaster& r, const std::vector<TextBox>& boxes) {
    BinaryRaster out = r;
    for (const TextBox& b : boxes) {
        const int x0 = std::clamp(b.x, 0, r.width);
        const int y0 = std::clamp(b.y, 0, r.height);
        const int x1 = std::clamp(b.x + b.w, 0, r.width);
        const int y1 = std::clamp(b.y + b.h, 0, r.height);
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) out.set(x, y, false);
    }
    return out;
}

PolygonWithHoles largest_contour(const BinaryRaster& r) {
    const std::vector<geometry::LineString> contours = raster::trace_contours(r);
    if (contours.empty()) throw std::runtime_error("no building found");
    PolygonWithHoles p;
    p.exterior = contours.front();
    return p;
}

PolygonWithHoles refine_outline(const PolygonWithHoles& p, double radius,
                                int circle_points) {
    if (radius <= 0.0) return p;
    const MultiPolygon eroded = geometry::buffer(p, -radius, circle_points);
    if (eroded.empty()) throw std::runtime_error("outline too thin");
    std::size_t best = 0;
    double best_area = -1.0;
    for (std::size_t i = 0; i < eroded.polygons.size(); ++i) {
        const double a = geometry::area(eroded.polygons[i]);
        if (a > best_area) {
            best_area = a;
            best = i;
        }
    }
    const MultiPolygon restored = geometry::buffer(eroded.polygons[best], radius, circle_points);
    if (restored.empty()) throw std::runtime_error("outline too thin");
    std::size_t out = 0;
    best_area = -1.0;
    for (std::size_t i = 0; i < restored.polygons.size(); ++i) {
        const double a = geometry::area(restored.polygons[i]);
        if (a > best_area) {
            best_area = a;
            out = i;
        }
    }
    return restored.polygons[out];
}

BinaryRaster filter_building(const BinaryRaster& r, const PolygonWithHoles& outline) {
    const geometry::BoundingBox window{0.0, 0.0, static_cast<double>(r.width),
                                       static_cast<double>(r.height)};
    const BinaryRaster mask = raster::rasterize_into(outline, r.width, r.height, window);
    BinaryRaster out = r;
    for (std::size_t i = 0; i < out.bits.size(); ++i)
        if (!mask.bits[i]) out.bits[i] = 0;
    return out;
}

BinaryRaster preprocess_pipeline(const raster::GrayRaster& img,
                                 const std::vector<TextBox>& boxes,
                                 const PreprocessConfig& cfg) {
    const BinaryRaster binary = raster::binarize(img, cfg.threshold);
    const BinaryRaster masked = mask_text(binary, boxes);
    const BinaryRaster dilated = raster::dilate3x3(masked);
    const PolygonWithHoles contour = largest_contour(dilated);
    const PolygonWithHoles outline =
        refine_outline(contour, cfg.refine_radius, cfg.circle_points);
    const BinaryRaster filtered = filter_building(dilated, outline);
    if (cfg.dump_dir) {
        raster::write_pgm(*cfg.dump_dir + "/binarized.pgm", raster::to_gray(binary));
        raster::write_pgm(*cfg.dump_dir + "/masked.pgm", raster::to_gray(masked));
        raster::write_pgm(*cfg.dump_dir + "/dilated.pgm", raster::to_gray(dilated));
        raster::write_pgm(*cfg.dump_dir + "/filtered.pgm", raster::to_gray(filtered));
    }
    return filtered;
}

std::vector<TextBox> detect_text_boxes_heuristic(const BinaryRaster& r, int max_area,
                                                 int max_extent) {
    const raster::LabelRaster labels = raster::connected_components(r, 8, true);
    std::vector<int> count(labels.label_count + 1, 0);
    std::vector<int> x0(labels.label_count + 1, r.width), y0(labels.label_count + 1, r.height);
    std::vector<int> x1(labels.label_count + 1, -1), y1(labels.label_count + 1, -1);
    for (int y = 0; y < r.height; ++y) {
        for (int x = 0; x < r.width; ++x) {
            const int id = labels.at(x, y);
            if (id == 0) continue;
            ++count[id];
            x0[id] = std::min(x0[id], x);
            y0[id] = std::min(y0[id], y);
            x1[id] = std::max(x1[id], x);
            y1[id] = std::max(y1[id], y);
        }
    }
    std::vector<TextBox> boxes;
    for (int id = 1; id <= labels.label_count; ++id) {
        if (count[id] == 0 || count[id] > max_area) continue;
        if (x1[id] - x0[id] + 1 > max_extent || y1[id] - y0[id] + 1 > max_extent) continue;
        boxes.push_back({x0[id], y0[id], x1[id] - x0[id] + 1, y1[id] - y0[id] + 1});
    }
    return boxes;
}

}  // namespace floorplan::preprocess
