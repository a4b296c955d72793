#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floorplan/geometry.hpp"
#include "floorplan/raster.hpp"

// Building-filter chain: mask text boxes, dilate, find the largest contour,
// refine it by debuff/buff, whiten the complement.
namespace floorplan::preprocess {

struct TextBox {
    int x = 0, y = 0, w = 0, h = 0;
};

struct PreprocessConfig {
    int threshold = 128;
    double refine_radius = 5.0;
    int circle_points = 64;
    // when set, intermediate rasters are written there for inspection
    std::optional<std::string> dump_dir;
};

// All pixels inside any box forced to background.
raster::BinaryRaster mask_text(const raster::BinaryRaster& r,
                               const std::vector<TextBox>& boxes);

// Outer contour enclosing maximal area as a hole-free polygon; ties broken
// by raster-scan order. Throws std::runtime_error("no building found") on
// an empty raster.
geometry::PolygonWithHoles largest_contour(const raster::BinaryRaster& r);

// Morphological opening (debuff then buff); if erosion splits the outline
// the largest piece is kept. Throws "outline too thin" when erosion
// empties the polygon.
geometry::PolygonWithHoles refine_outline(const geometry::PolygonWithHoles& p,
                                          double radius = 5.0, int circle_points = 64);

// Pixels outside the outline forced to background.
raster::BinaryRaster filter_building(const raster::BinaryRaster& r,
                                     const geometry::PolygonWithHoles& outline);

// binarize -> mask_text -> dilate3x3 -> largest_contour -> refine_outline
// -> filter_building.
raster::BinaryRaster preprocess_pipeline(const raster::GrayRaster& img,
                                         const std::vector<TextBox>& boxes,
                                         const PreprocessConfig& cfg = {});

// Heuristic substitute for OCR text detection: boxes around small isolated
// ink components. Only a fallback; real box lists come from the sidecar
// JSON file.
std::vector<TextBox> detect_text_boxes_heuristic(const raster::BinaryRaster& r,
                                                 int max_area = 64,
                                                 int max_extent = 14);

}  // namespace floorplan::preprocess
