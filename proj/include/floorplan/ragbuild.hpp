#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floorplan/geometry.hpp"
#include "floorplan/raster.hpp"
#include "floorplan/zernike.hpp"

// Vectorizes the filtered raster into regions and assembles the Region
// Adjacency Graph with per-node features.
namespace floorplan::ragbuild {

enum class ClassLabel : int {
    room = 0,
    wall = 1,
    door = 2,
    window = 3,
    stair = 4,
    object = 5,
    porch = 6,
    outer_space = 7,
};
inline constexpr int kClassCount = 8;
const char* class_name(ClassLabel c);
std::optional<ClassLabel> class_from_name(const std::string& name);

struct Region {
    int id = 0;
    geometry::PolygonWithHoles polygon;
    geometry::Point centroid;
    double area = 0.0;
    bool is_ink = false;
};

struct FeatureVector {
    int degree = 0;
    double area = 0.0;
    std::vector<double> zernike;

    // [degree, area, z_0_0 ... z_n_n]
    std::vector<double> flat() const;
};

struct Edge {
    int a = 0, b = 0;  // a < b
    double weight = 0.0;
};

struct Node {
    Region region;
    FeatureVector features;
    std::optional<ClassLabel> label;
};

struct RegionGraph {
    std::map<int, Node> nodes;
    std::vector<Edge> edges;
    std::string feature_mode = "normalized";  // or "raw"
    zernike::ZernikeConfig zernike_config;

    std::vector<int> neighbors(int id) const;
    double mean_edge_weight() const;
    int degree(int id) const;
};

struct VectorizeResult {
    std::vector<Region> regions;
    raster::LabelRaster labels;  // region ids over the raster, 0 = dropped
    int outer_region_id = 0;     // border-touching background component
};

// Connected components of both ink (8-connected) and background
// (4-connected) become regions; components below min_region_area are
// dropped. Throws when nothing remains.
VectorizeResult vectorize(const raster::BinaryRaster& r, int min_region_area = 4);

// Edge (i, j) iff some pixel of region i 4-neighbors a pixel of region j;
// weight = centroid distance (floored at 1e-6 for concentric regions).
std::vector<Edge> adjacency(const std::vector<Region>& regions,
                            const raster::LabelRaster& labels);

struct BuildConfig {
    int min_region_area = 4;
    zernike::ZernikeConfig zernike;
    std::string feature_mode = "normalized";  // "raw" = image-frame moments
    bool compute_features = true;
};

RegionGraph build_rag(const raster::BinaryRaster& r, const BuildConfig& cfg = {});

struct LabeledPolygon {
    geometry::PolygonWithHoles polygon;
    ClassLabel label = ClassLabel::room;
};

// Each region gets the label of the truth polygon with maximal IoU; ties
// break towards the larger truth polygon, then the lower class index.
// Regions disjoint from every truth polygon become outer_space.
std::map<int, ClassLabel> relabel_by_iou(const std::vector<Region>& regions,
                                         const std::vector<LabeledPolygon>& truth);

void apply_labels(RegionGraph& g, const std::map<int, ClassLabel>& labels);

// Graph file: versioned JSON with nodes, features, optional labels, edges.
void save_graph(const RegionGraph& g, const std::string& path);
RegionGraph load_graph(const std::string& path);
std::string graph_to_json(const RegionGraph& g);
RegionGraph graph_from_json(const std::string& text);

}  // namespace floorplan::ragbuild
