#include "floorplan/ragbuild.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace floorplan::ragbuild {

using geometry::PolygonWithHoles;
using nlohmann::json;

const char* class_name(ClassLabel c) {
    switch (c) {
        case ClassLabel::room: return "room";
        case ClassLabel::wall: return "wall";
        case ClassLabel::door: return "door";
        case ClassLabel::window: return "window";
        case ClassLabel::stair: return "stair";
        case ClassLabel::object: return "object";
        case ClassLabel::porch: return "porch";
        case ClassLabel::outer_space: return "outer_space";
    }
    return "?";
}

std::optional<ClassLabel> class_from_name(const std::string& name) {
    for (int i = 0; i < kClassCount; ++i)
        if (name == class_name(static_cast<ClassLabel>(i)))
            return static_cast<ClassLabel>(i);
    return std::nullopt;
}

std::vector<double> FeatureVector::flat() const {
    std::vector<double> out;
    out.reserve(2 + zernike.size());
    out.push_back(static_cast<double>(degree));
    out.push_back(area);
    out.insert(out.end(), zernike.begin(), zernike.end());
    return out;
}

std::vector<int> RegionGraph::neighbors(int id) const {
    std::vector<int> out;
    for (const Edge& e : edges) {
        if (e.a == id) out.push_back(e.b);
        else if (e.b == id) out.push_back(e.a);
    }
    return out;
}

double RegionGraph::mean_edge_weight() const {
    if (edges.empty()) return 1.0;
    double acc = 0.0;
    for (const Edge& e : edges) acc += e.weight;
    return acc / static_cast<double>(edges.size());
}

int RegionGraph::degree(int id) const {
    int d = 0;
    for (const Edge& e : edges) d += (e.a == id) + (e.b == id);
    return d;
}

VectorizeResult vectorize(const raster::BinaryRaster& r, int min_region_area) {
    const raster::LabelRaster ink = raster::connected_components(r, 8, true);
    const raster::LabelRaster paper = raster::connected_components(r, 4, false);
    if (ink.label_count == 0 && paper.label_count == 0)
        throw std::runtime_error("no components to vectorize");

    // merge the two labelings into one id space, ids by scan order
    VectorizeResult out;
    out.labels.width = r.width;
    out.labels.height = r.height;
    out.labels.labels.assign(r.bits.size(), 0);
    std::vector<std::int32_t> ink_map(ink.label_count + 1, 0);
    std::vector<std::int32_t> paper_map(paper.label_count + 1, 0);
    std::vector<bool> id_is_ink;
    id_is_ink.push_back(false);  // id 0 unused
    std::vector<std::int64_t> pixel_count(1, 0);
    int next = 0;
    for (std::size_t i = 0; i < r.bits.size(); ++i) {
        std::int32_t mapped;
        if (r.bits[i]) {
            std::int32_t& slot = ink_map[ink.labels[i]];
            if (slot == 0) {
                slot = ++next;
                id_is_ink.push_back(true);
                pixel_count.push_back(0);
            }
            mapped = slot;
        } else {
            std::int32_t& slot = paper_map[paper.labels[i]];
            if (slot == 0) {
                slot = ++next;
                id_is_ink.push_back(false);
                pixel_count.push_back(0);
            }
            mapped = slot;
        }
        out.labels.labels[i] = mapped;
        ++pixel_count[mapped];
    }
    out.labels.label_count = next;

    // border-touching background component with the first border pixel
    for (int x = 0; x < r.width && out.outer_region_id == 0; ++x) {
        if (!r.at(x, 0)) out.outer_region_id = out.labels.at(x, 0);
        else if (!r.at(x, r.height - 1)) out.outer_region_id = out.labels.at(x, r.height - 1);
    }
    for (int y = 0; y < r.height && out.outer_region_id == 0; ++y) {
        if (!r.at(0, y)) out.outer_region_id = out.labels.at(0, y);
        else if (!r.at(r.width - 1, y)) out.outer_region_id = out.labels.at(r.width - 1, y);
    }

    std::vector<bool> kept(next + 1, false);
    for (int id = 1; id <= next; ++id) {
        if (pixel_count[id] < min_region_area && id != out.outer_region_id) continue;
        kept[id] = true;
        Region region;
        region.id = id;
        region.is_ink = id_is_ink[id];
        region.polygon = raster::region_polygon(out.labels, id, region.is_ink);
        region.area = geometry::area(region.polygon);
        region.centroid = geometry::centroid(region.polygon);
        out.regions.push_back(std::move(region));
    }
    for (std::int32_t& l : out.labels.labels)
        if (l != 0 && !kept[l]) l = 0;
    if (out.regions.empty()) throw std::runtime_error("no components to vectorize");
    return out;
}

std::vector<Edge> adjacency(const std::vector<Region>& regions,
                            const raster::LabelRaster& labels) {
    std::map<int, const Region*> by_id;
    for (const Region& r : regions) by_id[r.id] = &r;
    std::set<std::pair<int, int>> pairs;
    for (int y = 0; y < labels.height; ++y) {
        for (int x = 0; x < labels.width; ++x) {
            const std::int32_t a = labels.at(x, y);
            if (a == 0) continue;
            auto touch = [&](std::int32_t b) {
                if (b == 0 || b == a) return;
                pairs.emplace(std::min(a, b), std::max(a, b));
            };
            if (x + 1 < labels.width) touch(labels.at(x + 1, y));
            if (y + 1 < labels.height) touch(labels.at(x, y + 1));
        }
    }
    std::vector<Edge> edges;
    for (const auto& [a, b] : pairs) {
        const auto ia = by_id.find(a);
        const auto ib = by_id.find(b);
        if (ia == by_id.end() || ib == by_id.end()) continue;
        const double d = geometry::distance(ia->second->centroid, ib->second->centroid);
        edges.push_back({a, b, std::max(d, 1e-6)});
    }
    return edges;
}

RegionGraph build_rag(const raster::BinaryRaster& r, const BuildConfig& cfg) {
    VectorizeResult vec = vectorize(r, cfg.min_region_area);
    RegionGraph g;
    g.feature_mode = cfg.feature_mode;
    g.zernike_config = cfg.zernike;
    g.edges = adjacency(vec.regions, vec.labels);

    std::map<int, int> degree;
    for (const Edge& e : g.edges) {
        ++degree[e.a];
        ++degree[e.b];
    }
    for (Region& region : vec.regions) {
        Node node;
        node.features.degree = degree.count(region.id) ? degree[region.id] : 0;
        node.features.area = region.area;
        if (cfg.compute_features) {
            if (cfg.feature_mode == "raw")
                node.features.zernike =
                    zernike::feature_pipeline_raw(region.polygon, r.width, r.height,
                                                  cfg.zernike)
                        .amplitudes;
            else
                node.features.zernike =
                    zernike::feature_pipeline(region.polygon, cfg.zernike).amplitudes;
        }
        node.region = std::move(region);
        g.nodes.emplace(node.region.id, std::move(node));
    }
    return g;
}

std::map<int, ClassLabel> relabel_by_iou(const std::vector<Region>& regions,
                                         const std::vector<LabeledPolygon>& truth) {
    if (truth.empty()) throw std::invalid_argument("empty truth set");
    std::map<int, ClassLabel> out;
    for (const Region& region : regions) {
        double best_iou = 0.0;
        double best_area = -1.0;
        int best_class = kClassCount;
        for (const LabeledPolygon& t : truth) {
            const double v = geometry::iou(region.polygon, t.polygon);
            if (v <= 0.0) continue;
            const double ta = geometry::area(t.polygon);
            const int tc = static_cast<int>(t.label);
            if (v > best_iou ||
                (v == best_iou && (ta > best_area || (ta == best_area && tc < best_class)))) {
                best_iou = v;
                best_area = ta;
                best_class = tc;
            }
        }
        out[region.id] = best_iou > 0.0 ? static_cast<ClassLabel>(best_class)
                                        : ClassLabel::outer_space;
    }
    return out;
}

void apply_labels(RegionGraph& g, const std::map<int, ClassLabel>& labels) {
    for (auto& [id, node] : g.nodes) {
        const auto it = labels.find(id);
        if (it != labels.end()) node.label = it->second;
    }
}

namespace {

json ring_to_json(const geometry::LineString& ring) {
    json arr = json::array();
    for (const auto& p : ring.points) arr.push_back(json::array({p.x, p.y}));
    return arr;
}

geometry::LineString ring_from_json(const json& arr) {
    geometry::LineString out;
    for (const auto& p : arr) out.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return out;
}

json polygon_to_json(const PolygonWithHoles& p) {
    json holes = json::array();
    for (const auto& h : p.interiors) holes.push_back(ring_to_json(h));
    return json{{"exterior", ring_to_json(p.exterior)}, {"holes", holes}};
}

PolygonWithHoles polygon_from_json(const json& j) {
    PolygonWithHoles p;
    p.exterior = ring_from_json(j.at("exterior"));
    for (const auto& h : j.at("holes")) p.interiors.push_back(ring_from_json(h));
    return p;
}

}  // namespace

std::string graph_to_json(const RegionGraph& g) {
    json nodes = json::array();
    for (const auto& [id, node] : g.nodes) {
        json n{{"id", id},
               {"degree", node.features.degree},
               {"area", node.features.area},
               {"zernike", node.features.zernike},
               {"centroid", json::array({node.region.centroid.x, node.region.centroid.y})},
               {"is_ink", node.region.is_ink},
               {"polygon", polygon_to_json(node.region.polygon)}};
        if (node.label) n["label"] = static_cast<int>(*node.label);
        nodes.push_back(std::move(n));
    }
    json edges = json::array();
    for (const Edge& e : g.edges) edges.push_back(json::array({e.a, e.b, e.weight}));
    json classes = json::array();
    for (int i = 0; i < kClassCount; ++i) classes.push_back(class_name(static_cast<ClassLabel>(i)));
    const json doc{{"format_version", 1},
                   {"feature_mode", g.feature_mode},
                   {"zernike",
                    {{"n_max", g.zernike_config.n_max},
                     {"c", g.zernike_config.c},
                     {"grid", g.zernike_config.grid}}},
                   {"classes", classes},
                   {"nodes", nodes},
                   {"edges", edges}};
    return doc.dump(2);
}

RegionGraph graph_from_json(const std::string& text) {
    const json doc = json::parse(text);
    if (doc.at("format_version").get<int>() != 1)
        throw std::runtime_error("unsupported graph format_version");
    RegionGraph g;
    g.feature_mode = doc.value("feature_mode", "normalized");
    if (doc.contains("zernike")) {
        g.zernike_config.n_max = doc["zernike"].value("n_max", 6);
        g.zernike_config.c = doc["zernike"].value("c", 1.0 / 80.0);
        g.zernike_config.grid = doc["zernike"].value("grid", 256);
    }
    for (const auto& n : doc.at("nodes")) {
        Node node;
        node.region.id = n.at("id").get<int>();
        node.features.degree = n.at("degree").get<int>();
        node.features.area = n.at("area").get<double>();
        node.features.zernike = n.at("zernike").get<std::vector<double>>();
        node.region.centroid = {n.at("centroid").at(0).get<double>(),
                                n.at("centroid").at(1).get<double>()};
        node.region.is_ink = n.value("is_ink", false);
        node.region.polygon = polygon_from_json(n.at("polygon"));
        node.region.area = node.features.area;
        if (n.contains("label"))
            node.label = static_cast<ClassLabel>(n.at("label").get<int>());
        g.nodes.emplace(node.region.id, std::move(node));
    }
    for (const auto& e : doc.at("edges"))
        g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    return g;
}

void save_graph(const RegionGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << graph_to_json(g);
    if (!out) throw std::runtime_error(path + ": write failed");
}

RegionGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return graph_from_json(text);
}

}  // namespace floorplan::ragbuild
