#include "floorplan/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "floorplan/kernels.hpp"

namespace floorplan::raster {

using geometry::LineString;
using geometry::Point;
using geometry::PolygonWithHoles;

std::size_t BinaryRaster::count_foreground() const {
    std::size_t n = 0;
    for (std::uint8_t b : bits) n += b != 0;
    return n;
}

BinaryRaster binarize(const GrayRaster& img, int threshold) {
    BinaryRaster out(img.width, img.height);
    kernels::binarize_u8(img.values.data(), out.bits.data(), img.values.size(),
                         static_cast<std::uint8_t>(std::clamp(threshold, 0, 255)));
    return out;
}

BinaryRaster dilate3x3(const BinaryRaster& r) {
    BinaryRaster out(r.width, r.height);
    if (r.width > 0 && r.height > 0)
        kernels::dilate3x3_u8(r.bits.data(), out.bits.data(), r.width, r.height);
    return out;
}

LabelRaster connected_components(const BinaryRaster& r, int connectivity,
                                 bool foreground) {
    if (connectivity != 4 && connectivity != 8)
        throw std::invalid_argument("connectivity must be 4 or 8");
    LabelRaster out;
    out.width = r.width;
    out.height = r.height;
    out.labels.assign(static_cast<std::size_t>(r.width) * r.height, 0);

    const std::uint8_t want = foreground ? 1 : 0;
    std::vector<std::pair<int, int>> stack;
    int next = 0;
    for (int y = 0; y < r.height; ++y) {
        for (int x = 0; x < r.width; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * r.width + x;
            if ((r.bits[idx] != 0) != (want != 0) || out.labels[idx] != 0) continue;
            ++next;
            out.labels[idx] = next;
            stack.clear();
            stack.emplace_back(x, y);
            while (!stack.empty()) {
                const auto [cx, cy] = stack.back();
                stack.pop_back();
                auto visit = [&](int nx, int ny) {
                    if (nx < 0 || ny < 0 || nx >= r.width || ny >= r.height) return;
                    const std::size_t ni = static_cast<std::size_t>(ny) * r.width + nx;
                    if ((r.bits[ni] != 0) != (want != 0) || out.labels[ni] != 0) return;
                    out.labels[ni] = next;
                    stack.emplace_back(nx, ny);
                };
                visit(cx - 1, cy);
                visit(cx + 1, cy);
                visit(cx, cy - 1);
                visit(cx, cy + 1);
                if (connectivity == 8) {
                    visit(cx - 1, cy - 1);
                    visit(cx + 1, cy - 1);
                    visit(cx - 1, cy + 1);
                    visit(cx + 1, cy + 1);
                }
            }
        }
    }
    out.label_count = next;
    return out;
}

namespace {

// directed boundary edges on lattice corners; directions encode
// N/E/S/W steps so the region keeps a consistent side
enum Dir : std::uint8_t { kEast = 0, kSouth = 1, kWest = 2, kNorth = 3 };

struct BoundaryWalker {
    int cw, ch;  // corner grid dimensions (width+1, height+1)
    // out_edges[corner] bitmask of outgoing directions still unused
    std::vector<std::uint8_t> out;

    explicit BoundaryWalker(int w, int h) : cw(w + 1), ch(h + 1), out(static_cast<std::size_t>(cw) * ch, 0) {}

    std::size_t corner(int x, int y) const { return static_cast<std::size_t>(y) * cw + x; }

    void add(int x, int y, Dir d) { out[corner(x, y)] |= 1u << d; }
    bool has(std::size_t c, Dir d) const { return (out[c] >> d) & 1u; }
    void take(std::size_t c, Dir d) { out[c] &= ~(1u << d); }
};

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

}  // namespace

std::vector<LineString> region_boundary(const LabelRaster& labels, std::int32_t label,
                                        bool join_diagonals) {
    const int w = labels.width, h = labels.height;
    // bbox pass keeps per-region extraction cheap on large rasters
    int x0 = w, y0 = h, x1 = -1, y1 = -1;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (labels.at(x, y) == label) {
                x0 = std::min(x0, x);
                y0 = std::min(y0, y);
                x1 = std::max(x1, x);
                y1 = std::max(y1, y);
            }
    if (x1 < 0) return {};

    auto is_region = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < w && y < h && labels.at(x, y) == label;
    };

    BoundaryWalker walk(w, h);
    std::vector<std::pair<std::size_t, Dir>> seeds;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            if (!is_region(x, y)) continue;
            // edge directions chosen so a solitary cell traces
            // (x,y)->(x+1,y)->(x+1,y+1)->(x,y+1) with positive signed area
            if (!is_region(x, y - 1)) {
                walk.add(x, y, kEast);
                seeds.emplace_back(walk.corner(x, y), kEast);
            }
            if (!is_region(x + 1, y)) walk.add(x + 1, y, kSouth);
            if (!is_region(x, y + 1)) walk.add(x + 1, y + 1, kWest);
            if (!is_region(x - 1, y)) walk.add(x, y + 1, kNorth);
        }
    }

    std::vector<LineString> cycles;
    for (const auto& [seed_corner, seed_dir] : seeds) {
        if (!walk.has(seed_corner, seed_dir)) continue;
        std::vector<Point> ring;
        std::size_t c = seed_corner;
        int cx = static_cast<int>(c % walk.cw), cy = static_cast<int>(c / walk.cw);
        Dir d = seed_dir;
        Dir run_dir = d;
        ring.emplace_back(cx, cy);
        while (true) {
            walk.take(c, d);
            cx += kDx[d];
            cy += kDy[d];
            c = walk.corner(cx, cy);
            // at most two outgoing edges remain consistent with keeping the
            // region on the right: a single forced turn, or the left/right
            // pair at a corner where diagonal cells of the region touch
            const Dir right = static_cast<Dir>((d + 1) & 3);
            const Dir left = static_cast<Dir>((d + 3) & 3);
            Dir next;
            const bool has_r = walk.has(c, right), has_s = walk.has(c, d),
                       has_l = walk.has(c, left);
            if (has_r && has_l) next = join_diagonals ? left : right;
            else if (has_s) next = d;
            else if (has_r) next = right;
            else if (has_l) next = left;
            else break;  // back at the seed corner, cycle closed
            if (next != run_dir) {
                ring.emplace_back(cx, cy);
                run_dir = next;
            }
            d = next;
        }
        if (ring.size() >= 3) {
            LineString ls;
            ls.points = std::move(ring);
            ls.points.push_back(ls.points.front());
            cycles.push_back(std::move(ls));
        }
    }
    return cycles;
}

PolygonWithHoles region_polygon(const LabelRaster& labels, std::int32_t label,
                                bool join_diagonals) {
    std::vector<LineString> cycles = region_boundary(labels, label, join_diagonals);
    if (cycles.empty()) throw std::runtime_error("region has no boundary");
    std::size_t ext = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        const double sa = geometry::signed_area(cycles[i]);
        if (sa > best) {
            best = sa;
            ext = i;
        }
    }
    PolygonWithHoles p;
    p.exterior = std::move(cycles[ext]);
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (i == ext) continue;
        if (geometry::signed_area(cycles[i]) < 0) p.interiors.push_back(std::move(cycles[i]));
    }
    return p;
}

std::vector<LineString> trace_contours(const BinaryRaster& r) {
    const LabelRaster labels = connected_components(r, 8, true);
    std::vector<std::pair<double, LineString>> rings;
    for (int id = 1; id <= labels.label_count; ++id) {
        std::vector<LineString> cycles = region_boundary(labels, id, true);
        double best = -1.0;
        std::size_t ext = 0;
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            const double sa = geometry::signed_area(cycles[i]);
            if (sa > best) {
                best = sa;
                ext = i;
            }
        }
        if (best > 0) rings.emplace_back(best, std::move(cycles[ext]));
    }
    std::stable_sort(rings.begin(), rings.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<LineString> out;
    out.reserve(rings.size());
    for (auto& [a, ring] : rings) out.push_back(std::move(ring));
    return out;
}

BinaryRaster rasterize_into(const PolygonWithHoles& p, int width, int height,
                            const geometry::BoundingBox& window) {
    if (width < 1 || height < 1) throw std::invalid_argument("empty raster grid");
    BinaryRaster out(width, height);
    const double cw = window.width() / width;
    const double ch = window.height() / height;

    std::vector<const LineString*> rings;
    rings.push_back(&p.exterior);
    for (const auto& h : p.interiors) rings.push_back(&h);

    std::vector<double> xs;
    for (int row = 0; row < height; ++row) {
        const double yc = window.min_y + (row + 0.5) * ch;
        xs.clear();
        for (const LineString* ring : rings) {
            const auto& pts = ring->points;
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                const Point& a = pts[i];
                const Point& b = pts[i + 1];
                if ((a.y > yc) != (b.y > yc))
                    xs.push_back(a.x + (yc - a.y) / (b.y - a.y) * (b.x - a.x));
            }
        }
        if (xs.empty()) continue;
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            // pixel centers in [xs[k], xs[k+1])
            int c0 = static_cast<int>(std::ceil((xs[k] - window.min_x) / cw - 0.5));
            int c1 = static_cast<int>(std::floor((xs[k + 1] - window.min_x) / cw - 0.5));
            while (c0 <= c1 && window.min_x + (c0 + 0.5) * cw < xs[k]) ++c0;
            while (c1 >= c0 && window.min_x + (c1 + 0.5) * cw >= xs[k + 1]) --c1;
            c0 = std::max(c0, 0);
            c1 = std::min(c1, width - 1);
            for (int c = c0; c <= c1; ++c) out.set(c, row, true);
        }
    }
    return out;
}

BinaryRaster rasterize(const PolygonWithHoles& p, int grid,
                       const geometry::BoundingBox& window) {
    if (grid < 8) throw std::invalid_argument("grid must be >= 8");
    return rasterize_into(p, grid, grid, window);
}

Point RotationTransform::apply(const Point& p) const {
    const double dx = p.x - center_in.x, dy = p.y - center_in.y;
    return {center_out.x + cos_a * dx - sin_a * dy,
            center_out.y + sin_a * dx + cos_a * dy};
}

RotationTransform rotation_transform(int width, int height, double angle_deg) {
    const double rad = angle_deg * M_PI / 180.0;
    RotationTransform t;
    t.cos_a = std::cos(rad);
    t.sin_a = std::sin(rad);
    const double ac = std::abs(t.cos_a), as = std::abs(t.sin_a);
    t.out_width = static_cast<int>(std::ceil(width * ac + height * as - 1e-9));
    t.out_height = static_cast<int>(std::ceil(width * as + height * ac - 1e-9));
    t.center_in = {width * 0.5, height * 0.5};
    t.center_out = {t.out_width * 0.5, t.out_height * 0.5};
    return t;
}

GrayRaster rotate_expand(const GrayRaster& img, double angle_deg) {
    const RotationTransform t = rotation_transform(img.width, img.height, angle_deg);
    GrayRaster out(t.out_width, t.out_height, 255);
    // inverse map: rotate output centers back into the source image
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            const double vx = (x + 0.5) - t.center_out.x;
            const double vy = (y + 0.5) - t.center_out.y;
            const double sx = t.center_in.x + t.cos_a * vx + t.sin_a * vy;
            const double sy = t.center_in.y - t.sin_a * vx + t.cos_a * vy;
            const double u = sx - 0.5, v = sy - 0.5;
            const int ix = static_cast<int>(std::floor(u));
            const int iy = static_cast<int>(std::floor(v));
            const double fx = u - ix, fy = v - iy;
            auto sample = [&](int px, int py) -> double {
                if (px < 0 || py < 0 || px >= img.width || py >= img.height) return 255.0;
                return img.at(px, py);
            };
            const double val = sample(ix, iy) * (1 - fx) * (1 - fy) +
                               sample(ix + 1, iy) * fx * (1 - fy) +
                               sample(ix, iy + 1) * (1 - fx) * fy +
                               sample(ix + 1, iy + 1) * fx * fy;
            out.set(x, y, static_cast<std::uint8_t>(std::lround(std::clamp(val, 0.0, 255.0))));
        }
    }
    return out;
}

}  // namespace floorplan::raster
