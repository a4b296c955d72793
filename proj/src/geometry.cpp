#include "floorplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/linestring.hpp>
#include <boost/geometry/geometries/multi_linestring.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

namespace bg = boost::geometry;

namespace floorplan::geometry {

namespace {

using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, false, true>;  // ccw, closed
using BgMultiPolygon = bg::model::multi_polygon<BgPolygon>;
using BgLineString = bg::model::linestring<BgPoint>;
using BgMultiLineString = bg::model::multi_linestring<BgLineString>;

constexpr double kDegenerateEps = 1e-12;
constexpr double kSliverArea = 1e-7;

BgPolygon to_bg(const PolygonWithHoles& p) {
    BgPolygon out;
    for (const Point& pt : p.exterior.points) out.outer().emplace_back(pt.x, pt.y);
    out.inners().resize(p.interiors.size());
    for (std::size_t i = 0; i < p.interiors.size(); ++i)
        for (const Point& pt : p.interiors[i].points)
            out.inners()[i].emplace_back(pt.x, pt.y);
    bg::correct(out);
    return out;
}

BgMultiPolygon to_bg(const MultiPolygon& mp) {
    BgMultiPolygon out;
    for (const auto& p : mp.polygons) out.push_back(to_bg(p));
    return out;
}

LineString ring_from_bg(const BgPolygon::ring_type& ring) {
    LineString out;
    out.points.reserve(ring.size());
    for (const auto& pt : ring) out.points.emplace_back(bg::get<0>(pt), bg::get<1>(pt));
    return out;
}

MultiPolygon from_bg(const BgMultiPolygon& mp, double min_area = kSliverArea) {
    MultiPolygon out;
    for (const auto& poly : mp) {
        if (std::abs(bg::area(poly)) < min_area) continue;
        PolygonWithHoles p;
        p.exterior = ring_from_bg(poly.outer());
        if (p.exterior.points.size() < 4) continue;
        for (const auto& inner : poly.inners()) {
            LineString hole = ring_from_bg(inner);
            if (hole.points.size() >= 4 && std::abs(signed_area(hole)) >= min_area)
                p.interiors.push_back(std::move(hole));
        }
        out.polygons.push_back(std::move(p));
    }
    return out;
}

double ring_signed_area(const std::vector<Point>& pts) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        acc += cross(pts[i], pts[i + 1]);
    return acc * 0.5;
}

}  // namespace

Segment::Segment(Point pa, Point pb) : a(pa), b(pb) {
    if (distance(pa, pb) < kDegenerateEps)
        throw std::invalid_argument("zero-length segment");
}

LineString make_ring(std::vector<Point> pts, bool counter_clockwise) {
    std::vector<Point> clean;
    clean.reserve(pts.size() + 1);
    for (const Point& p : pts) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("non-finite ring coordinate");
        if (clean.empty() || distance(clean.back(), p) > kDegenerateEps)
            clean.push_back(p);
    }
    while (clean.size() > 1 && distance(clean.front(), clean.back()) <= kDegenerateEps)
        clean.pop_back();
    if (clean.size() < 3) throw std::invalid_argument("degenerate ring");
    clean.push_back(clean.front());
    const double sa = ring_signed_area(clean);
    if (std::abs(sa) < kDegenerateEps) throw std::invalid_argument("zero-area ring");
    if ((sa > 0) != counter_clockwise) std::reverse(clean.begin(), clean.end());
    return LineString(std::move(clean));
}

PolygonWithHoles make_polygon(std::vector<Point> exterior,
                              std::vector<std::vector<Point>> holes) {
    PolygonWithHoles p;
    p.exterior = make_ring(std::move(exterior), true);
    for (auto& h : holes) p.interiors.push_back(make_ring(std::move(h), false));
    return p;
}

PolygonWithHoles make_rect(double x0, double y0, double x1, double y1) {
    return make_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

double signed_area(const LineString& ring) { return ring_signed_area(ring.points); }

double area(const PolygonWithHoles& p) {
    if (p.exterior.points.size() < 4) throw std::invalid_argument("degenerate ring");
    double a = std::abs(signed_area(p.exterior));
    for (const auto& h : p.interiors) a -= std::abs(signed_area(h));
    return a;
}

double area(const MultiPolygon& mp) {
    double a = 0.0;
    for (const auto& p : mp.polygons) a += area(p);
    return a;
}

Point centroid(const PolygonWithHoles& p) {
    // area-weighted over all rings; hole rings carry negative signed area
    double a_total = 0.0, cx = 0.0, cy = 0.0;
    auto add_ring = [&](const LineString& ring, double sign) {
        const double sa = sign * std::abs(signed_area(ring));
        double rx = 0.0, ry = 0.0;
        const auto& pts = ring.points;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double w = cross(pts[i], pts[i + 1]);
            rx += (pts[i].x + pts[i + 1].x) * w;
            ry += (pts[i].y + pts[i + 1].y) * w;
        }
        // ring orientation already encodes its sign through w; normalize to
        // the ring's own orientation, then apply the exterior/hole sign
        const double ring_sa = signed_area(ring);
        if (std::abs(ring_sa) < kDegenerateEps) return;
        rx /= 6.0 * ring_sa;
        ry /= 6.0 * ring_sa;
        a_total += sa;
        cx += rx * sa;
        cy += ry * sa;
    };
    add_ring(p.exterior, 1.0);
    for (const auto& h : p.interiors) add_ring(h, -1.0);
    if (std::abs(a_total) < kDegenerateEps) throw std::invalid_argument("zero-area polygon");
    return {cx / a_total, cy / a_total};
}

double origin_radius(const PolygonWithHoles& p) {
    double r2 = 0.0;
    for (const Point& pt : p.exterior.points)
        r2 = std::max(r2, pt.x * pt.x + pt.y * pt.y);
    return std::sqrt(r2);
}

namespace {

// Minkowski buffer through the boundary identity: dilation adds the disk
// neighborhood of the boundary, erosion removes it. Only linestring
// buffering is used from the backend.
BgMultiPolygon boundary_disk(const MultiPolygon& mp, double radius, int circle_points) {
    bg::strategy::buffer::distance_symmetric<double> dist(radius);
    bg::strategy::buffer::side_straight side;
    bg::strategy::buffer::join_round join(circle_points);
    bg::strategy::buffer::end_round end(circle_points);
    bg::strategy::buffer::point_circle circle(circle_points);

    BgMultiPolygon acc;
    auto add_ring = [&](const LineString& ring) {
        BgLineString ls;
        for (const Point& pt : ring.points) ls.emplace_back(pt.x, pt.y);
        BgMultiPolygon piece;
        bg::buffer(ls, piece, dist, side, join, end, circle);
        if (acc.empty()) {
            acc = std::move(piece);
        } else {
            BgMultiPolygon merged;
            bg::union_(acc, piece, merged);
            acc = std::move(merged);
        }
    };
    for (const auto& p : mp.polygons) {
        add_ring(p.exterior);
        for (const auto& h : p.interiors) add_ring(h);
    }
    return acc;
}

}  // namespace

MultiPolygon buffer(const MultiPolygon& mp, double radius, int circle_points) {
    if (mp.empty() || radius == 0.0) return mp;
    const BgMultiPolygon base = to_bg(mp);
    const BgMultiPolygon rim = boundary_disk(mp, std::abs(radius), circle_points);
    BgMultiPolygon result;
    if (radius > 0)
        bg::union_(base, rim, result);
    else
        bg::difference(base, rim, result);
    return from_bg(result);
}

MultiPolygon buffer(const PolygonWithHoles& p, double radius, int circle_points) {
    return buffer(to_multi(p), radius, circle_points);
}

double point_segment_distance(const Point& pt, const Point& a, const Point& b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 < kDegenerateEps * kDegenerateEps) return distance(pt, a);
    const double t = std::clamp(dot(pt - a, ab) / len2, 0.0, 1.0);
    return distance(pt, a + ab * t);
}

namespace {

void dp_recurse(const std::vector<Point>& pts, std::size_t lo, std::size_t hi,
                double eps, std::vector<bool>& keep) {
    if (hi <= lo + 1) return;
    double max_d = -1.0;
    std::size_t max_i = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
        const double d = point_segment_distance(pts[i], pts[lo], pts[hi]);
        if (d > max_d) {
            max_d = d;
            max_i = i;
        }
    }
    if (max_d > eps) {
        keep[max_i] = true;
        dp_recurse(pts, lo, max_i, eps, keep);
        dp_recurse(pts, max_i, hi, eps, keep);
    }
}

std::vector<Point> dp_open(const std::vector<Point>& pts, double eps) {
    std::vector<bool> keep(pts.size(), false);
    keep.front() = keep.back() = true;
    dp_recurse(pts, 0, pts.size() - 1, eps, keep);
    std::vector<Point> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (keep[i]) out.push_back(pts[i]);
    return out;
}

}  // namespace

LineString douglas_peucker(const LineString& ls, double eps) {
    if (eps < 0) throw std::invalid_argument("negative epsilon");
    if (eps == 0.0 || ls.points.size() <= 2) return ls;
    if (!ls.closed()) return LineString(dp_open(ls.points, eps));

    // closed ring: split at two mutually extreme vertices, simplify both
    // chains, rejoin
    std::vector<Point> pts(ls.points.begin(), ls.points.end() - 1);
    const std::size_t n = pts.size();
    std::size_t i1 = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (distance(pts[i], pts[0]) > distance(pts[i1], pts[0])) i1 = i;
    std::size_t i2 = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (distance(pts[i], pts[i1]) > distance(pts[i2], pts[i1])) i2 = i;
    if (i1 > i2) std::swap(i1, i2);
    if (i1 == i2) return ls;

    std::vector<Point> chain1(pts.begin() + i1, pts.begin() + i2 + 1);
    std::vector<Point> chain2(pts.begin() + i2, pts.end());
    chain2.insert(chain2.end(), pts.begin(), pts.begin() + i1 + 1);
    std::vector<Point> s1 = dp_open(chain1, eps);
    std::vector<Point> s2 = dp_open(chain2, eps);
    std::vector<Point> joined(s1.begin(), s1.end() - 1);
    joined.insert(joined.end(), s2.begin(), s2.end() - 1);
    if (joined.size() < 3) return ls;
    joined.push_back(joined.front());
    const double sa = ring_signed_area(joined);
    if (std::abs(sa) < kDegenerateEps) return ls;
    return LineString(std::move(joined));
}

ShortestLine shortest_line(const Point& pt, const Segment& seg) {
    const Point ab = seg.direction();
    const double t = std::clamp(dot(pt - seg.a, ab) / dot(ab, ab), 0.0, 1.0);
    const Point closest = seg.a + ab * t;
    return {pt, closest, distance(pt, closest)};
}

namespace {

inline double orient(const Point& a, const Point& b, const Point& c) {
    return cross(b - a, c - a);
}

}  // namespace

bool segments_cross(const Segment& s1, const Segment& s2) {
    const double d1 = orient(s2.a, s2.b, s1.a);
    const double d2 = orient(s2.a, s2.b, s1.b);
    const double d3 = orient(s1.a, s1.b, s2.a);
    const double d4 = orient(s1.a, s1.b, s2.b);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

PolygonWithHoles convex_hull_points(const std::vector<Point>& pts) {
    std::vector<Point> p(pts);
    std::sort(p.begin(), p.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 3) throw std::invalid_argument("convex hull needs 3 distinct points");
    std::vector<Point> hull(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
        hull[k++] = p[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        while (k >= lower && orient(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
        hull[k++] = p[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw std::invalid_argument("all points collinear");
    return make_polygon(std::move(hull));
}

PolygonWithHoles convex_hull(const std::vector<Segment>& segs) {
    std::vector<Point> pts;
    pts.reserve(segs.size() * 2);
    for (const Segment& s : segs) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    return convex_hull_points(pts);
}

namespace {

bool point_in_ring(const Point& pt, const LineString& ring) {
    bool in = false;
    const auto& pts = ring.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Point& a = pts[i];
        const Point& b = pts[i + 1];
        if ((a.y > pt.y) != (b.y > pt.y)) {
            const double x = a.x + (pt.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (x > pt.x) in = !in;
        }
    }
    return in;
}

bool on_polygon_boundary(const Point& pt, const PolygonWithHoles& p, double tol) {
    auto on_ring = [&](const LineString& ring) {
        const auto& pts = ring.points;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (point_segment_distance(pt, pts[i], pts[i + 1]) <= tol) return true;
        return false;
    };
    if (on_ring(p.exterior)) return true;
    for (const auto& h : p.interiors)
        if (on_ring(h)) return true;
    return false;
}

bool point_in_polygon_closed(const Point& pt, const PolygonWithHoles& p, double tol) {
    if (on_polygon_boundary(pt, p, tol)) return true;
    if (!point_in_ring(pt, p.exterior)) return false;
    for (const auto& h : p.interiors)
        if (point_in_ring(pt, h)) return false;
    return true;
}

}  // namespace

bool contains(const MultiPolygon& mp, const Point& pt, double boundary_tol) {
    for (const auto& p : mp.polygons)
        if (point_in_polygon_closed(pt, p, boundary_tol)) return true;
    return false;
}

bool contains(const MultiPolygon& mp, const Segment& seg, int sample_count) {
    for (const auto& p : mp.polygons) {
        auto crosses_ring = [&](const LineString& ring) {
            const auto& pts = ring.points;
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                if (distance(pts[i], pts[i + 1]) < kDegenerateEps) continue;
                if (segments_cross(seg, Segment(pts[i], pts[i + 1]))) return true;
            }
            return false;
        };
        if (crosses_ring(p.exterior)) return false;
        for (const auto& h : p.interiors)
            if (crosses_ring(h)) return false;
    }
    for (int i = 0; i < sample_count; ++i) {
        const double t = (i + 0.5) / sample_count;
        const Point sample = seg.a + seg.direction() * t;
        if (!contains(mp, sample, 1e-9)) return false;
    }
    return true;
}

double angle_between(const Segment& s1, const Segment& s2) {
    const Point d1 = s1.direction();
    const Point d2 = s2.direction();
    const double l1 = d1.norm(), l2 = d2.norm();
    if (l1 < kDegenerateEps || l2 < kDegenerateEps)
        throw std::invalid_argument("degenerate segment");
    const double c = std::clamp(std::abs(dot(d1, d2)) / (l1 * l2), 0.0, 1.0);
    return std::acos(c) * 180.0 / M_PI;
}

MultiPolygon to_multi(const PolygonWithHoles& p) {
    MultiPolygon mp;
    mp.polygons.push_back(p);
    return mp;
}

MultiPolygon union_(const MultiPolygon& a, const MultiPolygon& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    BgMultiPolygon out;
    bg::union_(to_bg(a), to_bg(b), out);
    return from_bg(out);
}

MultiPolygon intersection(const MultiPolygon& a, const MultiPolygon& b) {
    if (a.empty() || b.empty()) return {};
    BgMultiPolygon out;
    bg::intersection(to_bg(a), to_bg(b), out);
    return from_bg(out);
}

MultiPolygon difference(const MultiPolygon& a, const MultiPolygon& b) {
    if (a.empty()) return {};
    if (b.empty()) return a;
    BgMultiPolygon out;
    bg::difference(to_bg(a), to_bg(b), out);
    return from_bg(out);
}

double iou(const PolygonWithHoles& a, const PolygonWithHoles& b) {
    const BgPolygon pa = to_bg(a), pb = to_bg(b);
    BgMultiPolygon inter;
    bg::intersection(pa, pb, inter);
    const double ai = bg::area(inter);
    if (ai <= 0.0) return 0.0;
    const double au = bg::area(pa) + bg::area(pb) - ai;
    return au > 0.0 ? ai / au : 0.0;
}

double polygon_distance(const PolygonWithHoles& a, const PolygonWithHoles& b) {
    return bg::distance(to_bg(a), to_bg(b));
}

double shared_boundary_length(const PolygonWithHoles& a, const PolygonWithHoles& b) {
    auto edges = [](const PolygonWithHoles& p) {
        std::vector<std::pair<Point, Point>> out;
        auto add = [&](const LineString& ring) {
            for (std::size_t i = 0; i + 1 < ring.points.size(); ++i)
                if (distance(ring.points[i], ring.points[i + 1]) > kDegenerateEps)
                    out.emplace_back(ring.points[i], ring.points[i + 1]);
        };
        add(p.exterior);
        for (const auto& h : p.interiors) add(h);
        return out;
    };
    const auto ea = edges(a);
    const auto eb = edges(b);
    double total = 0.0;
    constexpr double kLineTol = 1e-6;
    for (const auto& [a1, a2] : ea) {
        const Point d = a2 - a1;
        const double len = d.norm();
        const Point u = d * (1.0 / len);
        for (const auto& [b1, b2] : eb) {
            // collinearity: both endpoints of eb within tolerance of ea's line
            if (std::abs(cross(u, b1 - a1)) > kLineTol) continue;
            if (std::abs(cross(u, b2 - a1)) > kLineTol) continue;
            double t1 = dot(b1 - a1, u), t2 = dot(b2 - a1, u);
            if (t1 > t2) std::swap(t1, t2);
            const double lo = std::max(0.0, t1), hi = std::min(len, t2);
            if (hi > lo) total += hi - lo;
        }
    }
    return total;
}

namespace {

PolygonWithHoles map_polygon(const PolygonWithHoles& p, const auto& f) {
    PolygonWithHoles out;
    auto map_ring = [&](const LineString& ring) {
        LineString r;
        r.points.reserve(ring.points.size());
        for (const Point& pt : ring.points) r.points.push_back(f(pt));
        return r;
    };
    out.exterior = map_ring(p.exterior);
    for (const auto& h : p.interiors) out.interiors.push_back(map_ring(h));
    return out;
}

}  // namespace

PolygonWithHoles translated(const PolygonWithHoles& p, double dx, double dy) {
    return map_polygon(p, [&](const Point& pt) { return Point{pt.x + dx, pt.y + dy}; });
}

PolygonWithHoles scaled(const PolygonWithHoles& p, double factor) {
    return map_polygon(p, [&](const Point& pt) { return Point{pt.x * factor, pt.y * factor}; });
}

PolygonWithHoles rotated(const PolygonWithHoles& p, double angle_deg, const Point& center) {
    const double rad = angle_deg * M_PI / 180.0;
    const double c = std::cos(rad), s = std::sin(rad);
    return map_polygon(p, [&](const Point& pt) {
        const double dx = pt.x - center.x, dy = pt.y - center.y;
        return Point{center.x + c * dx - s * dy, center.y + s * dx + c * dy};
    });
}

BoundingBox bounding_box(const PolygonWithHoles& p) {
    BoundingBox bb{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
                   std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const Point& pt : p.exterior.points) {
        bb.min_x = std::min(bb.min_x, pt.x);
        bb.min_y = std::min(bb.min_y, pt.y);
        bb.max_x = std::max(bb.max_x, pt.x);
        bb.max_y = std::max(bb.max_y, pt.y);
    }
    return bb;
}

BoundingBox bounding_box(const MultiPolygon& mp) {
    BoundingBox bb{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
                   std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const auto& p : mp.polygons) {
        const BoundingBox pb = bounding_box(p);
        bb.min_x = std::min(bb.min_x, pb.min_x);
        bb.min_y = std::min(bb.min_y, pb.min_y);
        bb.max_x = std::max(bb.max_x, pb.max_x);
        bb.max_y = std::max(bb.max_y, pb.max_y);
    }
    return bb;
}

std::vector<const LineString*> all_rings(const MultiPolygon& mp) {
    std::vector<const LineString*> out;
    for (const auto& p : mp.polygons) {
        out.push_back(&p.exterior);
        for (const auto& h : p.interiors) out.push_back(&h);
    }
    return out;
}

std::vector<Segment> ring_edges(const MultiPolygon& mp) {
    std::vector<Segment> out;
    for (const LineString* ring : all_rings(mp)) {
        const auto& pts = ring->points;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (distance(pts[i], pts[i + 1]) > kDegenerateEps)
                out.emplace_back(pts[i], pts[i + 1]);
    }
    return out;
}

}  // namespace floorplan::geometry
