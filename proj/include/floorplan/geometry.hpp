#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

// 2D polygon primitives shared by every stage of the pipeline. All
// coordinates are pixel units of the source raster. Operations are pure
// functions on immutable values and safe to call concurrently.
namespace floorplan::geometry {

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point() = default;
    Point(double px, double py) : x(px), y(py) {}

    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

// Non-degenerate segment; zero-length rejected at construction.
struct Segment {
    Point a;
    Point b;

    Segment(Point pa, Point pb);
    double length() const { return distance(a, b); }
    Point direction() const { return b - a; }
    Point midpoint() const { return {(a.x + b.x) * 0.5, (a.y + b.y) * 0.5}; }
};

// Ordered polyline; closed iff front == back.
struct LineString {
    std::vector<Point> points;

    LineString() = default;
    explicit LineString(std::vector<Point> pts) : points(std::move(pts)) {}
    bool closed() const {
        return points.size() >= 4 && points.front() == points.back();
    }
    std::size_t size() const { return points.size(); }
};

// Exterior ring is counter-clockwise (positive signed area in the raster's
// x-right/y-down frame treated as abstract math coordinates), interior
// rings clockwise. Rings are stored closed (first == last).
struct PolygonWithHoles {
    LineString exterior;
    std::vector<LineString> interiors;
};

struct MultiPolygon {
    std::vector<PolygonWithHoles> polygons;

    bool empty() const { return polygons.empty(); }
};

struct BoundingBox {
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
};

// Closes, deduplicates and orients a ring; throws std::invalid_argument on
// fewer than 3 distinct vertices or zero area.
LineString make_ring(std::vector<Point> pts, bool counter_clockwise);
PolygonWithHoles make_polygon(std::vector<Point> exterior,
                              std::vector<std::vector<Point>> holes = {});
PolygonWithHoles make_rect(double x0, double y0, double x1, double y1);

double signed_area(const LineString& ring);
double area(const PolygonWithHoles& p);
double area(const MultiPolygon& mp);
Point centroid(const PolygonWithHoles& p);

// Radius of the smallest origin-centered circle containing the polygon;
// the farthest point of a polygon from any center is a vertex, so the max
// is taken over exterior vertices.
double origin_radius(const PolygonWithHoles& p);

// Minkowski dilation (radius > 0) / erosion (radius < 0) with a disk
// approximated by circle_points vertices (16 per quadrant by default).
MultiPolygon buffer(const MultiPolygon& mp, double radius, int circle_points = 64);
MultiPolygon buffer(const PolygonWithHoles& p, double radius, int circle_points = 64);

// Standard recursive simplification; endpoints preserved. Closed rings are
// split at two extreme points first. eps == 0 returns the input unchanged.
LineString douglas_peucker(const LineString& ls, double eps);

// Shortest connector from a point to a segment; may be degenerate
// (zero-length) when the point lies on the segment, which callers filter.
struct ShortestLine {
    Point from;
    Point to;
    double length = 0.0;
    bool degenerate(double eps = 1e-9) const { return length < eps; }
};
ShortestLine shortest_line(const Point& pt, const Segment& seg);

// True iff the segments intersect at an interior point of both. Shared
// endpoints and collinear overlap do not count; separation lines meeting
// at wall vertices must survive crossing removal.
bool segments_cross(const Segment& s1, const Segment& s2);

// Convex hull of all segment endpoints as a hole-free polygon; throws if
// every endpoint is collinear.
PolygonWithHoles convex_hull(const std::vector<Segment>& segs);
PolygonWithHoles convex_hull_points(const std::vector<Point>& pts);

// Segment-in-region test with boundary contact allowed: midpoint sampling
// (sample_count interior points) plus a no-proper-crossing check against
// every ring.
bool contains(const MultiPolygon& mp, const Segment& seg, int sample_count = 8);
bool contains(const MultiPolygon& mp, const Point& pt, double boundary_tol = 1e-9);

// Acute angle between the undirected carrier lines, degrees in [0, 90].
double angle_between(const Segment& s1, const Segment& s2);

// Boolean operations and measures (plumbing shared by ragbuild/postprocess).
MultiPolygon union_(const MultiPolygon& a, const MultiPolygon& b);
MultiPolygon intersection(const MultiPolygon& a, const MultiPolygon& b);
MultiPolygon difference(const MultiPolygon& a, const MultiPolygon& b);
MultiPolygon to_multi(const PolygonWithHoles& p);
double iou(const PolygonWithHoles& a, const PolygonWithHoles& b);
double polygon_distance(const PolygonWithHoles& a, const PolygonWithHoles& b);
// Total length of collinear boundary overlap between the two polygons.
double shared_boundary_length(const PolygonWithHoles& a, const PolygonWithHoles& b);

PolygonWithHoles translated(const PolygonWithHoles& p, double dx, double dy);
PolygonWithHoles scaled(const PolygonWithHoles& p, double factor);
PolygonWithHoles rotated(const PolygonWithHoles& p, double angle_deg, const Point& center);
BoundingBox bounding_box(const PolygonWithHoles& p);
BoundingBox bounding_box(const MultiPolygon& mp);

// Every ring (exterior + interiors) of every polygon.
std::vector<const LineString*> all_rings(const MultiPolygon& mp);
// Every ring edge as a segment; zero-length edges skipped.
std::vector<Segment> ring_edges(const MultiPolygon& mp);

double point_segment_distance(const Point& pt, const Point& a, const Point& b);

}  // namespace floorplan::geometry
