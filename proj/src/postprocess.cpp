#include "floorplan/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace floorplan::postprocess {

using geometry::MultiPolygon;
using geometry::Point;
using geometry::PolygonWithHoles;
using geometry::Segment;
using nlohmann::json;
using ragbuild::ClassLabel;
using ragbuild::RegionGraph;

namespace {

std::map<int, std::vector<int>> adjacency_lists(const RegionGraph& g) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [id, node] : g.nodes) adj[id];
    for (const auto& e : g.edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    return adj;
}

double shared_boundary_with(const PolygonWithHoles& p, const MultiPolygon& blob) {
    double total = 0.0;
    for (const auto& part : blob.polygons)
        total += geometry::shared_boundary_length(p, part);
    return total;
}

PolygonWithHoles simplify_polygon(const PolygonWithHoles& p, double eps) {
    if (eps <= 0.0) return p;
    PolygonWithHoles out;
    out.exterior = geometry::douglas_peucker(p.exterior, eps);
    for (const auto& h : p.interiors) {
        geometry::LineString sh = geometry::douglas_peucker(h, eps);
        if (sh.points.size() >= 4 && std::abs(geometry::signed_area(sh)) > 1e-9)
            out.interiors.push_back(std::move(sh));
    }
    return out;
}

PolygonWithHoles largest_part(const MultiPolygon& mp) {
    if (mp.empty()) throw std::runtime_error("empty polygon set");
    std::size_t best = 0;
    double best_area = -1.0;
    for (std::size_t i = 0; i < mp.polygons.size(); ++i) {
        const double a = geometry::area(mp.polygons[i]);
        if (a > best_area) {
            best_area = a;
            best = i;
        }
    }
    return mp.polygons[best];
}

// fixed-point absorption of mergeable regions into seed blobs along RAG
// adjacency; ties go to the blob sharing the longest boundary
struct MergeState {
    std::map<int, MultiPolygon> blobs;             // seed id -> union polygon
    std::map<int, std::vector<int>> members;       // seed id -> merged region ids
    std::map<int, int> assign;                     // region id -> seed id
};

MergeState merge_into(const RegionGraph& g, const std::vector<int>& seeds,
                      const std::vector<int>& mergeable) {
    MergeState st;
    for (int s : seeds) {
        st.blobs[s] = geometry::to_multi(g.nodes.at(s).region.polygon);
        st.members[s] = {s};
        st.assign[s] = s;
    }
    const auto adj = adjacency_lists(g);
    std::vector<int> pending = mergeable;
    std::sort(pending.begin(), pending.end());
    bool changed = true;
    std::size_t guard = 0;
    while (changed && guard++ <= g.nodes.size() + 1) {
        changed = false;
        for (auto it = pending.begin(); it != pending.end();) {
            const int id = *it;
            std::set<int> candidates;
            const auto a = adj.find(id);
            if (a != adj.end())
                for (int n : a->second) {
                    const auto as = st.assign.find(n);
                    if (as != st.assign.end()) candidates.insert(as->second);
                }
            if (candidates.empty()) {
                ++it;
                continue;
            }
            int best_seed = *candidates.begin();
            if (candidates.size() > 1) {
                double best_len = -1.0;
                const PolygonWithHoles& poly = g.nodes.at(id).region.polygon;
                for (int s : candidates) {
                    const double len = shared_boundary_with(poly, st.blobs[s]);
                    if (len > best_len) {
                        best_len = len;
                        best_seed = s;
                    }
                }
            }
            st.blobs[best_seed] = geometry::union_(
                st.blobs[best_seed], geometry::to_multi(g.nodes.at(id).region.polygon));
            st.members[best_seed].push_back(id);
            st.assign[id] = best_seed;
            it = pending.erase(it);
            changed = true;
        }
    }
    return st;
}

std::vector<int> nodes_with_label(const RegionGraph& g, ClassLabel label) {
    std::vector<int> out;
    for (const auto& [id, node] : g.nodes)
        if (node.label && *node.label == label) out.push_back(id);
    return out;
}

}  // namespace

std::vector<DoorSplit> split_doors(const RegionGraph& g) {
    const std::vector<int> doors = nodes_with_label(g, ClassLabel::door);
    const std::set<int> door_set(doors.begin(), doors.end());

    struct Pair {
        int a, b;
        double combined;
    };
    std::vector<Pair> pairs;
    for (const auto& e : g.edges) {
        if (!door_set.count(e.a) || !door_set.count(e.b)) continue;
        pairs.push_back({e.a, e.b,
                         g.nodes.at(e.a).region.area + g.nodes.at(e.b).region.area});
    }
    // pair the largest combinations first so triples keep their two biggest
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) {
        if (l.combined != r.combined) return l.combined > r.combined;
        return std::tie(l.a, l.b) < std::tie(r.a, r.b);
    });

    std::vector<DoorSplit> out;
    std::set<int> used;
    for (const Pair& p : pairs) {
        if (used.count(p.a) || used.count(p.b)) {
            if (!used.count(p.a) != !used.count(p.b))
                std::cerr << "warning: door region adjacent to an already paired door\n";
            continue;
        }
        const double aa = g.nodes.at(p.a).region.area;
        const double ab = g.nodes.at(p.b).region.area;
        DoorSplit split;
        if (aa > ab || (aa == ab && p.a < p.b)) {
            split.swing = p.a;
            split.embedded = p.b;
        } else {
            split.swing = p.b;
            split.embedded = p.a;
        }
        used.insert(p.a);
        used.insert(p.b);
        out.push_back(split);
    }
    for (int id : doors)
        if (!used.count(id)) out.push_back(DoorSplit{std::nullopt, id});
    std::stable_sort(out.begin(), out.end(),
                     [](const DoorSplit& l, const DoorSplit& r) { return l.embedded < r.embedded; });
    return out;
}

MergedRooms merge_rooms(const RegionGraph& g, const std::vector<DoorSplit>& doors,
                        const PostprocessConfig& cfg) {
    const std::vector<int> seeds = nodes_with_label(g, ClassLabel::room);
    std::vector<int> mergeable = nodes_with_label(g, ClassLabel::object);
    for (int id : nodes_with_label(g, ClassLabel::stair)) mergeable.push_back(id);
    for (const DoorSplit& d : doors)
        if (d.swing) mergeable.push_back(*d.swing);

    const MergeState st = merge_into(g, seeds, mergeable);
    MergedRooms out;
    for (int s : seeds) {
        RoomBlob blob;
        blob.id = s;
        blob.member_ids = st.members.at(s);
        for (int id : blob.member_ids)
            if (id != s) blob.attachments.push_back(id);

        PolygonWithHoles poly = simplify_polygon(largest_part(st.blobs.at(s)), cfg.dp_epsilon);
        if (cfg.hole_close_radius > 0.0) {
            const MultiPolygon closed = geometry::buffer(
                geometry::buffer(poly, cfg.hole_close_radius, cfg.circle_points),
                -cfg.hole_close_radius, cfg.circle_points);
            if (!closed.empty()) poly = largest_part(closed);
        }
        blob.polygon = std::move(poly);
        for (int id : blob.member_ids) out.region_to_room[id] = static_cast<int>(out.rooms.size());
        out.rooms.push_back(std::move(blob));
    }
    return out;
}

MultiPolygon merge_walls(const RegionGraph& g, const std::vector<DoorSplit>& doors,
                         const PostprocessConfig& cfg) {
    const std::vector<int> seeds = nodes_with_label(g, ClassLabel::wall);
    if (seeds.empty()) return {};
    std::vector<int> mergeable = nodes_with_label(g, ClassLabel::window);
    for (const DoorSplit& d : doors) mergeable.push_back(d.embedded);

    const MergeState st = merge_into(g, seeds, mergeable);
    MultiPolygon out;
    for (int s : seeds)
        for (const auto& part : st.blobs.at(s).polygons)
            out.polygons.push_back(simplify_polygon(part, cfg.dp_epsilon));
    return out;
}

bool RoomConnectivityGraph::bipartite_rooms_doors() const {
    for (const auto& [i, j] : edges) {
        const bool di = nodes[i].kind == Kind::door;
        const bool dj = nodes[j].kind == Kind::door;
        if (di == dj) return false;
    }
    return true;
}

RoomConnectivityGraph room_connectivity(const MergedRooms& rooms,
                                        const std::vector<DoorSplit>& doors,
                                        const RegionGraph& g,
                                        const PostprocessConfig& cfg) {
    RoomConnectivityGraph rcg;
    for (const RoomBlob& blob : rooms.rooms) {
        RoomConnectivityGraph::Node n;
        n.id = blob.id;
        n.kind = RoomConnectivityGraph::Kind::room;
        n.polygon = blob.polygon;
        n.attachments = blob.attachments;
        rcg.nodes.push_back(std::move(n));
    }
    const std::vector<int> outer_ids = nodes_with_label(g, ClassLabel::outer_space);
    int outer_index = -1;
    if (!outer_ids.empty()) {
        int largest = outer_ids.front();
        for (int id : outer_ids)
            if (g.nodes.at(id).region.area > g.nodes.at(largest).region.area) largest = id;
        RoomConnectivityGraph::Node n;
        n.id = largest;
        n.kind = RoomConnectivityGraph::Kind::outer;
        n.polygon = g.nodes.at(largest).region.polygon;
        for (int id : outer_ids)
            if (id != largest) n.attachments.push_back(id);
        outer_index = static_cast<int>(rcg.nodes.size());
        rcg.nodes.push_back(std::move(n));
    }

    std::set<std::pair<int, int>> rag_edges;
    for (const auto& e : g.edges) {
        rag_edges.emplace(e.a, e.b);
        rag_edges.emplace(e.b, e.a);
    }
    auto rag_adjacent = [&](int region, const std::vector<int>& members) {
        for (int m : members)
            if (rag_edges.count({region, m})) return true;
        return false;
    };

    for (const DoorSplit& d : doors) {
        RoomConnectivityGraph::Node n;
        n.id = d.embedded;
        n.kind = RoomConnectivityGraph::Kind::door;
        n.polygon = g.nodes.at(d.embedded).region.polygon;
        if (d.swing) n.attachments.push_back(*d.swing);
        const int door_index = static_cast<int>(rcg.nodes.size());
        rcg.nodes.push_back(std::move(n));

        std::vector<int> parts{d.embedded};
        if (d.swing) parts.push_back(*d.swing);
        for (std::size_t ri = 0; ri < rooms.rooms.size(); ++ri) {
            const RoomBlob& blob = rooms.rooms[ri];
            bool connected = false;
            for (int part : parts) {
                if (rag_adjacent(part, blob.member_ids)) connected = true;
                else if (geometry::polygon_distance(g.nodes.at(part).region.polygon,
                                                    blob.polygon) <= cfg.rcg_adjacency_tol)
                    connected = true;
                if (connected) break;
            }
            if (connected) rcg.edges.emplace_back(static_cast<int>(ri), door_index);
        }
        if (outer_index >= 0) {
            bool connected = false;
            for (int part : parts) {
                if (rag_adjacent(part, outer_ids)) connected = true;
                else {
                    for (int oid : outer_ids) {
                        if (geometry::polygon_distance(g.nodes.at(part).region.polygon,
                                                       g.nodes.at(oid).region.polygon) <=
                            cfg.rcg_adjacency_tol) {
                            connected = true;
                            break;
                        }
                    }
                }
                if (connected) break;
            }
            if (connected) rcg.edges.emplace_back(outer_index, door_index);
        }
    }
    return rcg;
}

std::vector<SeparationLine> separation_lines(const MultiPolygon& p_wall,
                                             const PostprocessConfig& cfg) {
    if (p_wall.empty()) return {};
    const std::vector<const geometry::LineString*> rings = geometry::all_rings(p_wall);
    const std::vector<Segment> edges = geometry::ring_edges(p_wall);
    const double ortho_lo = 90.0 - cfg.ortho_tol;

    struct Candidate {
        Segment seg;
        double length;
    };

    std::vector<SeparationLine> lines;
    for (const geometry::LineString* ring : rings) {
        const auto& pts = ring->points;
        const std::size_t n = pts.size() - 1;  // closing point duplicated
        if (n < 3) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Point v = pts[i];
            const Point prev = pts[(i + n - 1) % n];
            const Point next = pts[(i + 1) % n];
            std::optional<Segment> incident1, incident2;
            if (geometry::distance(prev, v) > 1e-9) incident1.emplace(prev, v);
            if (geometry::distance(v, next) > 1e-9) incident2.emplace(v, next);

            std::vector<Candidate> candidates;
            for (const Segment& edge : edges) {
                const geometry::ShortestLine sl = geometry::shortest_line(v, edge);
                if (sl.degenerate()) continue;
                const Segment seg(sl.from, sl.to);
                const bool ortho_target = geometry::angle_between(seg, edge) >= ortho_lo;
                const bool ortho_incident =
                    (incident1 && geometry::angle_between(seg, *incident1) >= ortho_lo) ||
                    (incident2 && geometry::angle_between(seg, *incident2) >= ortho_lo);
                if (!ortho_target && !ortho_incident) continue;
                if (!geometry::contains(p_wall, seg)) continue;
                candidates.push_back({seg, sl.length});
            }
            if (candidates.empty()) continue;
            std::stable_sort(candidates.begin(), candidates.end(),
                             [](const Candidate& a, const Candidate& b) {
                                 return a.length < b.length;
                             });
            const Candidate& best = candidates.front();
            lines.push_back({best.seg, v, SeparationLine::Kind::best});
            for (std::size_t c = 1; c < candidates.size(); ++c) {
                if (geometry::angle_between(candidates[c].seg, best.seg) > cfg.angle_min) {
                    lines.push_back({candidates[c].seg, v, SeparationLine::Kind::second_best});
                    break;
                }
            }
        }
    }

    // drop exact duplicates produced from both endpoints of the same cut
    auto key = [](const Segment& s) {
        auto r = [](double v) { return std::round(v * 1e6); };
        std::array<double, 4> a{r(s.a.x), r(s.a.y), r(s.b.x), r(s.b.y)};
        std::array<double, 4> b{r(s.b.x), r(s.b.y), r(s.a.x), r(s.a.y)};
        return std::min(a, b);
    };
    std::set<std::array<double, 4>> seen;
    std::vector<SeparationLine> unique;
    for (const SeparationLine& l : lines)
        if (seen.insert(key(l.segment)).second) unique.push_back(l);

    // repeatedly remove the longest line participating in a proper crossing
    std::vector<bool> alive(unique.size(), true);
    while (true) {
        int victim = -1;
        double victim_len = -1.0;
        for (std::size_t i = 0; i < unique.size(); ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = i + 1; j < unique.size(); ++j) {
                if (!alive[j]) continue;
                if (!geometry::segments_cross(unique[i].segment, unique[j].segment)) continue;
                const double li = unique[i].segment.length();
                const double lj = unique[j].segment.length();
                const std::size_t longer = li >= lj ? i : j;
                const double len = std::max(li, lj);
                if (len > victim_len) {
                    victim_len = len;
                    victim = static_cast<int>(longer);
                }
            }
        }
        if (victim < 0) break;
        alive[victim] = false;
    }
    std::vector<SeparationLine> out;
    for (std::size_t i = 0; i < unique.size(); ++i)
        if (alive[i]) out.push_back(unique[i]);
    return out;
}

namespace {

// splits every line at interior touches of other lines' endpoints so hulls
// cannot spill past separation-line feet
std::vector<Segment> mutual_subdivide(const std::vector<Segment>& lines) {
    std::vector<Point> endpoints;
    for (const Segment& s : lines) {
        endpoints.push_back(s.a);
        endpoints.push_back(s.b);
    }
    std::vector<Segment> out;
    for (const Segment& s : lines) {
        const Point dir = s.direction();
        const double len = s.length();
        std::vector<double> ts{0.0, len};
        for (const Point& p : endpoints) {
            if (geometry::point_segment_distance(p, s.a, s.b) > 1e-6) continue;
            const double t = geometry::dot(p - s.a, dir) / len;
            if (t > 1e-6 && t < len - 1e-6) ts.push_back(t);
        }
        std::sort(ts.begin(), ts.end());
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            if (ts[i + 1] - ts[i] < 1e-9) continue;
            const Point a = s.a + dir * (ts[i] / len);
            const Point b = s.a + dir * (ts[i + 1] / len);
            out.emplace_back(a, b);
        }
    }
    // coincident sub-segments (shared cuts emitted twice) collapse to one
    auto key = [](const Segment& s) {
        auto r = [](double v) { return std::round(v * 1e6); };
        std::array<double, 4> fwd{r(s.a.x), r(s.a.y), r(s.b.x), r(s.b.y)};
        std::array<double, 4> rev{r(s.b.x), r(s.b.y), r(s.a.x), r(s.a.y)};
        return std::min(fwd, rev);
    };
    std::set<std::array<double, 4>> seen;
    std::vector<Segment> unique;
    for (const Segment& s : out)
        if (seen.insert(key(s)).second) unique.push_back(s);
    return unique;
}

std::optional<Point> pole_point(const MultiPolygon& working,
                                const std::vector<Segment>& lines, double eps) {
    auto score = [&](const Point& p) {
        double best = std::numeric_limits<double>::max();
        for (const Segment& s : lines)
            best = std::min(best, geometry::point_segment_distance(p, s.a, s.b));
        return best;
    };
    std::vector<std::size_t> order(working.polygons.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return geometry::area(working.polygons[a]) > geometry::area(working.polygons[b]);
    });
    for (std::size_t pi : order) {
        const PolygonWithHoles& poly = working.polygons[pi];
        const MultiPolygon single = geometry::to_multi(poly);
        const geometry::BoundingBox bb = geometry::bounding_box(poly);
        Point best;
        double best_score = -1.0;
        for (int grid : {24, 64, 128}) {
            for (int gy = 0; gy < grid; ++gy) {
                for (int gx = 0; gx < grid; ++gx) {
                    const Point p{bb.min_x + (gx + 0.5) * bb.width() / grid,
                                  bb.min_y + (gy + 0.5) * bb.height() / grid};
                    if (!geometry::contains(single, p, 0.0)) continue;
                    const double s = score(p);
                    if (s > best_score) {
                        best_score = s;
                        best = p;
                    }
                }
            }
            if (best_score > eps) break;
        }
        if (best_score <= eps) continue;
        // local refinement around the best grid cell
        double radius = std::max(bb.width(), bb.height()) / 24.0;
        for (int level = 0; level < 4; ++level) {
            Point improved = best;
            double improved_score = best_score;
            for (int gy = -2; gy <= 2; ++gy) {
                for (int gx = -2; gx <= 2; ++gx) {
                    const Point p{best.x + gx * radius / 2.0, best.y + gy * radius / 2.0};
                    if (!geometry::contains(single, p, 0.0)) continue;
                    const double s = score(p);
                    if (s > improved_score) {
                        improved_score = s;
                        improved = p;
                    }
                }
            }
            best = improved;
            best_score = improved_score;
            radius /= 2.0;
        }
        return best;
    }
    return std::nullopt;
}

}  // namespace

std::vector<WallSegment> construct_polygons(const MultiPolygon& p_wall,
                                            const std::vector<SeparationLine>& lines,
                                            const PostprocessConfig& cfg) {
    std::vector<WallSegment> out;
    if (p_wall.empty()) return out;

    std::vector<Segment> base = geometry::ring_edges(p_wall);
    for (const SeparationLine& l : lines) base.push_back(l.segment);
    const std::vector<Segment> all_lines = mutual_subdivide(base);

    MultiPolygon working = p_wall;
    const int max_iterations = 10000;
    for (int iter = 0; iter < max_iterations && geometry::area(working) >= 1.0; ++iter) {
        const std::optional<Point> pole = pole_point(working, all_lines, cfg.alg2_eps);
        if (!pole) break;
        const Point p = *pole;

        std::vector<std::size_t> order(all_lines.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return geometry::point_segment_distance(p, all_lines[a].a, all_lines[a].b) <
                   geometry::point_segment_distance(p, all_lines[b].a, all_lines[b].b);
        });

        std::vector<Segment> added;
        for (std::size_t li : order) {
            const Segment& line = all_lines[li];
            const geometry::ShortestLine sl = geometry::shortest_line(p, Segment(line.a, line.b));
            if (sl.degenerate(1e-9)) continue;
            const Segment view(sl.from, sl.to);
            bool crossing = false;
            for (const Segment& al : added)
                if (geometry::segments_cross(view, al)) {
                    crossing = true;
                    break;
                }
            if (!crossing) added.push_back(line);
        }
        const std::vector<Segment> snapshot = added;
        for (const Segment& line : snapshot) {
            const Point mp = line.midpoint();
            if (geometry::distance(p, mp) < 1e-9) continue;
            const Segment view(p, mp);
            bool crossing = false;
            for (const Segment& other : added) {
                if (other.a == line.a && other.b == line.b) continue;
                if (geometry::segments_cross(view, other)) {
                    crossing = true;
                    break;
                }
            }
            if (crossing)
                added.erase(std::remove_if(added.begin(), added.end(),
                                           [&](const Segment& s) {
                                               return s.a == line.a && s.b == line.b;
                                           }),
                            added.end());
        }
        if (added.size() < 2) break;

        PolygonWithHoles hull;
        try {
            hull = geometry::convex_hull(added);
        } catch (const std::invalid_argument&) {
            break;
        }
        const MultiPolygon piece_set = geometry::intersection(geometry::to_multi(hull), working);
        if (piece_set.empty()) break;
        std::size_t pick = 0;
        bool found = false;
        for (std::size_t i = 0; i < piece_set.polygons.size(); ++i) {
            if (geometry::contains(geometry::to_multi(piece_set.polygons[i]), p, 1e-9)) {
                pick = i;
                found = true;
                break;
            }
        }
        if (!found) {
            double best_area = -1.0;
            for (std::size_t i = 0; i < piece_set.polygons.size(); ++i) {
                const double a = geometry::area(piece_set.polygons[i]);
                if (a > best_area) {
                    best_area = a;
                    pick = i;
                }
            }
        }
        const PolygonWithHoles piece = piece_set.polygons[pick];
        const double piece_area = geometry::area(piece);
        if (piece_area < 1e-9) break;

        WallSegment segment;
        segment.polygon = piece;
        segment.convex = true;
        segment.clipped = piece_area < 0.99 * geometry::area(hull);
        out.push_back(std::move(segment));
        working = geometry::difference(working, geometry::to_multi(piece));
    }

    if (geometry::area(working) >= 1.0) {
        std::cerr << "warning: wall splitting left " << geometry::area(working)
                  << " px^2 unpartitioned; emitting remainder as non-convex segments\n";
        for (const auto& poly : working.polygons) {
            WallSegment segment;
            segment.polygon = poly;
            segment.convex = false;
            out.push_back(std::move(segment));
        }
    }
    return out;
}

void associate_walls(std::vector<WallSegment>& segments, const MergedRooms& rooms,
                     const std::vector<const PolygonWithHoles*>& outer_polys,
                     int outer_id, const PostprocessConfig& cfg) {
    for (WallSegment& seg : segments) {
        seg.room_ids.clear();
        for (const RoomBlob& blob : rooms.rooms)
            if (geometry::polygon_distance(seg.polygon, blob.polygon) <= cfg.wall_assoc_tol)
                seg.room_ids.push_back(blob.id);
        bool outer = false;
        for (const PolygonWithHoles* op : outer_polys)
            if (geometry::polygon_distance(seg.polygon, *op) <= cfg.wall_assoc_tol) {
                outer = true;
                break;
            }
        if (outer || seg.room_ids.empty()) seg.room_ids.push_back(outer_id);
    }
}

PostprocessResult run_postprocess(const RegionGraph& g, const PostprocessConfig& cfg) {
    PostprocessResult r;
    r.doors = split_doors(g);
    r.rooms = merge_rooms(g, r.doors, cfg);
    r.p_wall = merge_walls(g, r.doors, cfg);
    r.rcg = room_connectivity(r.rooms, r.doors, g, cfg);
    r.lines = separation_lines(r.p_wall, cfg);
    r.segments = construct_polygons(r.p_wall, r.lines, cfg);

    const std::vector<int> outer_ids = nodes_with_label(g, ClassLabel::outer_space);
    std::vector<const PolygonWithHoles*> outer_polys;
    for (int id : outer_ids) outer_polys.push_back(&g.nodes.at(id).region.polygon);
    const int outer_id = outer_ids.empty() ? -1 : outer_ids.front();
    associate_walls(r.segments, r.rooms, outer_polys, outer_id, cfg);
    return r;
}

namespace {

json polygon_json(const PolygonWithHoles& p) {
    auto ring = [](const geometry::LineString& r) {
        json arr = json::array();
        for (const auto& pt : r.points) arr.push_back(json::array({pt.x, pt.y}));
        return arr;
    };
    json holes = json::array();
    for (const auto& h : p.interiors) holes.push_back(ring(h));
    return json{{"exterior", ring(p.exterior)}, {"holes", holes}};
}

}  // namespace

std::string rcg_to_json(const RoomConnectivityGraph& rcg) {
    json nodes = json::array();
    for (const auto& n : rcg.nodes) {
        const char* kind = n.kind == RoomConnectivityGraph::Kind::room ? "room"
                           : n.kind == RoomConnectivityGraph::Kind::door ? "door"
                                                                         : "outer_space";
        nodes.push_back(json{{"id", n.id},
                             {"kind", kind},
                             {"attachments", n.attachments},
                             {"polygon", polygon_json(n.polygon)}});
    }
    json edges = json::array();
    for (const auto& [a, b] : rcg.edges) edges.push_back(json::array({a, b}));
    return json{{"format_version", 1}, {"nodes", nodes}, {"edges", edges}}.dump(2);
}

std::string wall_segments_to_json(const std::vector<WallSegment>& segments,
                                  const std::vector<SeparationLine>& lines) {
    json segs = json::array();
    for (const auto& s : segments)
        segs.push_back(json{{"polygon", polygon_json(s.polygon)},
                            {"room_ids", s.room_ids},
                            {"convex", s.convex},
                            {"clipped", s.clipped}});
    json jl = json::array();
    for (const auto& l : lines)
        jl.push_back(json{{"a", json::array({l.segment.a.x, l.segment.a.y})},
                          {"b", json::array({l.segment.b.x, l.segment.b.y})},
                          {"origin", json::array({l.origin_point.x, l.origin_point.y})},
                          {"kind", l.kind == SeparationLine::Kind::best ? "best" : "second_best"}});
    return json{{"format_version", 1}, {"segments", segs}, {"separation_lines", jl}}.dump(2);
}

}  // namespace floorplan::postprocess
