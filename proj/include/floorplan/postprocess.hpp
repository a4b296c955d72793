#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floorplan/geometry.hpp"
#include "floorplan/ragbuild.hpp"

// Merges labeled regions into rooms and walls, splits doors, builds the
// room-connectivity graph, computes wall separation lines and constructs
// convex wall segments associated with rooms.
namespace floorplan::postprocess {

struct PostprocessConfig {
    double angle_min = 40.0;        // second separation line must differ this much
    double ortho_tol = 10.0;        // "(almost) orthogonal" tolerance, degrees
    double alg2_eps = 0.5;          // interior points keep this distance to lines
    double dp_epsilon = 1.0;        // room/wall ring simplification
    double hole_close_radius = 2.0; // buff/debuff radius for removing small holes
    double wall_assoc_tol = 1.5;    // wall-segment-to-room association distance
    double rcg_adjacency_tol = 5.0; // door-to-room proximity for connectivity
    int circle_points = 64;
};

// Larger neighbor of an adjacent door pair is the swing, the smaller the
// part embedded in the wall; unpaired door regions are embedded-only.
struct DoorSplit {
    std::optional<int> swing;
    int embedded = 0;

    bool paired() const { return swing.has_value(); }
};

std::vector<DoorSplit> split_doors(const ragbuild::RegionGraph& g);

struct RoomBlob {
    int id = 0;  // seed room node id
    geometry::PolygonWithHoles polygon;
    std::vector<int> member_ids;   // regions merged in, including the seed
    std::vector<int> attachments;  // object/stair/door-swing node ids
};

struct MergedRooms {
    std::vector<RoomBlob> rooms;
    std::map<int, int> region_to_room;  // region id -> index into rooms
};

// Fixed-point merge of object/stair/door-swing regions into adjacent
// rooms (longest shared boundary wins), then Douglas-Peucker and a
// buff/debuff closing to remove small holes.
MergedRooms merge_rooms(const ragbuild::RegionGraph& g,
                        const std::vector<DoorSplit>& doors,
                        const PostprocessConfig& cfg = {});

// Union of embedded door parts and windows into adjacent wall polygons,
// simplified; the resulting multi polygon is P_wall.
geometry::MultiPolygon merge_walls(const ragbuild::RegionGraph& g,
                                   const std::vector<DoorSplit>& doors,
                                   const PostprocessConfig& cfg = {});

struct RoomConnectivityGraph {
    enum class Kind { room, door, outer };
    struct Node {
        int id = 0;  // room blob id / door embedded id / outer region id
        Kind kind = Kind::room;
        geometry::PolygonWithHoles polygon;
        std::vector<int> attachments;
    };
    std::vector<Node> nodes;
    std::vector<std::pair<int, int>> edges;  // indices into nodes

    bool bipartite_rooms_doors() const;  // every edge has exactly one door end
};

RoomConnectivityGraph room_connectivity(const MergedRooms& rooms,
                                        const std::vector<DoorSplit>& doors,
                                        const ragbuild::RegionGraph& g,
                                        const PostprocessConfig& cfg = {});

struct SeparationLine {
    enum class Kind { best, second_best };
    geometry::Segment segment;
    geometry::Point origin_point;
    Kind kind = Kind::best;
};

// Algorithm "separation lines": for every ring vertex, the shortest
// segments across the wall that are contained in P_wall and (almost)
// orthogonal to their target edge or to an edge incident to the vertex;
// the shortest candidate plus the next one at an angle above angle_min
// survive, then the longer of any properly crossing pair is dropped.
std::vector<SeparationLine> separation_lines(const geometry::MultiPolygon& p_wall,
                                             const PostprocessConfig& cfg = {});

struct WallSegment {
    geometry::PolygonWithHoles polygon;
    std::vector<int> room_ids;
    bool convex = true;    // pre-clip hull property
    bool clipped = false;  // clipping removed more than 1% of the hull
};

// Algorithm "polygon construction": repeatedly picks an interior point
// away from all lines, gathers the closest non-occluded lines, prunes by
// the midpoint rule, takes their convex hull clipped to the remaining
// wall and subtracts it.
std::vector<WallSegment> construct_polygons(const geometry::MultiPolygon& p_wall,
                                            const std::vector<SeparationLine>& lines,
                                            const PostprocessConfig& cfg = {});

// Segments gain the ids of rooms within wall_assoc_tol; orphans attach to
// outer space.
void associate_walls(std::vector<WallSegment>& segments, const MergedRooms& rooms,
                     const std::vector<const geometry::PolygonWithHoles*>& outer_polys,
                     int outer_id, const PostprocessConfig& cfg = {});

struct PostprocessResult {
    std::vector<DoorSplit> doors;
    MergedRooms rooms;
    geometry::MultiPolygon p_wall;
    RoomConnectivityGraph rcg;
    std::vector<SeparationLine> lines;
    std::vector<WallSegment> segments;
};

PostprocessResult run_postprocess(const ragbuild::RegionGraph& g,
                                  const PostprocessConfig& cfg = {});

std::string rcg_to_json(const RoomConnectivityGraph& rcg);
std::string wall_segments_to_json(const std::vector<WallSegment>& segments,
                                  const std::vector<SeparationLine>& lines);

}  // namespace floorplan::postprocess
