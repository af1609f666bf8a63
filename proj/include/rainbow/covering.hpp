#ifndef RAINBOW_COVERING_HPP
#define RAINBOW_COVERING_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rainbow/geometry.hpp"

namespace rainbow {

struct CoveringTree {
    std::vector<Point> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<Point> targets;
};

struct Segment {
    Point a, b;
};

struct Fork {
    Point vertex;
    int multiplicity = 1;
};

struct SegmentPartition {
    std::vector<Segment> segments;
    std::vector<Fork> forks;

    std::size_t s() const { return segments.size(); }
    int t() const;
};

// Throws InternalInvariant naming the first violated CoveringTree invariant.
void validate_tree(const CoveringTree& tree);

// Maximal collinear edge paths; forks and multiplicities are recomputed from
// the segment geometry alone.
SegmentPartition partition_tree(const CoveringTree& tree);
std::vector<Fork> compute_forks(const std::vector<Segment>& segments);

// Checks that `partition` covers the tree's edges exactly once with pairwise
// noncrossing collinear segments and correct forks. Throws InvalidPartition.
void validate_partition(const CoveringTree& tree, const SegmentPartition& partition);

// Builds a tree from noncrossing segments (endpoints may lie on other
// segments); collinear degree-2 vertices are suppressed.
CoveringTree tree_from_segments(const std::vector<Segment>& segments, std::vector<Point> targets);

// Removes degree-2 vertices whose two edges are collinear.
CoveringTree suppress_collinear(const CoveringTree& tree);

CoveringTree transform_tree(const CoveringTree& tree, const AffineMap& map);

// Adds the segment anchor-extra. The anchor must be a tree vertex or lie on an
// edge. Throws CrossingViolation if the new segment meets the tree elsewhere.
CoveringTree attach_point(const CoveringTree& tree, const Point& extra, const Point& anchor);

// ---- Seven-point cover ----

struct SevenCover {
    CoveringTree t1;  // order 4
    CoveringTree t2;  // one segment
    Point v1, v2;     // special leaves
    Point v1_neighbor, v2_neighbor;
    Coordinate left, right;  // vertical strip bounds
    enum class Shape { StarDistinct, StarShared, Path } shape = Shape::StarDistinct;
    bool reflected = false;
};

// 7 points sorted by strictly increasing x, no three collinear.
SevenCover cover_seven(const std::vector<Point>& pts);

// ---- Assembly ----

struct LeafTree {
    std::vector<Segment> segments;  // pairwise noncrossing
    Point leaf;                      // special leaf, the tree's leftmost point
    Point direction;                 // leftward extension direction (negative x)
};

struct JoinResult {
    std::vector<Segment> segments;  // extended segments plus the barrier
    Segment barrier;
    std::vector<Point> fork_points;
};

// Extends each special leaf leftward, right to left, until it hits a tree, a
// placed extension, or the vertical line x = barrier_x.
JoinResult extend_and_join(const std::vector<LeafTree>& forest, const Coordinate& barrier_x);

struct CoveringResult {
    CoveringTree tree;
    SegmentPartition partition;
    Segment barrier;  // the target-free segment joining the leaf extensions
    int attempts = 1;
};

CoveringResult build_covering_tree(const std::vector<Point>& pts);

// Closed-form counts for n points.
std::size_t expected_segments(std::size_t n);
int expected_forks(std::size_t n);

}  // namespace rainbow

#endif
