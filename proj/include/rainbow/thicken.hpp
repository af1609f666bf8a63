#ifndef RAINBOW_THICKEN_HPP
#define RAINBOW_THICKEN_HPP

#include <optional>
#include <vector>

#include "rainbow/covering.hpp"
#include "rainbow/geometry.hpp"

namespace rainbow {

struct ThickeningParams {
    Coordinate epsilon;  // area budget
    Coordinate delta;    // vertex-disk radius
};

// Largest power of two ρ with 4ρ² ≤ min squared obstacle-to-tree distance, so
// the closed ρ-neighborhood of the tree misses every obstacle by a margin.
Coordinate safe_epsilon(const CoveringTree& tree, const std::vector<Point>& obstacles);

// Exact minimum squared distance from the points to the tree's edges (or its
// single vertex). Double-precision lower bounds prune most exact evaluations.
Coordinate min_squared_distance(const CoveringTree& tree, const std::vector<Point>& obstacles);

// Largest power of two δ whose vertex disks are pairwise disjoint and meet only
// incident edges, with a factor-two margin.
Coordinate disk_radius(const CoveringTree& tree);

ThickeningParams thickening_params(const CoveringTree& tree, const SegmentPartition& partition,
                                   const Coordinate& epsilon, const std::optional<Coordinate>& radius_cap = {});

// Polygon with exactly 2s+t vertices and area ≤ epsilon containing the tree.
// With radius_cap every polygon point lies within radius_cap of the tree.
SimplePolygon thicken(const CoveringTree& tree, const SegmentPartition& partition, const Coordinate& epsilon,
                      const std::optional<Coordinate>& radius_cap = {});

// Triangle of area ≤ epsilon containing segment ab (a == b allowed).
SimplePolygon enclose_segment(const Point& a, const Point& b, const std::vector<Point>& targets,
                              const Coordinate& epsilon, const std::optional<Coordinate>& radius_cap = {});

}  // namespace rainbow

#endif
