#ifndef RAINBOW_SMALL_K_HPP
#define RAINBOW_SMALL_K_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "rainbow/geometry.hpp"
#include "rainbow/point_set.hpp"

namespace rainbow {

// a, b, c are the interior points assigned to x, y, z; r = xa ∩ yb,
// s = yb ∩ zc, t = zc ∩ xa, with a on xr, b on ys and c on zt.
struct ExpedientLabeling {
    Point a, b, c;
    Point r, s, t;
    std::array<int, 3> order{};  // order[0] = position of a in the input, etc.
};

// Throws DegenerateInput on collinearity or points not strictly inside xyz.
ExpedientLabeling expedient_labeling(const Point& x, const Point& y, const Point& z,
                                     const std::array<Point, 3>& interior);

struct EmptyExpedient {
    std::size_t x, y, z;  // triangle corners (indices into the set)
    std::size_t a, b, c;  // chosen interior points, pairwise distinct colors
    Point r, s, t;
    std::vector<std::array<Point, 3>> history;  // every triangle visited, first to last
};

// Only points of S inside the triangle xyz take part. Corner colors must not
// recur there and at least three colors must lie strictly inside; throws
// PreconditionViolated otherwise. The overloads without corners use conv(S).
EmptyExpedient empty_expedient_triangle(const ColoredPointSet& S, std::size_t x, std::size_t y, std::size_t z);
EmptyExpedient empty_expedient_triangle(const ColoredPointSet& S);

// Hexagon containing exactly the three corners and the three chosen points.
SimplePolygon rainbow_hexagon_in_triangle(const ColoredPointSet& S, std::size_t x, std::size_t y, std::size_t z);
SimplePolygon rainbow_hexagon_in_triangle(const ColoredPointSet& S);

struct SmallKTrace {
    std::string construction;  // name of the construction that succeeded
    int candidates_tried = 0;
};

// Perfect rainbow polygon with at most (3, 4, 5, 6, 8) vertices for k = 3..7.
SimplePolygon solve_small(const ColoredPointSet& S, SmallKTrace* trace = nullptr);

long small_k_bound(std::size_t k);

}  // namespace rainbow

#endif
