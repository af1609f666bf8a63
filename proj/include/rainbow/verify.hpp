#ifndef RAINBOW_VERIFY_HPP
#define RAINBOW_VERIFY_HPP

#include <vector>

#include "rainbow/covering.hpp"
#include "rainbow/geometry.hpp"
#include "rainbow/point_set.hpp"

namespace rainbow {

struct RainbowCertificate {
    std::vector<int> counts;  // by dense color index
    bool perfect = false;
    std::size_t size = 0;
};

// Exact point location against a fixed polygon, with bounding-box filters in
// double precision whose rounding is accounted for conservatively.
class PolygonLocator {
public:
    explicit PolygonLocator(const Polygon& poly);
    Containment locate(const Point& p) const;

private:
    struct Bounds {
        double lo, hi;
    };
    struct Edge {
        Point a, b;
        Bounds x, y;
        mpz_class dx, dy, c;  // integer multiples of b - a and (b-a) x a
    };
    std::vector<Edge> edges_;
    Bounds box_x_, box_y_;
};

RainbowCertificate certify(const Polygon& poly, const ColoredPointSet& S);
inline RainbowCertificate certify(const SimplePolygon& poly, const ColoredPointSet& S) {
    return certify(poly.vertices, S);
}

struct SegmentStats {
    std::size_t s0 = 0, s1 = 0, s2 = 0;
    int t = 0;
    std::size_t s = 0;
};

SegmentStats segment_stats(const SegmentPartition& partition, const std::vector<Point>& targets);
bool lemma20_holds(const SegmentStats& st);

Coordinate lower_bound_tree(long n);
Coordinate lower_bound_rainbow(long k);
long upper_bound_rainbow(long k);
long ceil_of(const Coordinate& q);

}  // namespace rainbow

#endif
