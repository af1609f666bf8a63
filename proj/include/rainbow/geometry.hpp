#ifndef RAINBOW_GEOMETRY_HPP
#define RAINBOW_GEOMETRY_HPP

#include <gmpxx.h>

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rainbow {

// Results of mpq_class arithmetic are canonical (reduced, positive
// denominator).
using Coordinate = mpq_class;

// The two-argument mpq_class constructor does not reduce; always build
// fractions through this helper.
inline Coordinate rational(long num, long den) {
    Coordinate q(num, den);
    q.canonicalize();
    return q;
}

Coordinate parse_coordinate(const std::string& text);
std::string to_string(const Coordinate& c);
int sign(const Coordinate& c);
Coordinate abs_value(const Coordinate& c);

struct Point {
    Coordinate x;
    Coordinate y;

    Point() = default;
    Point(Coordinate x_, Coordinate y_) : x(std::move(x_)), y(std::move(y_)) {}
    Point(long x_, long y_) : x(x_), y(y_) {}

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    // lexicographic by (x, y)
    friend bool operator<(const Point& a, const Point& b) {
        int c = cmp(a.x, b.x);
        return c < 0 || (c == 0 && a.y < b.y);
    }
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Coordinate& s, const Point& p);
Point operator-(const Point& p);
std::ostream& operator<<(std::ostream& os, const Point& p);
std::string to_string(const Point& p);

Coordinate cross(const Point& u, const Point& v);
Coordinate dot(const Point& u, const Point& v);
Coordinate cross3(const Point& a, const Point& b, const Point& c);  // (b-a) x (c-a)
Coordinate squared_norm(const Point& v);
Coordinate squared_distance(const Point& a, const Point& b);
Coordinate squared_distance_to_segment(const Point& p, const Point& a, const Point& b);
Point lerp(const Point& a, const Point& b, const Coordinate& t);  // a + t (b - a)

enum class Orientation { CCW, CW, COLLINEAR };
enum class Containment { Interior, Boundary, Exterior };

Orientation orient(const Point& a, const Point& b, const Point& c);
int orient_sign(const Point& a, const Point& b, const Point& c);

bool on_segment(const Point& p, const Point& a, const Point& b);
bool proper_cross(const Point& a, const Point& b, const Point& c, const Point& d);
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

// Pairs i < j of segments whose bounding boxes, widened for double rounding,
// overlap. Every pair of intersecting segments is included.
std::vector<std::pair<std::size_t, std::size_t>> box_overlap_pairs(const std::vector<std::pair<Point, Point>>& segs);

// Intersection of the lines ab and cd; nullopt when parallel.
std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c, const Point& d);

using Polygon = std::vector<Point>;

struct SimplePolygon {
    Polygon vertices;  // counterclockwise
    std::size_t size() const { return vertices.size(); }
};

Coordinate signed_area2(const Polygon& poly);
Coordinate area(const Polygon& poly);
bool is_simple(const Polygon& poly);
// Validates simplicity and reverses to counterclockwise if needed.
std::optional<SimplePolygon> make_simple_polygon(Polygon poly);

Containment locate_point(const Point& p, const Polygon& poly);
inline Containment locate_point(const Point& p, const SimplePolygon& poly) {
    return locate_point(p, poly.vertices);
}

std::vector<Point> convex_hull(std::vector<Point> pts);

// Exact affine map p -> M p + t.
struct AffineMap {
    Coordinate a{1}, b{0}, c{0}, d{1}, e{0}, f{0};

    Point apply(const Point& p) const;
    AffineMap inverse() const;
    AffineMap then(const AffineMap& next) const;  // next ∘ this
    Coordinate det() const { return a * d - b * c; }

    static AffineMap identity() { return {}; }
    static AffineMap shear_x(const Coordinate& lambda);  // (x + λy, y)
    static AffineMap shear_y(const Coordinate& mu);      // (x, y + μx)
    static AffineMap mirror_x();                         // (-x, y)
    static AffineMap mirror_y();                         // (x, -y)
};

struct ShearTransform {
    Coordinate lambda;  // (x, y) -> (x + λy, y), applied first
    Coordinate mu;      // (x, y) -> (x, y + μx), applied second
    AffineMap map() const;
};

struct ShearResult {
    ShearTransform transform;
    std::vector<Point> points;
};

// Smallest λ = 1/m (then μ = 1/m) making all x (then all y) pairwise distinct.
// `skip` discards that many valid λ candidates first, giving alternate shears.
ShearResult shear_normalize(const std::vector<Point>& pts, int skip = 0);

// Finds a collinear triple by exact direction sorting; nullopt if none.
std::optional<std::array<std::size_t, 3>> find_collinear_triple(const std::vector<Point>& pts);

}  // namespace rainbow

#endif
