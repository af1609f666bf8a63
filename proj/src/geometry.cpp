#include "rainbow/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rainbow/error.hpp"

namespace rainbow {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::GeneralPositionViolation: return "GeneralPositionViolation";
        case ErrorKind::DuplicatePoint: return "DuplicatePoint";
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::TooFewColors: return "TooFewColors";
        case ErrorKind::TooManyColors: return "TooManyColors";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::CrossingViolation: return "CrossingViolation";
        case ErrorKind::InvalidPartition: return "InvalidPartition";
        case ErrorKind::ObstacleOnTree: return "ObstacleOnTree";
        case ErrorKind::NotSimple: return "NotSimple";
        case ErrorKind::UncoveredTarget: return "UncoveredTarget";
        case ErrorKind::BadN: return "BadN";
        case ErrorKind::BadK: return "BadK";
        case ErrorKind::BadSpec: return "BadSpec";
        case ErrorKind::BadParams: return "BadParams";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::InternalInvariant: return "InternalInvariant";
        case ErrorKind::CertificationFailed: return "CertificationFailed";
    }
    return "Error";
}

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Coordinate parse_decimal(const std::string& text) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    long exponent = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        std::string es = s.substr(epos + 1);
        s = s.substr(0, epos);
        bool eneg = false;
        if (!es.empty() && (es[0] == '-' || es[0] == '+')) {
            eneg = es[0] == '-';
            es = es.substr(1);
        }
        if (!all_digits(es) || es.size() > 6) fail(ErrorKind::ParseError, "bad exponent in '" + text + "'");
        exponent = std::stol(es) * (eneg ? -1 : 1);
    }
    std::string int_part = s, frac_part;
    auto dot_pos = s.find('.');
    if (dot_pos != std::string::npos) {
        int_part = s.substr(0, dot_pos);
        frac_part = s.substr(dot_pos + 1);
    }
    if (int_part.empty() && frac_part.empty()) fail(ErrorKind::ParseError, "bad number '" + text + "'");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
        fail(ErrorKind::ParseError, "bad number '" + text + "'");
    mpz_class num(int_part + frac_part, 10);
    exponent -= static_cast<long>(frac_part.size());
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Coordinate value = exponent >= 0 ? Coordinate(num * pow10) : Coordinate(num, pow10);
    value.canonicalize();
    return neg ? Coordinate(-value) : value;
}

}  // namespace

Coordinate parse_coordinate(const std::string& text) {
    if (text.empty()) fail(ErrorKind::ParseError, "empty number");
    auto slash = text.find('/');
    if (slash == std::string::npos) return parse_decimal(text);
    std::string p = text.substr(0, slash), q = text.substr(slash + 1);
    std::string pd = (!p.empty() && (p[0] == '-' || p[0] == '+')) ? p.substr(1) : p;
    if (!all_digits(pd) || !all_digits(q)) fail(ErrorKind::ParseError, "bad rational '" + text + "'");
    mpz_class den(q, 10);
    if (den == 0) fail(ErrorKind::ParseError, "zero denominator in '" + text + "'");
    mpz_class num(pd, 10);
    if (!p.empty() && p[0] == '-') num = -num;
    Coordinate value(num, den);
    value.canonicalize();
    return value;
}

std::string to_string(const Coordinate& c) { return c.get_str(); }

int sign(const Coordinate& c) { return sgn(c); }

Coordinate abs_value(const Coordinate& c) { return Coordinate(abs(c)); }

Point operator+(const Point& a, const Point& b) { return {Coordinate(a.x + b.x), Coordinate(a.y + b.y)}; }
Point operator-(const Point& a, const Point& b) { return {Coordinate(a.x - b.x), Coordinate(a.y - b.y)}; }
Point operator*(const Coordinate& s, const Point& p) { return {Coordinate(s * p.x), Coordinate(s * p.y)}; }
Point operator-(const Point& p) { return {Coordinate(-p.x), Coordinate(-p.y)}; }

std::ostream& operator<<(std::ostream& os, const Point& p) { return os << "(" << p.x << "," << p.y << ")"; }

std::string to_string(const Point& p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

Coordinate cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
Coordinate dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }
Coordinate cross3(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}
Coordinate squared_norm(const Point& v) { return v.x * v.x + v.y * v.y; }
Coordinate squared_distance(const Point& a, const Point& b) { return squared_norm(b - a); }

Coordinate squared_distance_to_segment(const Point& p, const Point& a, const Point& b) {
    Point ab = b - a, ap = p - a;
    Coordinate len2 = squared_norm(ab);
    if (len2 == 0) return squared_norm(ap);
    Coordinate t = dot(ap, ab);
    if (t <= 0) return squared_norm(ap);
    if (t >= len2) return squared_distance(p, b);
    Coordinate c = cross(ab, ap);
    return Coordinate(c * c / len2);
}

Point lerp(const Point& a, const Point& b, const Coordinate& t) {
    return {Coordinate(a.x + t * (b.x - a.x)), Coordinate(a.y + t * (b.y - a.y))};
}

int orient_sign(const Point& a, const Point& b, const Point& c) { return sgn(cross3(a, b, c)); }

Orientation orient(const Point& a, const Point& b, const Point& c) {
    int s = orient_sign(a, b, c);
    return s > 0 ? Orientation::CCW : s < 0 ? Orientation::CW : Orientation::COLLINEAR;
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
    if (orient_sign(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool proper_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    int o1 = orient_sign(a, b, c), o2 = orient_sign(a, b, d);
    int o3 = orient_sign(c, d, a), o4 = orient_sign(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
    int o1 = orient_sign(a, b, c), o2 = orient_sign(a, b, d);
    int o3 = orient_sign(c, d, a), o4 = orient_sign(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return (o1 == 0 && on_segment(c, a, b)) || (o2 == 0 && on_segment(d, a, b)) ||
           (o3 == 0 && on_segment(a, c, d)) || (o4 == 0 && on_segment(b, c, d));
}

std::vector<std::pair<std::size_t, std::size_t>> box_overlap_pairs(const std::vector<std::pair<Point, Point>>& segs) {
    struct Box {
        double x0, x1, y0, y1;
    };
    std::vector<Box> box(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        double ax = segs[i].first.x.get_d(), ay = segs[i].first.y.get_d();
        double bx = segs[i].second.x.get_d(), by = segs[i].second.y.get_d();
        double m = (std::fabs(ax) + std::fabs(ay) + std::fabs(bx) + std::fabs(by) + 1) * 0x1p-50;
        box[i] = {std::min(ax, bx) - m, std::max(ax, bx) + m, std::min(ay, by) - m, std::max(ay, by) + m};
    }
    std::vector<std::size_t> order(segs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return box[a].x0 < box[b].x0; });
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::vector<std::size_t> active;
    for (std::size_t i : order) {
        std::size_t keep = 0;
        for (std::size_t a : active) {
            if (box[a].x1 < box[i].x0) continue;
            active[keep++] = a;
            if (box[a].y0 <= box[i].y1 && box[i].y0 <= box[a].y1) out.emplace_back(std::min(a, i), std::max(a, i));
        }
        active.resize(keep);
        active.push_back(i);
    }
    return out;
}

std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c, const Point& d) {
    Point r = b - a, s = d - c;
    Coordinate den = cross(r, s);
    if (den == 0) return std::nullopt;
    Coordinate t = cross(c - a, s) / den;
    return a + t * r;
}

Coordinate signed_area2(const Polygon& poly) {
    Coordinate sum = 0;
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) sum += cross(poly[i], poly[(i + 1) % n]);
    return sum;
}

Coordinate area(const Polygon& poly) { return Coordinate(abs(signed_area2(poly)) / 2); }

bool is_simple(const Polygon& poly) {
    std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (poly[i] == poly[(i + 1) % n]) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& prev = poly[(i + n - 1) % n];
        const Point& cur = poly[i];
        const Point& next = poly[(i + 1) % n];
        if (orient_sign(prev, cur, next) == 0 && dot(prev - cur, next - cur) > 0) return false;
    }
    if (n == 3) return orient_sign(poly[0], poly[1], poly[2]) != 0;
    std::vector<std::pair<Point, Point>> edges;
    edges.reserve(n);
    for (std::size_t i = 0; i < n; ++i) edges.emplace_back(poly[i], poly[(i + 1) % n]);
    for (auto [i, j] : box_overlap_pairs(edges)) {
        if (j == i + 1 || (i == 0 && j == n - 1)) continue;
        if (segments_intersect(edges[i].first, edges[i].second, edges[j].first, edges[j].second)) return false;
    }
    return true;
}

std::optional<SimplePolygon> make_simple_polygon(Polygon poly) {
    if (!is_simple(poly)) return std::nullopt;
    if (signed_area2(poly) < 0) std::reverse(poly.begin(), poly.end());
    return SimplePolygon{std::move(poly)};
}

Containment locate_point(const Point& p, const Polygon& poly) {
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        if (on_segment(p, poly[i], poly[(i + 1) % n])) return Containment::Boundary;
    int winding = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % n];
        if (a.y <= p.y) {
            if (b.y > p.y && orient_sign(a, b, p) > 0) ++winding;
        } else if (b.y <= p.y && orient_sign(a, b, p) < 0) {
            --winding;
        }
    }
    return winding != 0 ? Containment::Interior : Containment::Exterior;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && orient_sign(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orient_sign(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

Point AffineMap::apply(const Point& p) const {
    return {Coordinate(a * p.x + b * p.y + e), Coordinate(c * p.x + d * p.y + f)};
}

AffineMap AffineMap::inverse() const {
    Coordinate D = det();
    if (D == 0) fail(ErrorKind::InternalInvariant, "singular affine map");
    AffineMap r;
    r.a = d / D;
    r.b = -b / D;
    r.c = -c / D;
    r.d = a / D;
    r.e = -(r.a * e + r.b * f);
    r.f = -(r.c * e + r.d * f);
    return r;
}

AffineMap AffineMap::then(const AffineMap& n) const {
    AffineMap r;
    r.a = n.a * a + n.b * c;
    r.b = n.a * b + n.b * d;
    r.c = n.c * a + n.d * c;
    r.d = n.c * b + n.d * d;
    r.e = n.a * e + n.b * f + n.e;
    r.f = n.c * e + n.d * f + n.f;
    return r;
}

AffineMap AffineMap::shear_x(const Coordinate& lambda) {
    AffineMap m;
    m.b = lambda;
    return m;
}

AffineMap AffineMap::shear_y(const Coordinate& mu) {
    AffineMap m;
    m.c = mu;
    return m;
}

AffineMap AffineMap::mirror_x() {
    AffineMap m;
    m.a = -1;
    return m;
}

AffineMap AffineMap::mirror_y() {
    AffineMap m;
    m.d = -1;
    return m;
}

AffineMap ShearTransform::map() const { return AffineMap::shear_x(lambda).then(AffineMap::shear_y(mu)); }

namespace {

bool pairwise_distinct(std::vector<Coordinate> values) {
    std::sort(values.begin(), values.end());
    return std::adjacent_find(values.begin(), values.end()) == values.end();
}

}  // namespace

ShearResult shear_normalize(const std::vector<Point>& pts, int skip) {
    {
        std::vector<Point> sorted = pts;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) fail(ErrorKind::DuplicatePoint, "duplicate point " + to_string(*dup));
    }
    auto xs_after = [&](const Coordinate& lambda) {
        std::vector<Coordinate> xs;
        xs.reserve(pts.size());
        for (const Point& p : pts) xs.emplace_back(p.x + lambda * p.y);
        return xs;
    };
    ShearTransform tr{Coordinate(0), Coordinate(0)};
    if (skip > 0 || !pairwise_distinct(xs_after(Coordinate(0)))) {
        int remaining = skip;
        for (long m = 1;; ++m) {
            Coordinate lambda = rational(1, m);
            if (!pairwise_distinct(xs_after(lambda))) continue;
            if (remaining-- > 0) continue;
            tr.lambda = lambda;
            break;
        }
    }
    std::vector<Point> sheared;
    sheared.reserve(pts.size());
    for (const Point& p : pts) sheared.emplace_back(Coordinate(p.x + tr.lambda * p.y), p.y);
    auto ys_after = [&](const Coordinate& mu) {
        std::vector<Coordinate> ys;
        ys.reserve(sheared.size());
        for (const Point& p : sheared) ys.emplace_back(p.y + mu * p.x);
        return ys;
    };
    if (!pairwise_distinct(ys_after(Coordinate(0)))) {
        for (long m = 1;; ++m) {
            Coordinate mu = rational(1, m);
            if (pairwise_distinct(ys_after(mu))) {
                tr.mu = mu;
                break;
            }
        }
    }
    for (Point& p : sheared) p.y += tr.mu * p.x;
    return {tr, std::move(sheared)};
}

namespace {

struct IntPoint {
    long long x, y;
};

// Returns integer coordinates when a common denominator keeps every value
// below 2^30 in magnitude, so cross products of differences fit in __int128.
std::optional<std::vector<IntPoint>> to_small_integers(const std::vector<Point>& pts) {
    mpz_class l = 1;
    for (const Point& p : pts) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.x.get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.y.get_den_mpz_t());
        if (mpz_sizeinbase(l.get_mpz_t(), 2) > 31) return std::nullopt;
    }
    const mpz_class limit = mpz_class(1) << 30;
    std::vector<IntPoint> out;
    out.reserve(pts.size());
    for (const Point& p : pts) {
        mpz_class x = p.x.get_num() * (l / p.x.get_den());
        mpz_class y = p.y.get_num() * (l / p.y.get_den());
        if (abs(x) >= limit || abs(y) >= limit) return std::nullopt;
        out.push_back({x.get_si(), y.get_si()});
    }
    return out;
}

template <class Vec, class Cross, class Upper>
std::optional<std::array<std::size_t, 3>> collinear_scan(std::size_t n, Vec diff, Cross crs, Upper upper) {
    using V = decltype(diff(0, 0));
    std::vector<std::pair<V, std::size_t>> dirs;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        dirs.clear();
        for (std::size_t j = i + 1; j < n; ++j) dirs.emplace_back(upper(diff(j, i)), j);
        std::sort(dirs.begin(), dirs.end(),
                  [&](const auto& u, const auto& v) { return crs(u.first, v.first) > 0; });
        for (std::size_t m = 0; m + 1 < dirs.size(); ++m)
            if (crs(dirs[m].first, dirs[m + 1].first) == 0) {
                std::array<std::size_t, 3> t{i, dirs[m].second, dirs[m + 1].second};
                std::sort(t.begin(), t.end());
                return t;
            }
    }
    return std::nullopt;
}

// Directions from each anchor are sorted by a double-precision angle modulo
// pi. Each angle carries a proven error bound; only pairs whose angles could
// coincide are compared exactly.
std::optional<std::array<std::size_t, 3>> collinear_scan_filtered(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    std::vector<double> xd(n), yd(n);
    double mag = 0;
    for (std::size_t i = 0; i < n; ++i) {
        xd[i] = pts[i].x.get_d();
        yd[i] = pts[i].y.get_d();
        mag = std::max({mag, std::abs(xd[i]), std::abs(yd[i])});
    }
    const double pi = std::acos(-1.0);
    // per-component error of a double difference: two conversions and a subtraction
    const double comp_err = 8 * std::numeric_limits<double>::epsilon() * mag + std::numeric_limits<double>::min();
    struct Dir {
        double theta, tol;
        std::size_t j;
    };
    std::vector<Dir> dirs;
    auto exact_parallel = [&](std::size_t i, std::size_t a, std::size_t b) {
        return sign(cross3(pts[i], pts[a], pts[b])) == 0;
    };
    auto triple = [](std::size_t i, std::size_t a, std::size_t b) {
        std::array<std::size_t, 3> t{i, a, b};
        std::sort(t.begin(), t.end());
        return t;
    };
    for (std::size_t i = 0; i + 2 < n; ++i) {
        dirs.clear();
        double tolmax = 0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = xd[j] - xd[i], dy = yd[j] - yd[i];
            const double len = std::hypot(dx, dy);
            double theta = std::atan2(dy, dx);
            if (theta < 0) theta += pi;
            if (theta >= pi) theta -= pi;
            const double slack = 2 * comp_err;
            const double tol = len > 2 * slack ? 2 * slack / len + 1e-14 : pi;
            tolmax = std::max(tolmax, tol);
            dirs.push_back({theta, tol, j});
        }
        std::sort(dirs.begin(), dirs.end(), [](const Dir& a, const Dir& b) { return a.theta < b.theta; });
        const std::size_t m = dirs.size();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m && dirs[b].theta - dirs[a].theta <= dirs[a].tol + tolmax; ++b)
                if (dirs[b].theta - dirs[a].theta <= dirs[a].tol + dirs[b].tol &&
                    exact_parallel(i, dirs[a].j, dirs[b].j))
                    return triple(i, dirs[a].j, dirs[b].j);
        // angles near 0 and near pi describe nearly the same direction
        for (std::size_t a = 0; a < m && dirs[a].theta <= 2 * tolmax; ++a)
            for (std::size_t b = m; b-- > a + 1 && dirs[b].theta >= pi - 2 * tolmax;)
                if (dirs[a].theta + pi - dirs[b].theta <= dirs[a].tol + dirs[b].tol &&
                    exact_parallel(i, dirs[a].j, dirs[b].j))
                    return triple(i, dirs[a].j, dirs[b].j);
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::array<std::size_t, 3>> find_collinear_triple(const std::vector<Point>& pts) {
    std::size_t n = pts.size();
    if (n < 3) return std::nullopt;
    // Directions are flipped into the half-plane {y > 0} ∪ {y = 0, x > 0}, where
    // the cross-product sign is a strict weak order on angle.
    if (auto ip = to_small_integers(pts)) {
        const auto& q = *ip;
        using V = std::pair<long long, long long>;
        return collinear_scan(
            n, [&](std::size_t j, std::size_t i) { return V{q[j].x - q[i].x, q[j].y - q[i].y}; },
            [](const V& u, const V& v) {
                __int128 c = static_cast<__int128>(u.first) * v.second - static_cast<__int128>(u.second) * v.first;
                return c > 0 ? 1 : c < 0 ? -1 : 0;
            },
            [](V v) {
                if (v.second < 0 || (v.second == 0 && v.first < 0)) v = {-v.first, -v.second};
                return v;
            });
    }
    return collinear_scan_filtered(pts);
}

}  // namespace rainbow
