#include "rainbow/verify.hpp"

#include <algorithm>
#include <cmath>

#include "rainbow/error.hpp"

namespace rainbow {

namespace {

// mpq_get_d truncates, so the true value is within one ulp of the result; the
// margin below is several ulps wide and also covers underflow.
double margin_of(double d) { return std::fabs(d) * 0x1p-50 + 1e-300; }

struct Approx {
    double lo, hi;
};

Approx approx(const Coordinate& v) {
    double d = v.get_d();
    double m = margin_of(d);
    return {d - m, d + m};
}

mpz_class lcm3(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_mpz_t());
    return l;
}

mpz_class scaled(const Coordinate& q, const mpz_class& l) { return q.get_num() * (l / q.get_den()); }

}  // namespace

PolygonLocator::PolygonLocator(const Polygon& poly) {
    box_x_ = {INFINITY, -INFINITY};
    box_y_ = {INFINITY, -INFINITY};
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
        Edge e;
        e.a = poly[i];
        e.b = poly[(i + 1) % n];
        Approx ax = approx(e.a.x), bx = approx(e.b.x), ay = approx(e.a.y), by = approx(e.b.y);
        e.x = {std::min(ax.lo, bx.lo), std::max(ax.hi, bx.hi)};
        e.y = {std::min(ay.lo, by.lo), std::max(ay.hi, by.hi)};
        box_x_ = {std::min(box_x_.lo, e.x.lo), std::max(box_x_.hi, e.x.hi)};
        box_y_ = {std::min(box_y_.lo, e.y.lo), std::max(box_y_.hi, e.y.hi)};
        Coordinate dx = e.b.x - e.a.x, dy = e.b.y - e.a.y;
        Coordinate c = dx * e.a.y - dy * e.a.x;
        mpz_class l = lcm3(dx.get_den(), dy.get_den(), c.get_den());
        e.dx = scaled(dx, l);
        e.dy = scaled(dy, l);
        e.c = scaled(c, l);
        edges_.push_back(std::move(e));
    }
}

Containment PolygonLocator::locate(const Point& p) const {
    Approx px = approx(p.x), py = approx(p.y);
    if (px.hi < box_x_.lo || px.lo > box_x_.hi || py.hi < box_y_.lo || py.lo > box_y_.hi)
        return Containment::Exterior;
    const mpz_class& xn = p.x.get_num();
    const mpz_class& xd = p.x.get_den();
    const mpz_class& yn = p.y.get_num();
    const mpz_class& yd = p.y.get_den();
    mpz_class t1, t2, t3;
    int winding = 0;
    for (const Edge& e : edges_) {
        if (py.hi < e.y.lo || py.lo > e.y.hi) continue;
        if (px.lo > e.x.hi) continue;  // edge entirely left: neither boundary nor a winding change
        // sign of (b-a) x (p-a), scaled by positive denominators
        t1 = e.dx * yn;
        t1 *= xd;
        t2 = e.dy * xn;
        t2 *= yd;
        t3 = e.c * xd;
        t3 *= yd;
        t1 -= t2;
        t1 -= t3;
        int s = sgn(t1);
        if (s == 0) {
            if (std::min(e.a.x, e.b.x) <= p.x && p.x <= std::max(e.a.x, e.b.x) && std::min(e.a.y, e.b.y) <= p.y &&
                p.y <= std::max(e.a.y, e.b.y))
                return Containment::Boundary;
            continue;
        }
        if (e.a.y <= p.y) {
            if (e.b.y > p.y && s > 0) ++winding;
        } else if (e.b.y <= p.y && s < 0) {
            --winding;
        }
    }
    return winding != 0 ? Containment::Interior : Containment::Exterior;
}

RainbowCertificate certify(const Polygon& poly, const ColoredPointSet& S) {
    if (!is_simple(poly)) fail(ErrorKind::NotSimple, "polygon is not simple");
    RainbowCertificate cert;
    cert.size = poly.size();
    cert.counts.assign(S.k(), 0);
    PolygonLocator loc(poly);
    for (std::size_t i = 0; i < S.n(); ++i)
        if (loc.locate(S.point(i)) != Containment::Exterior) ++cert.counts[S.color(i)];
    cert.perfect = std::all_of(cert.counts.begin(), cert.counts.end(), [](int c) { return c == 1; });
    return cert;
}

SegmentStats segment_stats(const SegmentPartition& partition, const std::vector<Point>& targets) {
    const auto& segs = partition.segments;
    std::vector<int> load(segs.size(), 0);
    for (const Point& p : targets) {
        std::size_t chosen = SIZE_MAX;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            if (!on_segment(p, segs[i].a, segs[i].b)) continue;
            bool interior = p != segs[i].a && p != segs[i].b;
            if (interior) {
                chosen = i;
                break;
            }
            if (chosen == SIZE_MAX) chosen = i;
        }
        if (chosen == SIZE_MAX) fail(ErrorKind::UncoveredTarget, "target " + to_string(p) + " lies on no segment");
        ++load[chosen];
    }
    SegmentStats st;
    st.s = segs.size();
    for (int l : load) {
        if (l == 0) ++st.s0;
        else if (l == 1) ++st.s1;
        else if (l == 2) ++st.s2;
        else fail(ErrorKind::PreconditionViolated, "a segment carries three or more targets");
    }
    st.t = SegmentPartition{segs, compute_forks(segs)}.t();
    return st;
}

bool lemma20_holds(const SegmentStats& st) {
    return static_cast<long>(st.s2) <= 8 * static_cast<long>(st.s0) + 9 * static_cast<long>(st.s1) + 4 * (st.t + 1);
}

Coordinate lower_bound_tree(long n) {
    require(n >= 4 && n % 2 == 0, ErrorKind::BadN, "n must be even and at least 4");
    return rational(20 * n - 8, 19);
}

Coordinate lower_bound_rainbow(long k) {
    require(k >= 5, ErrorKind::BadK, "k must be at least 5");
    return rational(40 * ((k - 1) / 2) - 8, 19);
}

long upper_bound_rainbow(long k) {
    require(k >= 1, ErrorKind::BadK, "k must be positive");
    static const long table[] = {3, 4, 5, 6, 8};
    if (k <= 2) return 3;
    if (k <= 7) return table[k - 3];
    return 10 * (k / 7) + 11;
}

long ceil_of(const Coordinate& q) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return c.get_si();
}

}  // namespace rainbow
