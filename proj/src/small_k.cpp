#include "rainbow/small_k.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "rainbow/error.hpp"
#include "rainbow/strip.hpp"
#include "rainbow/verify.hpp"

namespace rainbow {

namespace {

bool strictly_inside(const Point& p, const Point& a, const Point& b, const Point& c) {
    int s1 = orient_sign(a, b, p);
    return s1 != 0 && s1 == orient_sign(b, c, p) && s1 == orient_sign(c, a, p);
}

bool inside_closed(const Point& p, const Point& a, const Point& b, const Point& c) {
    int h = orient_sign(a, b, c);
    return orient_sign(a, b, p) * h >= 0 && orient_sign(b, c, p) * h >= 0 && orient_sign(c, a, p) * h >= 0;
}

bool strictly_between(const Point& p, const Point& a, const Point& b) {
    return p != a && p != b && on_segment(p, a, b);
}

std::optional<ExpedientLabeling> complete(const Point& x, const Point& y, const Point& z, const Point& a,
                                          const Point& b, const Point& c) {
    auto r = line_intersection(x, a, y, b);
    auto s = line_intersection(y, b, z, c);
    auto t = line_intersection(z, c, x, a);
    if (!r || !s || !t) return std::nullopt;
    if (!strictly_between(a, x, *r) || !strictly_between(b, y, *s) || !strictly_between(c, z, *t))
        return std::nullopt;
    ExpedientLabeling lab;
    lab.a = a;
    lab.b = b;
    lab.c = c;
    lab.r = *r;
    lab.s = *s;
    lab.t = *t;
    return lab;
}

Coordinate pow2_neg(int e) {
    mpz_class den = 1;
    den <<= e;
    return Coordinate(mpz_class(1), den);  // already canonical
}

Polygon ccw(Polygon poly) {
    if (sign(signed_area2(poly)) < 0) std::reverse(poly.begin(), poly.end());
    return poly;
}

}  // namespace

ExpedientLabeling expedient_labeling(const Point& x, const Point& y, const Point& z,
                                     const std::array<Point, 3>& in) {
    require(orient_sign(x, y, z) != 0, ErrorKind::DegenerateInput, "triangle corners are collinear");
    for (const Point& p : in)
        require(strictly_inside(p, x, y, z), ErrorKind::DegenerateInput, "point not strictly inside the triangle");
    require(!find_collinear_triple({x, y, z, in[0], in[1], in[2]}), ErrorKind::DegenerateInput,
            "collinear triple among the six points");

    const std::array<Point, 3> V{x, y, z};
    static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs) {
        int u = pr[0], w = pr[1], v = 3 - pr[0] - pr[1];
        // the corner on its own side of the line uw
        int X = -1;
        for (int j = 0; j < 3; ++j) {
            int sj = orient_sign(in[u], in[w], V[j]);
            if (sj != orient_sign(in[u], in[w], V[(j + 1) % 3]) && sj != orient_sign(in[u], in[w], V[(j + 2) % 3]))
                X = j;
        }
        if (X < 0) continue;
        int Y = (X + 1) % 3, Z = (X + 2) % 3;
        auto e1 = line_intersection(in[u], in[w], V[X], V[Y]);
        if (!e1) continue;
        if (squared_distance(in[w], *e1) < squared_distance(in[u], *e1)) std::swap(u, w);
        auto p = line_intersection(V[Y], in[u], V[Z], in[w]);
        if (!p) continue;

        // on_edge[j]: interior point assigned to the edge V[j] V[j+1]
        std::array<int, 3> on_edge{};
        const Point& pv = in[v];
        if (strictly_inside(pv, V[Y], V[Z], *p)) {
            on_edge[X] = u, on_edge[Y] = v, on_edge[Z] = w;
        } else if (strictly_inside(pv, V[X], V[Y], *p)) {
            on_edge[X] = v, on_edge[Y] = u, on_edge[Z] = w;
        } else if (strictly_inside(pv, V[Z], V[X], *p)) {
            on_edge[X] = u, on_edge[Y] = w, on_edge[Z] = v;
        } else {
            continue;
        }
        auto lab = complete(x, y, z, in[on_edge[0]], in[on_edge[1]], in[on_edge[2]]);
        if (!lab) continue;
        lab->order = on_edge;
        return *lab;
    }
    fail(ErrorKind::InternalInvariant, "no expedient labeling found");
}

EmptyExpedient empty_expedient_triangle(const ColoredPointSet& S, std::size_t xi, std::size_t yi, std::size_t zi) {
    const Point &x = S.point(xi), &y = S.point(yi), &z = S.point(zi);
    require(orient_sign(x, y, z) != 0, ErrorKind::PreconditionViolated, "triangle corners are collinear");
    const std::array<std::size_t, 3> corner{xi, yi, zi};
    const std::array<Point, 3> V{x, y, z};
    require(S.color(xi) != S.color(yi) && S.color(yi) != S.color(zi) && S.color(xi) != S.color(zi),
            ErrorKind::PreconditionViolated, "triangle corners must have distinct colors");

    std::vector<std::size_t> inner;
    for (std::size_t i = 0; i < S.n(); ++i) {
        if (i == xi || i == yi || i == zi) continue;
        const Point& p = S.point(i);
        if (!inside_closed(p, x, y, z)) continue;
        for (std::size_t c : corner)
            require(S.color(i) != S.color(c), ErrorKind::PreconditionViolated,
                    "corner color repeated inside the triangle");
        require(strictly_inside(p, x, y, z), ErrorKind::PreconditionViolated, "point on the triangle boundary");
        inner.push_back(i);
    }

    std::array<std::size_t, 3> cur{};
    int found = 0;
    for (std::size_t i : inner) {
        bool fresh = true;
        for (int m = 0; m < found; ++m) fresh = fresh && S.color(cur[m]) != S.color(i);
        if (fresh) cur[found++] = i;
        if (found == 3) break;
    }
    require(found == 3, ErrorKind::PreconditionViolated, "fewer than three colors inside the triangle");

    auto lab0 = expedient_labeling(x, y, z, {S.point(cur[0]), S.point(cur[1]), S.point(cur[2])});
    cur = {cur[lab0.order[0]], cur[lab0.order[1]], cur[lab0.order[2]]};
    Point r = lab0.r, s = lab0.s, t = lab0.t;

    EmptyExpedient out;
    out.x = xi, out.y = yi, out.z = zi;
    out.history.push_back({r, s, t});

    // Nested triangles: a point outside the current one stays outside, so
    // a single pass suffices; the loop only guards that claim.
    for (std::size_t pass = 0;; ++pass) {
        require(pass <= inner.size(), ErrorKind::InternalInvariant, "expedient triangle does not stabilise");
        bool changed = false;
        for (std::size_t d : inner) {
            if (d == cur[0] || d == cur[1] || d == cur[2]) continue;
            const Point& pd = S.point(d);
            if (!strictly_inside(pd, r, s, t)) continue;
            int j = 2;
            for (int m = 0; m < 3; ++m)
                if (S.color(cur[m]) == S.color(d)) j = m;
            // rename cyclically so the replaced point is the one paired with the third corner
            const int j0 = (j + 1) % 3, j1 = (j + 2) % 3;
            const Point &C1 = V[j1], &C2 = V[j];
            const std::size_t A = cur[j0], B = cur[j1];
            const int h = orient_sign(V[j0], C1, C2);
            std::array<std::size_t, 3> nxt;
            if (orient_sign(C2, S.point(B), pd) * h < 0)
                nxt = {A, B, d};
            else if (orient_sign(C1, S.point(A), pd) * h < 0)
                nxt = {A, d, B};
            else
                nxt = {d, A, B};
            cur[j0] = nxt[0], cur[j1] = nxt[1], cur[j] = nxt[2];

            auto lab = complete(x, y, z, S.point(cur[0]), S.point(cur[1]), S.point(cur[2]));
            require(lab.has_value(), ErrorKind::InternalInvariant, "update produced a non-expedient triple");
            for (const Point* q : {&lab->r, &lab->s, &lab->t})
                require(inside_closed(*q, r, s, t), ErrorKind::InternalInvariant, "expedient triangles not nested");
            r = lab->r, s = lab->s, t = lab->t;
            out.history.push_back({r, s, t});
            changed = true;
        }
        if (!changed) break;
    }
    out.a = cur[0], out.b = cur[1], out.c = cur[2];
    out.r = r, out.s = s, out.t = t;
    return out;
}

namespace {

std::array<std::size_t, 3> hull_triangle(const ColoredPointSet& S) {
    auto hull = convex_hull(S.points());
    require(hull.size() == 3, ErrorKind::PreconditionViolated, "convex hull is not a triangle");
    std::array<std::size_t, 3> idx{};
    for (int j = 0; j < 3; ++j) {
        auto it = std::find(S.points().begin(), S.points().end(), hull[j]);
        idx[j] = static_cast<std::size_t>(it - S.points().begin());
    }
    return idx;
}

Polygon hexagon(const EmptyExpedient& e, const ColoredPointSet& S, const Coordinate& tau) {
    const Point &x = S.point(e.x), &y = S.point(e.y), &z = S.point(e.z);
    return {x, lerp(e.r, x, tau), y, lerp(e.s, y, tau), z, lerp(e.t, z, tau)};
}

}  // namespace

EmptyExpedient empty_expedient_triangle(const ColoredPointSet& S) {
    auto c = hull_triangle(S);
    return empty_expedient_triangle(S, c[0], c[1], c[2]);
}

SimplePolygon rainbow_hexagon_in_triangle(const ColoredPointSet& S, std::size_t x, std::size_t y, std::size_t z) {
    auto e = empty_expedient_triangle(S, x, y, z);
    std::vector<int> want(S.k(), 0);
    for (std::size_t i : {e.x, e.y, e.z, e.a, e.b, e.c}) want[S.color(i)] = 1;
    for (int ex = 2; ex <= 160; ex += 2) {
        Polygon poly = ccw(hexagon(e, S, pow2_neg(ex)));
        if (!is_simple(poly)) continue;
        if (certify(poly, S).counts == want) return SimplePolygon{poly};
    }
    fail(ErrorKind::CertificationFailed, "hexagon did not certify");
}

SimplePolygon rainbow_hexagon_in_triangle(const ColoredPointSet& S) {
    auto c = hull_triangle(S);
    return rainbow_hexagon_in_triangle(S, c[0], c[1], c[2]);
}

long small_k_bound(std::size_t k) {
    static constexpr long bound[] = {0, 0, 0, 3, 4, 5, 6, 8};
    require(k >= 3 && k <= 7, ErrorKind::BadK, "small-k bound defined for 3 <= k <= 7");
    return bound[k];
}

namespace {

// Affine frame sending m1 -> (0,0), m2 -> (1,0), apex -> (0,-1). The
// strip between the line m1 m2 and its parallel through apex becomes
// -1 <= Y <= 0.
struct Frame {
    AffineMap to_world, to_local;
};

Frame make_frame(const Point& m1, const Point& m2, const Point& apex) {
    AffineMap g;
    g.a = (m2 - m1).x;
    g.b = (m1 - apex).x;
    g.e = m1.x;
    g.c = (m2 - m1).y;
    g.d = (m1 - apex).y;
    g.f = m1.y;
    return {g, g.inverse()};
}

using Builder = std::function<std::optional<Polygon>(const Coordinate&)>;

struct Candidate {
    std::string name;
    Builder build;
    std::vector<Point> apexes;  // vertices that may carry spikes
};

struct Interior {
    std::vector<std::size_t> idx;  // sorted by alpha
    std::vector<Coordinate> alpha;
};

// Points strictly inside the strip, keyed by where the ray from the apex
// through them meets the base line.
Interior interior_by_alpha(const ColoredPointSet& S, const Frame& fr) {
    std::vector<std::pair<Coordinate, std::size_t>> v;
    for (std::size_t i = 0; i < S.n(); ++i) {
        Point q = fr.to_local.apply(S.point(i));
        if (sign(q.y) >= 0 || q.y <= Coordinate(-1)) continue;
        v.emplace_back(q.x / (q.y + 1), i);
    }
    std::sort(v.begin(), v.end());
    Interior in;
    for (auto& [a, i] : v) {
        in.alpha.push_back(a);
        in.idx.push_back(i);
    }
    return in;
}

Polygon to_world(const Frame& fr, const Polygon& local) {
    Polygon out;
    out.reserve(local.size());
    for (const Point& p : local) out.push_back(fr.to_world.apply(p));
    return out;
}

const Point kA(0, -1), kM1(0, 0), kM2(1, 0);

Candidate fixed(const std::string& name, Polygon poly) {
    Candidate cand;
    cand.name = name;
    cand.apexes = poly;
    cand.build = [poly](const Coordinate&) -> std::optional<Polygon> { return poly; };
    return cand;
}

// Wedges at the apex around a window of consecutive interior points (by
// alpha) of distinct colors. A window end snaps to a marker when no interior
// point lies between them; otherwise a thin sliver reaches the marker.
void wedges(const ColoredPointSet& S, std::size_t apex, std::size_t m1, std::size_t m2, const std::string& name,
            long bound, std::vector<Candidate>& out) {
    Frame fr = make_frame(S.point(m1), S.point(m2), S.point(apex));
    Interior in = interior_by_alpha(S, fr);
    const std::vector<Point> apexes{S.point(apex), S.point(m1), S.point(m2)};
    const std::size_t N = in.idx.size();
    for (std::size_t i = 0; i < N; ++i) {
        std::vector<int> cols{S.color(apex), S.color(m1), S.color(m2)};
        for (std::size_t j = i; j < N; ++j) {
            const int cj = S.color(in.idx[j]);
            if (std::find(cols.begin(), cols.end(), cj) != cols.end()) break;
            cols.push_back(cj);
            std::sort(cols.begin(), cols.end());
            const long missing = static_cast<long>(S.k()) -
                                 static_cast<long>(std::unique(cols.begin(), cols.end()) - cols.begin());
            const Coordinate &ai = in.alpha[i], &aj = in.alpha[j];
            const bool snap_l = sign(ai) > 0 && (i == 0 || sign(in.alpha[i - 1]) < 0);
            const bool snap_r = aj < 1 && (j + 1 == N || in.alpha[j + 1] > 1);
            const bool free_r = !snap_r && i == j && !snap_l;  // lone point sits on the left edge
            long size = 1 + (snap_l || sign(ai) < 0 ? 1 : 2) + (snap_r || (!free_r && aj > 1) ? 1 : 2);
            if (size + 2 * missing > bound) continue;

            Candidate cand;
            cand.name = name;
            cand.apexes = apexes;
            cand.build = [fr, ai, aj, snap_l, snap_r, free_r](const Coordinate& tau) -> std::optional<Polygon> {
                Polygon poly{kA};
                Point P(ai, Coordinate(0));
                if (snap_l) {
                    poly.push_back(kM1);
                } else if (sign(ai) < 0) {
                    poly.push_back(P);
                } else {
                    poly.push_back(lerp(P, kA, tau));
                    poly.push_back(kM1);
                }
                Point Q(free_r ? ai + tau : aj, Coordinate(0));
                if (snap_r) {
                    poly.push_back(kM2);
                } else if (Q.x > 1) {
                    poly.push_back(Q);
                } else {
                    poly.push_back(kM2);
                    poly.push_back(lerp(Q, kA, tau));
                }
                return to_world(fr, poly);
            };
            out.push_back(std::move(cand));
        }
    }
    if (std::none_of(in.alpha.begin(), in.alpha.end(), [](const Coordinate& a) { return sign(a) > 0 && a < 1; }))
        out.push_back(fixed(name + "-triangle", {S.point(apex), S.point(m1), S.point(m2)}));
}

// Apex and its partner on one line, markers on the other; the polygon is the
// sector swept from the partner direction up to the first interior point.
Candidate apex_side(const ColoredPointSet& S, std::size_t apex, std::size_t partner, std::size_t ma, std::size_t mb,
                    const std::string& name) {
    Frame fr = make_frame(S.point(ma), S.point(mb), S.point(apex));
    if (sign(fr.to_local.apply(S.point(partner)).x) > 0) fr = make_frame(S.point(mb), S.point(ma), S.point(apex));
    Interior in = interior_by_alpha(S, fr);
    Point other = fr.to_local.apply(S.point(partner));
    Candidate cand;
    cand.name = name;
    cand.apexes = {S.point(apex), S.point(partner), S.point(ma), S.point(mb)};
    if (in.idx.empty()) {
        cand.build = [](const Coordinate&) -> std::optional<Polygon> { return std::nullopt; };
        return cand;
    }
    Coordinate p = in.alpha.front();
    cand.build = [fr, p, other](const Coordinate& tau) -> std::optional<Polygon> {
        Point P(p, Coordinate(0));
        Polygon poly{kA, other};
        poly.push_back(sign(p) < 0 ? P : kM1);
        if (p < 1) {
            poly.push_back(kM2);
            poly.push_back(lerp(P, kA, tau));
        } else {
            poly.push_back(P);
        }
        return to_world(fr, poly);
    };
    return cand;
}

std::optional<Candidate> hexagon_candidate(const ColoredPointSet& S, std::size_t x, std::size_t y, std::size_t z,
                                           const std::string& name) {
    EmptyExpedient e;
    try {
        e = empty_expedient_triangle(S, x, y, z);
    } catch (const Error& err) {
        if (err.kind() == ErrorKind::PreconditionViolated || err.kind() == ErrorKind::DegenerateInput)
            return std::nullopt;
        throw;
    }
    Candidate cand;
    cand.name = name;
    cand.apexes = {S.point(z), S.point(x), S.point(y)};
    const ColoredPointSet* sp = &S;
    cand.build = [e, sp](const Coordinate& tau) -> std::optional<Polygon> { return hexagon(e, *sp, tau); };
    return cand;
}

// Thin triangle from vertex i out to o, on whichever side of i keeps the
// counterclockwise orientation.
std::optional<Polygon> insert_spike(const Polygon& poly, std::size_t i, const Point& o, const Coordinate& tau) {
    const std::size_t m = poly.size();
    const Point& V = poly[i];
    const Point& prev = poly[(i + m - 1) % m];
    const Point& next = poly[(i + 1) % m];
    Polygon out;
    out.reserve(m + 2);
    if (sign(cross(o - V, next - V)) > 0) {
        for (std::size_t j = 0; j <= i; ++j) out.push_back(poly[j]);
        out.push_back(o);
        out.push_back(lerp(V, next, tau));
        for (std::size_t j = i + 1; j < m; ++j) out.push_back(poly[j]);
    } else if (sign(cross(prev - V, o - V)) > 0) {
        for (std::size_t j = 0; j < i; ++j) out.push_back(poly[j]);
        out.push_back(lerp(V, prev, tau));
        out.push_back(o);
        for (std::size_t j = i; j < m; ++j) out.push_back(poly[j]);
    } else {
        return std::nullopt;
    }
    return out;
}

constexpr std::size_t kSpikeTargets = 6;

std::optional<Polygon> add_spikes(const Polygon& poly, std::vector<int> missing, const std::vector<Point>& apexes,
                                  const Coordinate& tau, const ColoredPointSet& S, long bound) {
    if (missing.empty()) return poly;
    if (static_cast<long>(poly.size() + 2 * missing.size()) > bound) return std::nullopt;
    const int col = missing.back();
    missing.pop_back();
    for (const Point& apex : apexes) {
        auto it = std::find(poly.begin(), poly.end(), apex);
        if (it == poly.end()) continue;
        const std::size_t i = static_cast<std::size_t>(it - poly.begin());
        std::vector<std::size_t> targets = S.classes()[col];
        std::sort(targets.begin(), targets.end(), [&](std::size_t a, std::size_t b) {
            return squared_distance(S.point(a), apex) < squared_distance(S.point(b), apex);
        });
        if (targets.size() > kSpikeTargets) targets.resize(kSpikeTargets);
        for (std::size_t o : targets) {
            auto next = insert_spike(poly, i, S.point(o), tau);
            if (!next || !is_simple(*next)) continue;
            auto cert = certify(*next, S);
            bool ok = cert.counts[col] == 1;
            for (int c = 0; c < static_cast<int>(S.k()) && ok; ++c) {
                if (cert.counts[c] > 1) ok = false;
                if (cert.counts[c] == 1 && std::find(missing.begin(), missing.end(), c) != missing.end()) ok = false;
            }
            if (!ok) continue;
            if (auto done = add_spikes(*next, missing, apexes, tau, S, bound)) return done;
        }
    }
    return std::nullopt;
}

// Shrinks tau until the base polygon is simple with no repeated color, then
// tries to reach the missing colors by spikes.
std::optional<Polygon> realize(const Candidate& cand, const ColoredPointSet& S, long bound) {
    int settled = 0;
    for (int ex = 3; ex <= 150 && settled < 4; ex += 3) {
        const Coordinate tau = pow2_neg(ex);
        auto base = cand.build(tau);
        if (!base) return std::nullopt;
        Polygon poly = ccw(*base);
        if (!is_simple(poly)) continue;
        auto cert = certify(poly, S);
        if (std::any_of(cert.counts.begin(), cert.counts.end(), [](int c) { return c > 1; })) continue;
        ++settled;
        std::vector<int> missing;
        for (int c = static_cast<int>(S.k()) - 1; c >= 0; --c)
            if (cert.counts[c] == 0) missing.push_back(c);
        if (auto done = add_spikes(poly, missing, cand.apexes, tau, S, bound)) return done;
    }
    return std::nullopt;
}

std::vector<Candidate> candidates(const ColoredPointSet& S, const Strip& st, long bound) {
    const std::size_t x = st.x, y = st.y, z = st.z;
    std::vector<Candidate> out;
    out.push_back(fixed("triangle", {S.point(x), S.point(y), S.point(z)}));
    wedges(S, z, x, y, "wedge-z", bound, out);
    const bool other_w = st.kind == StripCase::WOtherColor && st.w;
    if (other_w) {
        const std::size_t w = *st.w;
        Polygon hull = convex_hull({S.point(x), S.point(y), S.point(z), S.point(w)});
        if (hull.size() == 4) out.push_back(fixed("trapezoid", hull));
        out.push_back(apex_side(S, y, x, z, w, "sector-y"));
        out.push_back(apex_side(S, x, y, z, w, "sector-x"));
        out.push_back(apex_side(S, z, w, x, y, "sector-z"));
        out.push_back(apex_side(S, w, z, x, y, "sector-w"));
        wedges(S, w, x, y, "wedge-w", bound, out);
        wedges(S, x, z, w, "wedge-x", bound, out);
        wedges(S, y, z, w, "wedge-y", bound, out);
    }
    if (S.k() >= 6) {
        if (auto h = hexagon_candidate(S, x, y, z, "hexagon")) out.push_back(std::move(*h));
        if (other_w) {
            const std::size_t w = *st.w;
            if (auto h = hexagon_candidate(S, x, y, w, "hexagon-w")) out.push_back(std::move(*h));
            if (auto h = hexagon_candidate(S, z, w, x, "hexagon-x")) out.push_back(std::move(*h));
            if (auto h = hexagon_candidate(S, z, w, y, "hexagon-y")) out.push_back(std::move(*h));
        }
    }
    return out;
}

}  // namespace

SimplePolygon solve_small(const ColoredPointSet& S, SmallKTrace* trace) {
    require(S.k() >= 3, ErrorKind::TooFewColors, "solve_small needs at least three colors");
    require(S.k() <= 7, ErrorKind::TooManyColors, "solve_small handles at most seven colors");
    const long bound = small_k_bound(S.k());
    Strip st = find_strip(S);
    int tried = 0;
    for (const Candidate& cand : candidates(S, st, bound)) {
        ++tried;
        auto poly = realize(cand, S, bound);
        if (!poly) continue;
        auto cert = certify(*poly, S);
        if (!cert.perfect || static_cast<long>(cert.size) > bound) continue;
        if (trace) {
            trace->construction = cand.name;
            trace->candidates_tried = tried;
        }
        return SimplePolygon{*poly};
    }
    fail(ErrorKind::CertificationFailed, "no small-k construction certified");
}

}  // namespace rainbow
