#include <algorithm>

#include "rainbow/error.hpp"
#include "rainbow/strip.hpp"

namespace rainbow {

namespace {

// Directions of the rotating lines live in the half-plane dy < 0 or
// (dy = 0, dx > 0); clockwise rotation from (1, 0) orders them.
Point to_half_plane(const Point& v) {
    int sy = sign(v.y);
    if (sy > 0 || (sy == 0 && sign(v.x) < 0)) return -v;
    return v;
}

bool clockwise_before(const Point& u, const Point& w) { return sign(cross(u, w)) < 0; }

enum class Role { A, B, G, O };

struct Event {
    Point dir;
    std::size_t p;
};

struct Sweep {
    std::vector<Point> P;
    const std::vector<int>& color;
    int k;
    int c1 = -1, c3 = -1;
    std::vector<Role> role;
    std::vector<int> side1, side2;  // +1 above / left of the directed line
    std::vector<int> count;         // open-strip points per color (other colors only)
    std::size_t pivot1 = 0, pivot2 = 0;
    StripTrace* trace;
    bool check;

    Sweep(std::vector<Point> pts, const std::vector<int>& col, int k_, StripTrace* tr, bool chk)
        : P(std::move(pts)), color(col), k(k_), trace(tr), check(chk) {}

    bool in_open(std::size_t p) const { return side1[p] < 0 && side2[p] > 0; }

    std::vector<Event> events_from(std::size_t pivot, int line, const Point& after) const {
        std::vector<Event> ev;
        for (std::size_t p = 0; p < P.size(); ++p) {
            if (p == pivot) continue;
            Role r = role[p];
            if (line == 1 && r == Role::B) continue;
            if (line == 2 && (r == Role::A || r == Role::G)) continue;
            Point d = to_half_plane(P[p] - P[pivot]);
            if (!clockwise_before(after, d)) continue;
            ev.push_back({d, p});
        }
        std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return clockwise_before(a.dir, b.dir); });
        return ev;
    }

    void check_invariants(const Point& d) {
        auto s1 = [&](std::size_t p) { return sign(cross(d, P[p] - P[pivot1])); };
        auto s2 = [&](std::size_t p) { return sign(cross(d, P[p] - P[pivot2])); };
        std::vector<int> closed(static_cast<std::size_t>(k), 0);
        for (std::size_t p = 0; p < P.size(); ++p) {
            int a = s1(p), b = s2(p);
            if (role[p] == Role::A && a < 0) trace->invariant_failures.push_back("I1: color-1 point below line 1");
            if (role[p] == Role::B && b > 0) trace->invariant_failures.push_back("I2: tracked color-3 point above line 2");
            if (color[p] == c3 && a < 0 && b > 0) trace->invariant_failures.push_back("I4: color-3 point in open strip");
            if (a <= 0 && b >= 0) ++closed[static_cast<std::size_t>(color[p])];
        }
        for (int c = 0; c < k; ++c)
            if (closed[static_cast<std::size_t>(c)] == 0) trace->invariant_failures.push_back("I3: color missing");
    }
};

struct RawStrip {
    std::size_t x, y, z;
    int i1, i2, i3;
};

RawStrip sweep_once(const std::vector<Point>& sheared, const std::vector<int>& color, int k, StripTrace* trace,
                    bool check) {
    const std::size_t n = sheared.size();
    Sweep sw(sheared, color, k, trace, check);
    auto& P = sw.P;

    std::vector<std::optional<std::size_t>> lowest(static_cast<std::size_t>(k));
    for (std::size_t p = 0; p < n; ++p) {
        auto& l = lowest[static_cast<std::size_t>(color[p])];
        if (!l || P[p].y < P[*l].y) l = p;
    }
    std::size_t x0 = *lowest[0];
    for (int c = 0; c < k; ++c)
        if (P[*lowest[static_cast<std::size_t>(c)]].y > P[x0].y) x0 = *lowest[static_cast<std::size_t>(c)];
    sw.c1 = color[x0];

    std::vector<std::optional<std::size_t>> top(static_cast<std::size_t>(k));
    for (std::size_t p = 0; p < n; ++p) {
        if (color[p] == sw.c1 || !(P[p].y < P[x0].y)) continue;
        auto& t = top[static_cast<std::size_t>(color[p])];
        if (!t || P[p].y > P[*t].y) t = p;
    }
    std::optional<std::size_t> z0;
    for (int c = 0; c < k; ++c) {
        const auto& t = top[static_cast<std::size_t>(c)];
        if (c == sw.c1) continue;
        if (!t) fail(ErrorKind::InternalInvariant, "color without a point below the highest lowest line");
        if (!z0 || P[*t].y < P[*z0].y) z0 = t;
    }
    sw.c3 = color[*z0];

    if (P[x0].x < P[*z0].x)
        for (Point& p : P) p.x = -p.x;

    sw.role.resize(n);
    sw.side1.resize(n);
    sw.side2.resize(n);
    sw.count.assign(static_cast<std::size_t>(k), 0);
    for (std::size_t p = 0; p < n; ++p) {
        if (color[p] == sw.c1)
            sw.role[p] = Role::A;
        else if (color[p] == sw.c3)
            sw.role[p] = P[p].y < P[x0].y ? Role::B : Role::G;
        else
            sw.role[p] = Role::O;
        sw.side1[p] = sign(P[p].y - P[x0].y);
        sw.side2[p] = sign(P[p].y - P[*z0].y);
        if (sw.role[p] == Role::O && sw.in_open(p)) ++sw.count[static_cast<std::size_t>(color[p])];
    }
    sw.pivot1 = x0;
    sw.pivot2 = *z0;

    Point d(1, 0);
    std::vector<Event> list1 = sw.events_from(sw.pivot1, 1, d), list2 = sw.events_from(sw.pivot2, 2, d);
    std::size_t h1 = 0, h2 = 0;
    if (check) sw.check_invariants(d);

    for (;;) {
        bool has1 = h1 < list1.size(), has2 = h2 < list2.size();
        if (!has1 && !has2) fail(ErrorKind::InternalInvariant, "strip sweep ran out of events");
        bool take1 = has1 && (!has2 || !clockwise_before(list2[h2].dir, list1[h1].dir));
        bool take2 = has2 && (!has1 || !clockwise_before(list1[h1].dir, list2[h2].dir));
        d = take1 ? list1[h1].dir : list2[h2].dir;

        std::optional<std::size_t> new_pivot1, new_pivot2, met_g, last1, last2;
        auto update = [&](std::size_t p, int line) {
            bool was = sw.in_open(p);
            const Point& pivot = P[line == 1 ? sw.pivot1 : sw.pivot2];
            int s = sign(dot(P[p] - pivot, d)) > 0 ? 1 : -1;
            (line == 1 ? sw.side1 : sw.side2)[p] = s;
            bool now = sw.in_open(p);
            auto& c = sw.count[static_cast<std::size_t>(color[p])];
            if (was && !now && --c == 0) (line == 1 ? last1 : last2) = p;
            if (!was && now) ++c;
        };
        if (take1) {
            std::size_t p = list1[h1++].p;
            if (trace) ++trace->events;
            if (sw.role[p] == Role::A)
                new_pivot1 = p;
            else if (sw.role[p] == Role::G)
                met_g = p;
            else
                update(p, 1);
        }
        if (take2) {
            std::size_t p = list2[h2++].p;
            if (trace) ++trace->events;
            if (sw.role[p] == Role::B)
                new_pivot2 = p;
            else
                update(p, 2);
        }
        if (check) sw.check_invariants(d);

        if (last1) {
            if (trace) trace->stop = 'A';
            return {sw.pivot1, *last1, sw.pivot2, sw.c1, color[*last1], sw.c3};
        }
        if (last2) {
            if (trace) trace->stop = 'B';
            return {sw.pivot2, *last2, sw.pivot1, sw.c3, color[*last2], sw.c1};
        }
        if (met_g) {
            if (trace) trace->stop = 'C';
            // Move line 2 up to the last point of the first color it would lose.
            std::vector<std::optional<std::size_t>> nearest(static_cast<std::size_t>(k));
            std::vector<Coordinate> depth(static_cast<std::size_t>(k));
            for (std::size_t p = 0; p < n; ++p) {
                if (sw.role[p] != Role::O || !sw.in_open(p)) continue;
                auto c = static_cast<std::size_t>(color[p]);
                Coordinate dist = cross(d, P[sw.pivot1] - P[p]);
                if (!nearest[c] || dist < depth[c]) {
                    nearest[c] = p;
                    depth[c] = dist;
                }
            }
            std::optional<std::size_t> u;
            for (int c = 0; c < k; ++c) {
                auto ci = static_cast<std::size_t>(c);
                if (c == sw.c1 || c == sw.c3) continue;
                if (!nearest[ci]) fail(ErrorKind::InternalInvariant, "color missing from the strip");
                if (!u || depth[ci] > depth[static_cast<std::size_t>(color[*u])]) u = nearest[ci];
            }
            return {sw.pivot1, *met_g, *u, sw.c1, sw.c3, color[*u]};
        }
        if (new_pivot1) {
            sw.pivot1 = *new_pivot1;
            list1 = sw.events_from(sw.pivot1, 1, d);
            h1 = 0;
            if (trace) ++trace->pivot_changes;
        }
        if (new_pivot2) {
            sw.pivot2 = *new_pivot2;
            list2 = sw.events_from(sw.pivot2, 2, d);
            h2 = 0;
            if (trace) ++trace->pivot_changes;
        }
    }
}

}  // namespace

std::vector<std::string> check_strip(const ColoredPointSet& S, const Strip& st) {
    std::vector<std::string> bad;
    const std::size_t n = S.n();
    if (st.x >= n || st.y >= n || st.z >= n || (st.w && *st.w >= n)) return {"index out of range"};
    const Point &x = S.point(st.x), &y = S.point(st.y), &z = S.point(st.z);
    if (S.color(st.x) != st.i1 || S.color(st.y) != st.i2 || S.color(st.z) != st.i3) bad.push_back("pivot colors");
    if (st.i1 == st.i2 || st.i1 == st.i3 || st.i2 == st.i3) bad.push_back("colors not distinct");
    if (x == y) return {"degenerate line 1"};
    Point dir = y - x;
    Point z2 = z + dir;
    if (orient_sign(x, y, z) == 0) bad.push_back("z on line 1");

    std::vector<int> in_closed(S.k(), 0);
    std::vector<std::size_t> on2;
    for (std::size_t p = 0; p < n; ++p) {
        int a = orient_sign(x, y, S.point(p)), b = orient_sign(z, z2, S.point(p));
        if (a * b <= 0) ++in_closed[static_cast<std::size_t>(S.color(p))];
        if (b == 0 && p != st.z) on2.push_back(p);
    }
    for (std::size_t c = 0; c < S.k(); ++c)
        if (in_closed[c] == 0) bad.push_back("(i) color " + std::to_string(S.label_of(static_cast<int>(c))) + " missing");
    if (in_closed[static_cast<std::size_t>(st.i1)] != 1) bad.push_back("(ii) x not the only point of its color");
    if (in_closed[static_cast<std::size_t>(st.i2)] != 1) bad.push_back("(ii) y not the only point of its color");

    if (on2.size() > 1) bad.push_back("line 2 holds three points");
    std::optional<std::size_t> w;
    if (!on2.empty()) w = on2.front();
    if (w != st.w) bad.push_back("reported w does not match line 2");
    int c3_count = in_closed[static_cast<std::size_t>(st.i3)];
    if (!w) {
        if (st.kind != StripCase::WAbsent) bad.push_back("case should be WAbsent");
        if (c3_count != 1) bad.push_back("(iv) z not the only point of its color");
    } else {
        int cw = S.color(*w);
        if (cw == st.i3) {
            if (st.kind != StripCase::WSameColor) bad.push_back("case should be WSameColor");
            if (c3_count != 2) bad.push_back("(v) z, w not the only points of their color");
        } else if (cw != st.i1 && cw != st.i2) {
            if (st.kind != StripCase::WOtherColor) bad.push_back("case should be WOtherColor");
            if (c3_count != 1) bad.push_back("(v) z not the only point of its color");
        } else {
            bad.push_back("(v) w has color i1 or i2");
        }
    }
    return bad;
}

Strip find_strip(const ColoredPointSet& S, StripTrace* trace, bool check_invariants) {
    require(S.k() >= 3, ErrorKind::TooFewColors, "a strip needs at least 3 colors");
    StripTrace local;
    StripTrace* tr = trace ? trace : &local;
    constexpr int kAttempts = 8;
    std::string last;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        *tr = StripTrace{};
        tr->shear_attempts = attempt + 1;
        ShearResult sh = shear_normalize(S.points(), attempt);
        RawStrip raw;
        try {
            raw = sweep_once(sh.points, S.colors(), static_cast<int>(S.k()), tr, check_invariants);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::InternalInvariant) throw;
            last = e.what();
            continue;
        }
        Strip st{raw.x, raw.y, raw.z, std::nullopt, raw.i1, raw.i2, raw.i3, StripCase::WAbsent};
        const Point &x = S.point(st.x), &y = S.point(st.y), &z = S.point(st.z);
        for (std::size_t p = 0; p < S.n(); ++p)
            if (p != st.z && orient_sign(z, z + (y - x), S.point(p)) == 0) st.w = p;
        if (st.w) st.kind = S.color(*st.w) == st.i3 ? StripCase::WSameColor : StripCase::WOtherColor;
        auto problems = check_strip(S, st);
        if (problems.empty()) return st;
        last = problems.front();
    }
    fail(ErrorKind::InternalInvariant, "no valid strip under any shear: " + last);
}

}  // namespace rainbow
