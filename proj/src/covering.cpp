#include <algorithm>
#include <set>

#include "rainbow/covering.hpp"
#include "rainbow/error.hpp"

namespace rainbow {

namespace {

[[noreturn]] void degenerate(const std::string& msg) { fail(ErrorKind::DegenerateInput, msg); }

CoveringTree star(const Point& center, const std::vector<Point>& arms, std::vector<Point> targets) {
    CoveringTree t;
    t.vertices.push_back(center);
    for (std::size_t i = 0; i < arms.size(); ++i) {
        t.vertices.push_back(arms[i]);
        t.edges.emplace_back(0, i + 1);
    }
    t.targets = std::move(targets);
    return t;
}

CoveringTree path(const std::vector<Point>& pts, std::vector<Point> targets) {
    CoveringTree t;
    t.vertices = pts;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) t.edges.emplace_back(i, i + 1);
    t.targets = std::move(targets);
    return t;
}

// Point among `cands` hit first when rotating the ray apex->ref; cw picks the
// rotation sense. Angles are measured over the full turn.
Point first_by_rotation(const Point& apex, const Point& ref, const std::vector<Point>& cands, bool cw) {
    Point u = ref - apex;
    auto half = [&](const Point& v) {
        int c = sign(cross(u, v));
        if (cw) c = -c;
        return (c > 0 || (c == 0 && sign(dot(u, v)) > 0)) ? 0 : 1;
    };
    auto before = [&](const Point& a, const Point& b) {
        Point va = a - apex, vb = b - apex;
        int ha = half(va), hb = half(vb);
        if (ha != hb) return ha < hb;
        int c = sign(cross(va, vb));
        return cw ? c < 0 : c > 0;
    };
    return *std::min_element(cands.begin(), cands.end(), before);
}

std::vector<Point> without(const std::vector<Point>& pts, const std::vector<Point>& drop) {
    std::vector<Point> out;
    for (const Point& p : pts)
        if (std::find(drop.begin(), drop.end(), p) == drop.end()) out.push_back(p);
    return out;
}

std::vector<Point> lower_arc(const std::vector<Point>& sorted) {
    std::vector<Point> h;
    for (const Point& p : sorted) {
        while (h.size() >= 2 && sign(cross3(h[h.size() - 2], h.back(), p)) <= 0) h.pop_back();
        h.push_back(p);
    }
    return h;
}

bool trees_touch(const CoveringTree& a, const CoveringTree& b) {
    for (auto [u, w] : a.edges)
        for (auto [x, y] : b.edges)
            if (segments_intersect(a.vertices[u], a.vertices[w], b.vertices[x], b.vertices[y])) return true;
    return false;
}

std::vector<Segment> tree_edges_as_segments(const CoveringTree& t) {
    std::vector<Segment> out;
    for (auto [u, w] : t.edges) out.push_back({t.vertices[u], t.vertices[w]});
    return out;
}

}  // namespace

SevenCover cover_seven(const std::vector<Point>& input) {
    if (input.size() != 7) degenerate("cover_seven needs exactly 7 points");
    for (std::size_t i = 0; i + 1 < 7; ++i)
        if (!(input[i].x < input[i + 1].x)) degenerate("cover_seven needs strictly increasing x");

    std::vector<Point> S = input;
    int below = 0;
    for (std::size_t i = 1; i < 6; ++i) {
        int o = orient_sign(S[0], S[6], S[i]);
        if (o == 0) degenerate("collinear with p1p7");
        if (o < 0) ++below;
    }
    SevenCover out;
    out.reflected = below < 3;
    if (out.reflected)
        for (Point& p : S) p.y = -p.y;

    const Point& p1 = S[0];
    const Point& p7 = S[6];
    std::vector<Point> arc = lower_arc(S);
    std::vector<Point> rest;
    if (arc.size() == 3) {
        const Point& pi = arc[1];
        std::vector<Point> inner;
        for (const Point& p : S)
            if (p != pi && orient_sign(p1, p7, p) < 0) inner.push_back(p);
        if (inner.size() < 2) degenerate("fewer than two points inside the lower triangle");
        Point pa = first_by_rotation(p1, pi, inner, false);
        Point pb = first_by_rotation(p7, pi, inner, true);
        Point center;
        if (pa != pb) {
            auto q = line_intersection(p1, pa, p7, pb);
            if (!q) degenerate("parallel rays");
            center = *q;
            out.shape = SevenCover::Shape::StarDistinct;
            rest = without(S, {p1, pi, p7, pa, pb});
        } else {
            Point dir = pa - pi;
            int p1_side = orient_sign(pi, pa, p1);
            std::optional<Coordinate> best;
            Point pc;
            for (const Point& c : inner) {
                if (c == pa) continue;
                int side = orient_sign(pi, pa, c);
                if (side == 0) degenerate("point on the apex ray");
                const Point& from = side == p1_side ? p1 : p7;
                auto x = line_intersection(from, c, pi, pa);
                if (!x) degenerate("parallel event line");
                Coordinate lambda = dot(*x - pi, dir) / squared_norm(dir);
                if (lambda <= 1) degenerate("event before the shared point");
                if (!best || lambda < *best) {
                    best = lambda;
                    pc = c;
                }
            }
            if (!best) degenerate("no event along the apex ray");
            center = pi + *best * dir;
            out.shape = SevenCover::Shape::StarShared;
            rest = without(S, {p1, pi, p7, pa, pc});
        }
        out.t1 = star(center, {p1, pi, p7}, {});
        out.v1_neighbor = center;
    } else {
        const Point &pi = arc[1], &pj = arc[2], &pk = arc[3];
        auto q = line_intersection(p1, pi, pj, pk);
        if (!q) degenerate("parallel hull edges");
        Point pa = first_by_rotation(pk, pj, without(S, {p1, pi, pj, pk}), true);
        out.t1 = path({p1, *q, pk, pa}, {});
        out.v1_neighbor = *q;
        out.shape = SevenCover::Shape::Path;
        rest = without(S, {p1, pi, pj, pk, pa});
    }
    if (rest.size() != 2) degenerate("seven-point cover left " + std::to_string(rest.size()) + " points");
    std::sort(rest.begin(), rest.end());
    out.t2 = path({rest[0], rest[1]}, {});
    out.v1 = p1;
    out.v2 = rest[0];
    out.v2_neighbor = rest[1];

    // Split targets between the trees by coverage.
    for (const Point& p : S) {
        bool in1 = std::find(out.t1.vertices.begin(), out.t1.vertices.end(), p) != out.t1.vertices.end();
        for (auto [u, w] : out.t1.edges) in1 = in1 || on_segment(p, out.t1.vertices[u], out.t1.vertices[w]);
        (in1 ? out.t1 : out.t2).targets.push_back(p);
    }

    if (out.reflected) {
        AffineMap m = AffineMap::mirror_y();
        out.t1 = transform_tree(out.t1, m);
        out.t2 = transform_tree(out.t2, m);
        for (Point* p : {&out.v1, &out.v2, &out.v1_neighbor, &out.v2_neighbor}) *p = m.apply(*p);
    }
    out.left = input[0].x;
    out.right = input[6].x;

    try {
        validate_tree(out.t1);
        validate_tree(out.t2);
    } catch (const Error& e) {
        degenerate(std::string("seven-point cover invalid: ") + e.what());
    }
    if (out.t1.vertices.size() != 4 || out.t1.targets.size() != 5 || out.t2.targets.size() != 2)
        degenerate("seven-point cover has the wrong shape");
    if (trees_touch(out.t1, out.t2)) degenerate("seven-point trees touch");
    for (const CoveringTree* t : {&out.t1, &out.t2})
        for (const Point& v : t->vertices)
            if (v.x < out.left || v.x > out.right) degenerate("seven-point cover leaves its strip");
    if (!(out.v1.x < out.v1_neighbor.x) || !(out.v2.x < out.v2_neighbor.x))
        degenerate("special leaf extension does not point left");
    return out;
}

JoinResult extend_and_join(const std::vector<LeafTree>& forest, const Coordinate& barrier_x) {
    struct Placed {
        Segment seg;
        std::size_t owner;
    };
    std::vector<Placed> placed;
    for (std::size_t i = 0; i < forest.size(); ++i)
        for (const Segment& s : forest[i].segments) placed.push_back({s, i});

    std::vector<std::size_t> order(forest.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return forest[b].leaf.x < forest[a].leaf.x; });

    JoinResult out;
    std::vector<Coordinate> barrier_hits;
    for (std::size_t i : order) {
        const LeafTree& lt = forest[i];
        const Point& L = lt.leaf;
        const Point& d = lt.direction;
        if (sign(d.x) >= 0) fail(ErrorKind::InternalInvariant, "extension does not point left");
        if (!(barrier_x < L.x)) fail(ErrorKind::InternalInvariant, "leaf is not right of the barrier");

        Coordinate best = (barrier_x - L.x) / d.x;
        std::optional<std::size_t> best_seg;
        bool endpoint_hit = false;
        double lx = L.x.get_d(), ly = L.y.get_d(), dx = d.x.get_d(), dy = d.y.get_d();
        // certified side of p with respect to the ray's line: +1, -1, or 0 if unsure
        auto side = [&](double px, double py) {
            double v = dx * (py - ly) - dy * (px - lx);
            double err = (std::abs(dx) * (std::abs(py) + std::abs(ly)) + std::abs(dy) * (std::abs(px) + std::abs(lx))) * 0x1p-48;
            return v > err ? 1 : (v < -err ? -1 : 0);
        };
        for (std::size_t s = 0; s < placed.size(); ++s) {
            const Point &c = placed[s].seg.a, &e = placed[s].seg.b;
            double cx = c.x.get_d(), ex = e.x.get_d();
            if (std::min(cx, ex) > lx + 1e-9 * (1 + std::abs(lx))) continue;
            int sc = side(cx, c.y.get_d()), se = side(ex, e.y.get_d());
            if (sc != 0 && sc == se) continue;
            Point ce = e - c;
            Coordinate den = cross(d, ce);
            Point lc = c - L;
            if (sign(den) == 0) {
                if (sign(cross(lc, d)) == 0 && placed[s].owner != i) {
                    // collinear with the ray: degenerate whenever it lies ahead
                    Coordinate ta = dot(lc, d), tb = dot(e - L, d);
                    if (sign(ta) > 0 || sign(tb) > 0) degenerate("extension runs along a segment");
                }
                continue;
            }
            Coordinate tau = cross(lc, ce) / den;
            Coordinate sigma = cross(lc, d) / den;
            if (sign(tau) <= 0 || sigma < 0 || sigma > 1) continue;
            if (placed[s].owner == i) fail(ErrorKind::InternalInvariant, "extension crosses its own tree");
            bool at_end = sign(sigma) == 0 || sigma == 1;
            if (tau < best) {
                best = tau;
                best_seg = s;
                endpoint_hit = at_end;
            } else if (tau == best) {
                endpoint_hit = true;
            }
        }
        if (endpoint_hit) degenerate("extension hits a segment endpoint");
        Point hit = L + best * d;
        if (!best_seg) barrier_hits.push_back(hit.y);
        out.fork_points.push_back(hit);

        bool extended = false;
        for (Placed& p : placed) {
            if (p.owner != i) continue;
            if (p.seg.a == L) {
                p.seg.a = hit;
                extended = true;
            } else if (p.seg.b == L) {
                p.seg.b = hit;
                extended = true;
            }
            if (extended) break;
        }
        if (!extended) fail(ErrorKind::InternalInvariant, "special leaf is not a segment endpoint");
    }
    if (barrier_hits.empty()) fail(ErrorKind::InternalInvariant, "no extension reached the barrier");
    std::sort(barrier_hits.begin(), barrier_hits.end());
    if (std::adjacent_find(barrier_hits.begin(), barrier_hits.end()) != barrier_hits.end())
        degenerate("two extensions meet on the barrier");
    out.barrier = {Point(barrier_x, barrier_hits.front() - 1), Point(barrier_x, barrier_hits.back() + 1)};
    for (const Placed& p : placed) out.segments.push_back(p.seg);
    out.segments.push_back(out.barrier);
    return out;
}

namespace {

CoveringResult build_once(const std::vector<Point>& pts, int attempt) {
    ShearResult sh = shear_normalize(pts, attempt);
    std::vector<Point> S = sh.points;
    std::sort(S.begin(), S.end());
    const std::size_t n = S.size();
    const std::size_t j = n / 7;

    std::vector<LeafTree> forest;
    for (std::size_t g = 0; g < j; ++g) {
        std::vector<Point> group(S.begin() + static_cast<long>(7 * g), S.begin() + static_cast<long>(7 * g + 7));
        SevenCover c = cover_seven(group);
        forest.push_back({tree_edges_as_segments(c.t1), c.v1, c.v1 - c.v1_neighbor});
        forest.push_back({tree_edges_as_segments(c.t2), c.v2, c.v2 - c.v2_neighbor});
    }
    for (std::size_t i = 7 * j; i < n; i += 2) {
        if (i + 1 < n) {
            forest.push_back({{{S[i], S[i + 1]}}, S[i], S[i] - S[i + 1]});
        } else {
            Coordinate len = 1;
            for (std::size_t a = 0; a + 1 < n; ++a) {
                Coordinate gap = S[a + 1].x - S[a].x;
                if (a == 0 || gap < len) len = gap;
            }
            len /= 2;
            Point tip(S[i].x + len, S[i].y);
            forest.push_back({{{S[i], tip}}, S[i], S[i] - tip});
        }
    }

    JoinResult joined = extend_and_join(forest, S.front().x - 1);
    CoveringTree tree = tree_from_segments(joined.segments, S);
    validate_tree(tree);
    SegmentPartition part = partition_tree(tree);
    if (part.s() != expected_segments(n) || part.t() != expected_forks(n))
        degenerate("segment or fork count differs from the closed form");
    for (const Fork& f : part.forks)
        if (f.multiplicity != 1) degenerate("fork of multiplicity two");

    CoveringResult res;
    const AffineMap back = sh.transform.map().inverse();
    res.tree = transform_tree(tree, back);
    res.barrier = {back.apply(joined.barrier.a), back.apply(joined.barrier.b)};
    res.tree.targets = pts;
    res.partition = partition_tree(res.tree);
    res.attempts = attempt + 1;
    return res;
}

}  // namespace

CoveringResult build_covering_tree(const std::vector<Point>& pts) {
    require(!pts.empty(), ErrorKind::BadN, "covering tree needs at least one point");
    constexpr int kAttempts = 12;
    std::string last;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        try {
            return build_once(pts, attempt);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateInput && e.kind() != ErrorKind::InternalInvariant) throw;
            last = e.what();
        }
    }
    fail(ErrorKind::DegenerateInput, "covering tree construction failed under every shear: " + last);
}

}  // namespace rainbow
