#include "rainbow/thicken.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "rainbow/error.hpp"
#include "rainbow/verify.hpp"

namespace rainbow {

namespace {

constexpr double kUnit = 0x1p-52;

Coordinate pow2(long j) {
    Coordinate r(1);
    if (j >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(j));
    else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-j));
    return r;
}

// Largest 2^j satisfying a predicate that holds for all sufficiently small
// values and fails for large ones. `guess` seeds the exponent.
template <class Pred>
Coordinate largest_power_of_two(Pred ok, double guess) {
    long j = (std::isfinite(guess) && guess > 0) ? static_cast<long>(std::floor(std::log2(guess))) : 0;
    j = std::clamp(j, -4000L, 4000L);
    while (!ok(pow2(j))) --j;
    while (ok(pow2(j + 1))) ++j;
    return pow2(j);
}

struct EdgeApprox {
    double ax, ay, bx, by;
    double x0, x1, y0, y1;  // bounding box, widened for rounding
    double nx, ny, c;       // unit normal line equation
    double err_scale;       // direction error factor from endpoint rounding
    bool degenerate;
};

EdgeApprox approx_edge(const Point& a, const Point& b) {
    EdgeApprox e;
    e.ax = a.x.get_d();
    e.ay = a.y.get_d();
    e.bx = b.x.get_d();
    e.by = b.y.get_d();
    double m = (std::fabs(e.ax) + std::fabs(e.ay) + std::fabs(e.bx) + std::fabs(e.by) + 1) * 4 * kUnit;
    e.x0 = std::min(e.ax, e.bx) - m;
    e.x1 = std::max(e.ax, e.bx) + m;
    e.y0 = std::min(e.ay, e.by) - m;
    e.y1 = std::max(e.ay, e.by) + m;
    double dx = e.bx - e.ax, dy = e.by - e.ay;
    double len = std::hypot(dx, dy);
    e.degenerate = !(len > 1e3 * m);
    if (!e.degenerate) {
        e.nx = -dy / len;
        e.ny = dx / len;
        e.c = e.nx * e.ax + e.ny * e.ay;
        e.err_scale = 64 * m / len;
    }
    return e;
}

// A lower bound on the distance from (px, py) to the edge, or 0 when no safe
// bound is available. The line term carries an explicit rounding allowance.
double distance_lower_bound(const EdgeApprox& e, double px, double py) {
    double pm = (std::fabs(px) + std::fabs(py) + 1) * 4 * kUnit;
    double gx = std::max({0.0, e.x0 - (px + pm), (px - pm) - e.x1});
    double gy = std::max({0.0, e.y0 - (py + pm), (py - pm) - e.y1});
    double box = std::hypot(gx, gy) * (1 - 16 * kUnit);
    if (e.degenerate) return box;
    double reach = std::fabs(px - e.ax) + std::fabs(py - e.ay) + 1;
    double err = e.err_scale * reach + 64 * pm + 64 * kUnit * std::fabs(e.c);
    double line = std::fabs(e.nx * px + e.ny * py - e.c) - err;
    return std::max(box, line);
}

std::vector<std::pair<Point, Point>> tree_segments(const CoveringTree& tree) {
    std::vector<std::pair<Point, Point>> segs;
    for (auto [u, w] : tree.edges) segs.emplace_back(tree.vertices[u], tree.vertices[w]);
    if (segs.empty() && !tree.vertices.empty()) segs.emplace_back(tree.vertices[0], tree.vertices[0]);
    return segs;
}

Point linf_normalized(const Point& d) {
    Coordinate m = std::max(abs_value(d.x), abs_value(d.y));
    return Coordinate(1 / m) * d;
}

int half_plane(const Point& d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; }

bool ccw_before(const Point& u, const Point& v) {
    int hu = half_plane(u), hv = half_plane(v);
    if (hu != hv) return hu < hv;
    return sign(cross(u, v)) > 0;
}

}  // namespace

Coordinate min_squared_distance(const CoveringTree& tree, const std::vector<Point>& obstacles) {
    auto segs = tree_segments(tree);
    require(!segs.empty(), ErrorKind::PreconditionViolated, "empty tree");
    if (obstacles.empty()) return Coordinate(-1);
    std::vector<EdgeApprox> approx;
    approx.reserve(segs.size());
    for (const auto& [a, b] : segs) approx.push_back(approx_edge(a, b));
    std::vector<std::pair<double, double>> pd;
    pd.reserve(obstacles.size());
    for (const Point& p : obstacles) pd.emplace_back(p.x.get_d(), p.y.get_d());

    // Seed with the pair that looks closest in floating point, then scan with
    // certified lower bounds, computing exact distances only when needed.
    std::size_t best_p = 0, best_e = 0;
    double best_guess = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < obstacles.size(); ++i)
        for (std::size_t e = 0; e < segs.size(); ++e) {
            double lb = distance_lower_bound(approx[e], pd[i].first, pd[i].second);
            if (lb < best_guess) {
                best_guess = lb;
                best_p = i;
                best_e = e;
            }
        }
    Coordinate best = squared_distance_to_segment(obstacles[best_p], segs[best_e].first, segs[best_e].second);
    double best_hi = best.get_d() * (1 + 16 * kUnit) + 1e-300;
    for (std::size_t i = 0; i < obstacles.size(); ++i)
        for (std::size_t e = 0; e < segs.size(); ++e) {
            double lb = distance_lower_bound(approx[e], pd[i].first, pd[i].second);
            if (lb > 0 && lb * lb * (1 - 16 * kUnit) > best_hi) continue;
            Coordinate d = squared_distance_to_segment(obstacles[i], segs[e].first, segs[e].second);
            if (d < best) {
                best = d;
                best_hi = best.get_d() * (1 + 16 * kUnit) + 1e-300;
            }
        }
    return best;
}

Coordinate safe_epsilon(const CoveringTree& tree, const std::vector<Point>& obstacles) {
    if (obstacles.empty()) {
        if (tree.edges.empty()) return Coordinate(1);
        Coordinate shortest = -1;
        for (auto [u, w] : tree.edges) {
            Coordinate d = squared_distance(tree.vertices[u], tree.vertices[w]);
            if (shortest < 0 || d < shortest) shortest = d;
        }
        return largest_power_of_two([&](const Coordinate& r) { return 16 * r * r <= shortest; },
                                    std::sqrt(shortest.get_d()) / 4);
    }
    Coordinate d = min_squared_distance(tree, obstacles);
    if (d == 0) fail(ErrorKind::ObstacleOnTree, "an obstacle lies on the tree");
    return largest_power_of_two([&](const Coordinate& r) { return 4 * r * r <= d; }, std::sqrt(d.get_d()) / 2);
}

Coordinate disk_radius(const CoveringTree& tree) {
    const auto& V = tree.vertices;
    if (V.size() < 2) return Coordinate(1);
    std::vector<EdgeApprox> approx;
    for (auto [a, b] : tree.edges) approx.push_back(approx_edge(V[a], V[b]));
    std::vector<std::pair<double, double>> pd;
    for (const Point& p : V) pd.emplace_back(p.x.get_d(), p.y.get_d());
    auto gap = [](double a, double b) {
        double err = (std::fabs(a) + std::fabs(b) + 1) * 8 * kUnit;
        return std::max(0.0, std::fabs(a - b) - err);
    };
    // Candidates are vertex pairs (edge == SIZE_MAX) and vertex/non-incident
    // edge pairs; f receives a certified lower bound on the distance.
    auto each = [&](auto&& f) {
        for (std::size_t i = 0; i < V.size(); ++i)
            for (std::size_t j = i + 1; j < V.size(); ++j)
                f(std::hypot(gap(pd[i].first, pd[j].first), gap(pd[i].second, pd[j].second)) * (1 - 16 * kUnit), i, j,
                  SIZE_MAX);
        for (std::size_t v = 0; v < V.size(); ++v)
            for (std::size_t e = 0; e < tree.edges.size(); ++e)
                if (tree.edges[e].first != v && tree.edges[e].second != v)
                    f(distance_lower_bound(approx[e], pd[v].first, pd[v].second), v, 0, e);
    };
    auto exact = [&](std::size_t i, std::size_t j, std::size_t e) {
        if (e == SIZE_MAX) return Coordinate(squared_distance(V[i], V[j]));
        return Coordinate(squared_distance_to_segment(V[i], V[tree.edges[e].first], V[tree.edges[e].second]));
    };
    // seed with the smallest lower bound, then evaluate only what could beat it
    double seed_lb = std::numeric_limits<double>::infinity();
    std::size_t si = 0, sj = 1, se = SIZE_MAX;
    each([&](double lb, std::size_t i, std::size_t j, std::size_t e) {
        if (lb < seed_lb) seed_lb = lb, si = i, sj = j, se = e;
    });
    Coordinate bound = exact(si, sj, se);
    double bound_hi = bound.get_d() * (1 + 16 * kUnit) + 1e-300;
    each([&](double lb, std::size_t i, std::size_t j, std::size_t e) {
        if (lb > 0 && lb * lb * (1 - 16 * kUnit) > bound_hi) return;
        Coordinate d = exact(i, j, e);
        if (d < bound) {
            bound = d;
            bound_hi = bound.get_d() * (1 + 16 * kUnit) + 1e-300;
        }
    });
    if (bound == 0) fail(ErrorKind::InternalInvariant, "tree vertex lies on a non-incident edge");
    return largest_power_of_two([&](const Coordinate& r) { return 4 * r * r < bound; }, std::sqrt(bound.get_d()) / 2);
}

ThickeningParams thickening_params(const CoveringTree& tree, const SegmentPartition& partition,
                                   const Coordinate& epsilon, const std::optional<Coordinate>& radius_cap) {
    require(epsilon > 0, ErrorKind::PreconditionViolated, "epsilon must be positive");
    Coordinate length = 0;  // upper bound on total length via |dx| + |dy|
    for (auto [u, w] : tree.edges) {
        Point d = tree.vertices[w] - tree.vertices[u];
        length += abs_value(d.x) + abs_value(d.y);
    }
    Coordinate s(static_cast<long>(partition.s()));
    Coordinate area_delta = largest_power_of_two(
        [&](const Coordinate& d) { return 2 * length * d + 4 * s * d * d <= epsilon; },
        epsilon.get_d() / (2 * length.get_d() + 1));
    Coordinate delta = std::min(disk_radius(tree), area_delta);
    if (radius_cap) delta = std::min(delta, *radius_cap);
    return {epsilon, delta};
}

namespace {

struct Walk {
    std::vector<Point> witness_dirs;   // per emitted vertex, offset direction at its tree vertex
    std::vector<std::size_t> centers;  // tree vertex per emitted vertex
};

Walk boundary_walk(const CoveringTree& tree) {
    const auto& V = tree.vertices;
    std::vector<std::vector<std::size_t>> nbr(V.size());
    for (auto [u, w] : tree.edges) {
        nbr[u].push_back(w);
        nbr[w].push_back(u);
    }
    for (std::size_t v = 0; v < V.size(); ++v)
        std::sort(nbr[v].begin(), nbr[v].end(),
                  [&](std::size_t a, std::size_t b) { return ccw_before(V[a] - V[v], V[b] - V[v]); });
    Walk walk;
    if (tree.edges.empty()) return walk;
    const std::size_t start_from = tree.edges[0].first, start_to = tree.edges[0].second;
    std::size_t from = start_from, to = start_to;
    for (std::size_t steps = 0; steps <= 2 * tree.edges.size(); ++steps) {
        const auto& around = nbr[to];
        std::size_t idx = static_cast<std::size_t>(std::find(around.begin(), around.end(), from) - around.begin());
        std::size_t next = around[(idx + 1) % around.size()];
        Point d1 = linf_normalized(V[from] - V[to]);
        if (next == from) {
            walk.witness_dirs.push_back(-d1);
            walk.centers.push_back(to);
        } else {
            Point d2 = linf_normalized(V[next] - V[to]);
            int turn = sign(cross(d1, d2));
            if (turn > 0) {
                walk.witness_dirs.push_back(d1 + d2);
                walk.centers.push_back(to);
            } else if (turn < 0) {
                walk.witness_dirs.push_back(-(d1 + d2));
                walk.centers.push_back(to);
            }
            // turn == 0 with opposite directions is a flat sector: no vertex
        }
        from = to;
        to = next;
        if (from == start_from && to == start_to) return walk;
    }
    fail(ErrorKind::InternalInvariant, "boundary walk did not close");
}

void check_disk_accounting(const CoveringTree& tree, const SegmentPartition& partition, const Walk& walk) {
    std::vector<int> emitted(tree.vertices.size(), 0);
    for (std::size_t c : walk.centers) ++emitted[c];
    std::map<Point, int> expected;
    for (const Segment& s : partition.segments) {
        ++expected[s.a];
        ++expected[s.b];
    }
    for (const Fork& f : partition.forks) expected[f.vertex] += f.multiplicity;
    for (std::size_t v = 0; v < tree.vertices.size(); ++v) {
        auto it = expected.find(tree.vertices[v]);
        int want = it == expected.end() ? 0 : it->second;
        if (emitted[v] != want)
            fail(ErrorKind::InternalInvariant, "disk accounting mismatch at " + to_string(tree.vertices[v]));
    }
}

bool contains_tree(const Polygon& poly, const CoveringTree& tree) {
    PolygonLocator loc(poly);
    for (const Point& v : tree.vertices)
        if (loc.locate(v) == Containment::Exterior) return false;
    for (const Point& t : tree.targets)
        if (loc.locate(t) == Containment::Exterior) return false;
    std::vector<std::pair<Point, Point>> segs;
    for (std::size_t i = 0; i < poly.size(); ++i) segs.emplace_back(poly[i], poly[(i + 1) % poly.size()]);
    const std::size_t m = segs.size();
    for (auto [u, w] : tree.edges) segs.emplace_back(tree.vertices[u], tree.vertices[w]);
    for (auto [i, j] : box_overlap_pairs(segs))
        if (i < m && j >= m && proper_cross(segs[i].first, segs[i].second, segs[j].first, segs[j].second)) return false;
    return true;
}

}  // namespace

SimplePolygon thicken(const CoveringTree& tree, const SegmentPartition& partition, const Coordinate& epsilon,
                      const std::optional<Coordinate>& radius_cap) {
    validate_partition(tree, partition);
    require(partition.s() >= 2, ErrorKind::PreconditionViolated, "thicken needs at least two segments");
    ThickeningParams params = thickening_params(tree, partition, epsilon, radius_cap);
    Walk walk = boundary_walk(tree);
    check_disk_accounting(tree, partition, walk);
    const std::size_t expected = 2 * partition.s() + static_cast<std::size_t>(partition.t());
    if (walk.centers.size() != expected)
        fail(ErrorKind::InternalInvariant, "boundary walk produced " + std::to_string(walk.centers.size()) +
                                               " vertices, expected " + std::to_string(expected));
    // offsets have max-norm at most 2, hence Euclidean length below 3
    Coordinate mu = params.delta / 4;
    for (int attempt = 0; attempt < 40; ++attempt, mu /= 2) {
        Polygon poly;
        poly.reserve(walk.centers.size());
        for (std::size_t i = 0; i < walk.centers.size(); ++i)
            poly.push_back(tree.vertices[walk.centers[i]] + mu * walk.witness_dirs[i]);
        auto simple = make_simple_polygon(std::move(poly));
        if (!simple) continue;
        if (area(simple->vertices) > epsilon) continue;
        if (!contains_tree(simple->vertices, tree)) continue;
        return *simple;
    }
    fail(ErrorKind::InternalInvariant, "thickening failed to produce a simple polygon");
}

SimplePolygon enclose_segment(const Point& a, const Point& b, const std::vector<Point>& targets,
                              const Coordinate& epsilon, const std::optional<Coordinate>& radius_cap) {
    require(epsilon > 0, ErrorKind::PreconditionViolated, "epsilon must be positive");
    for (const Point& t : targets)
        require(on_segment(t, a, b), ErrorKind::PreconditionViolated, "target not on the segment");
    Point d = a == b ? Point(1, 0) : b - a;
    Point n(Coordinate(-d.y), d.x);
    Coordinate len2 = squared_norm(d);
    // triangle a - τd ± τn, b + τd: area τ(1+2τ)|d|², reach √2·τ|d|
    Coordinate tau = largest_power_of_two(
        [&](const Coordinate& t) {
            if (t > Coordinate(1, 4)) return false;
            if (t * (1 + 2 * t) * len2 > epsilon) return false;
            return !radius_cap || 2 * t * t * len2 <= *radius_cap * *radius_cap;
        },
        0.25);
    Point base = a - tau * d;
    Polygon tri{base - tau * n, b + tau * d, base + tau * n};
    auto simple = make_simple_polygon(std::move(tri));
    if (!simple) fail(ErrorKind::InternalInvariant, "enclosing triangle degenerate");
    for (const Point& t : targets)
        if (locate_point(t, *simple) == Containment::Exterior)
            fail(ErrorKind::InternalInvariant, "enclosing triangle misses a target");
    return *simple;
}

}  // namespace rainbow
