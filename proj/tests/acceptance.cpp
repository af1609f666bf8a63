// One line per acceptance criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "rainbow/error.hpp"
#include "rainbow/instances.hpp"
#include "rainbow/small_k.hpp"
#include "rainbow/solver.hpp"
#include "rainbow/strip.hpp"
#include "rainbow/thicken.hpp"
#include "support.hpp"

using namespace rainbow;
using namespace rainbow::testing;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string first_failure;

    void fail_with(const std::string& what) {
        if (pass) first_failure = what;
        pass = false;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Counts by the crossing-number test, separate from certify's locator.
bool perfect_by_recount(const Polygon& poly, const ColoredPointSet& S) {
    std::vector<int> cnt(S.k(), 0);
    for (std::size_t i = 0; i < S.n(); ++i)
        if (locate_point(S.point(i), poly) != Containment::Exterior) ++cnt[S.color(i)];
    return std::all_of(cnt.begin(), cnt.end(), [](int c) { return c == 1; });
}

// ---- 1 ----
Outcome hard_instances() {
    Outcome o;
    const std::pair<InstanceKind, std::size_t> table[] = {
        {InstanceKind::S4, 4}, {InstanceKind::S5, 5}, {InstanceKind::S6, 6}, {InstanceKind::S7, 8}};
    double worst = 0;
    std::string sizes;
    for (auto [kind, want] : table) {
        InstanceSpec spec;
        spec.kind = kind;
        auto S = gen_hard(spec);
        auto t0 = Clock::now();
        SolveResult r = solve(S);
        double secs = since(t0);
        worst = std::max(worst, secs);
        sizes += std::string(sizes.empty() ? "" : " ") + instance_kind_name(kind) + "=" + std::to_string(r.polygon.size());
        if (r.polygon.size() != want) o.fail_with(std::string(instance_kind_name(kind)) + " size " + std::to_string(r.polygon.size()));
        if (!perfect_by_recount(r.polygon.vertices, S)) o.fail_with(std::string(instance_kind_name(kind)) + " not perfect");
        if (secs >= 1.0) o.fail_with(std::string(instance_kind_name(kind)) + " took " + fmt("%.2fs", secs));
    }
    o.detail = sizes + " (want 4 5 6 8), slowest solve " + fmt("%.3fs", worst) + " (< 1s)";
    return o;
}

// ---- 2 ----
Outcome small_k_fuzz() {
    Outcome o;
    std::mt19937_64 rng(2024);
    long failures = 0, total = 0;
    std::map<std::string, int> used;
    for (int k = 3; k <= 7; ++k)
        for (int it = 0; it < 1000; ++it) {
            const std::size_t n = static_cast<std::size_t>(k) + rng() % static_cast<std::size_t>(201 - k);
            auto S = gen_random(k, n, rng());
            ++total;
            try {
                SolveResult r = solve(S);
                ++used[r.construction];
                if (static_cast<long>(r.polygon.size()) > small_k_bound(k) || !perfect_by_recount(r.polygon.vertices, S)) {
                    ++failures;
                    o.fail_with("k=" + std::to_string(k) + " n=" + std::to_string(n));
                }
            } catch (const Error& e) {
                ++failures;
                o.fail_with("k=" + std::to_string(k) + " n=" + std::to_string(n) + ": " + e.what());
            }
        }
    o.detail = std::to_string(total) + " instances (k=3..7, n<=200), " + std::to_string(failures) +
               " failures (want 0), " + std::to_string(used.size()) + " constructions used";
    return o;
}

// ---- 3 ----
Outcome general_k() {
    Outcome o;
    std::mt19937_64 rng(77);
    long failures = 0, worst_slack = -1;
    for (int it = 0; it < 200; ++it) {
        const int k = 8 + static_cast<int>(rng() % 93);
        const std::size_t n = static_cast<std::size_t>(k) + rng() % static_cast<std::size_t>(5001 - k);
        auto G = gen_random(k, n, rng());
        std::vector<int> labels(G.n());
        for (std::size_t i = 0; i < G.n(); ++i) labels[i] = G.label(i);
        try {
            ColoredPointSet S(G.points(), labels, PositionCheck::Verify);
            SolveResult r = solve(S);
            const long bound = 10 * (k / 7) + 11;
            if (static_cast<long>(r.polygon.size()) > bound || !perfect_by_recount(r.polygon.vertices, S)) {
                ++failures;
                o.fail_with("k=" + std::to_string(k) + " n=" + std::to_string(n));
            }
            worst_slack = std::max(worst_slack, static_cast<long>(r.polygon.size()) - bound);
        } catch (const Error& e) {
            ++failures;
            o.fail_with("k=" + std::to_string(k) + " n=" + std::to_string(n) + ": " + e.what());
        }
    }
    o.detail = "200 instances (k=8..100, n<=5000), " + std::to_string(failures) +
               " failures (want 0), max size-bound " + std::to_string(worst_slack) + " (want <= 0)";
    return o;
}

// ---- 4 ----
bool proper_overlap(const Segment& a, const Segment& b) {
    if (orient_sign(a.a, a.b, b.a) != 0 || orient_sign(a.a, a.b, b.b) != 0) return false;
    // collinear: overlap of positive length
    auto key = [&](const Point& p) { return a.a.x != a.b.x ? p.x : p.y; };
    Coordinate lo1 = std::min(key(a.a), key(a.b)), hi1 = std::max(key(a.a), key(a.b));
    Coordinate lo2 = std::min(key(b.a), key(b.b)), hi2 = std::max(key(b.a), key(b.b));
    return std::max(lo1, lo2) < std::min(hi1, hi2);
}

bool interior_of(const Point& p, const Segment& s) { return p != s.a && p != s.b && on_segment(p, s.a, s.b); }

std::string check_covering(const std::vector<Point>& pts, const CoveringResult& res) {
    const long n = static_cast<long>(pts.size()), j = n / 7, r = n % 7;
    const auto& segs = res.partition.segments;
    if (static_cast<long>(segs.size()) != 4 * j + 1 + (r + 1) / 2) return "s=" + std::to_string(segs.size());
    for (std::size_t a = 0; a < segs.size(); ++a)
        for (std::size_t b = a + 1; b < segs.size(); ++b)
            if (proper_cross(segs[a].a, segs[a].b, segs[b].a, segs[b].b) || proper_overlap(segs[a], segs[b]))
                return "segments cross";
    // forks: endpoints in the relative interior of another segment, one per side
    std::map<Point, std::set<int>> sides;
    for (const Segment& host : segs)
        for (const Segment& s : segs)
            for (const Point* e : {&s.a, &s.b})
                if (interior_of(*e, host)) {
                    const Point& other = (e == &s.a) ? s.b : s.a;
                    sides[*e].insert(orient_sign(host.a, host.b, other));
                }
    long t = 0;
    for (const auto& [p, sd] : sides) {
        if (sd.size() != 1) return "fork of multiplicity 2";
        t += static_cast<long>(sd.size());
    }
    if (t != 2 * j + (r + 1) / 2) return "t=" + std::to_string(t);
    if (res.partition.t() != t) return "partition reports t=" + std::to_string(res.partition.t());
    for (const Point& p : pts) {
        bool covered = false;
        for (const Segment& s : segs) covered = covered || on_segment(p, s.a, s.b);
        if (!covered) return "uncovered point";
    }
    const CoveringTree& tree = res.tree;
    if (tree.edges.size() + 1 != tree.vertices.size()) return "edge count";
    std::vector<std::vector<std::size_t>> adj(tree.vertices.size());
    for (auto [u, v] : tree.edges) adj[u].push_back(v), adj[v].push_back(u);
    std::vector<char> seen(tree.vertices.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adj[u])
            if (!seen[v]) seen[v] = 1, ++reached, stack.push_back(v);
    }
    if (reached != tree.vertices.size()) return "disconnected";
    return "";
}

Outcome covering_formulas() {
    Outcome o;
    for (std::size_t n = 1; n <= 200; ++n) {
        auto pts = gen_random(1, n, 1000 + n).points();
        try {
            auto res = build_covering_tree(pts);
            std::string why = check_covering(pts, res);
            if (!why.empty()) o.fail_with("n=" + std::to_string(n) + ": " + why);
        } catch (const Error& e) {
            o.fail_with("n=" + std::to_string(n) + ": " + e.what());
        }
    }
    o.detail = "n=1..200: s, t closed forms, multiplicity-1 forks, noncrossing, coverage, tree shape";
    return o;
}

// ---- 5 ----
Outcome thickener() {
    Outcome o;
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int it = 0; it < 500; ++it) {
        const std::size_t n = 1 + rng() % 60;
        auto pts = gen_random(1, n, rng()).points();
        auto res = build_covering_tree(pts);
        mpz_class den = 1;
        den <<= static_cast<unsigned>(rng() % 60);
        Coordinate eps = it % 2 ? Coordinate(1 / Coordinate(den))
                                : rational(1 + static_cast<long>(rng() % 97), 1 + static_cast<long>(rng() % 1000));
        SimplePolygon poly = thicken(res.tree, res.partition, eps);
        const std::size_t want = 2 * res.partition.s() + static_cast<std::size_t>(res.partition.t());
        ++checked;
        if (poly.size() != want) o.fail_with("size " + std::to_string(poly.size()) + " != " + std::to_string(want));
        if (area(poly.vertices) > eps) o.fail_with("area above epsilon");
        if (!is_simple(poly.vertices)) o.fail_with("not simple");
    }
    // five segments, forks of multiplicity one and two
    CoveringTree fig;
    fig.vertices = {Point(0, 0), Point(4, 0), Point(8, 0), Point(10, 0), Point(4, 5), Point(3, -5), Point(9, 4), Point(0, 7)};
    fig.edges = {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {1, 5}, {2, 6}, {4, 7}};
    auto part = partition_tree(fig);
    const std::size_t fig_size = thicken(fig, part, Coordinate(1)).size();
    if (part.s() != 5 || fig_size != 13) o.fail_with("5-segment case gave " + std::to_string(fig_size));
    o.detail = std::to_string(checked) + " pairs with |P| = 2s+t and area <= eps exactly; 5-segment case " +
               std::to_string(fig_size) + " vertices (want 13)";
    return o;
}

// ---- 6 ----
Outcome strips() {
    Outcome o;
    std::mt19937_64 rng(66);
    long failures = 0;
    for (int it = 0; it < 1000; ++it) {
        const int k = 3 + it % 8;
        const std::size_t n = static_cast<std::size_t>(k) + rng() % 60;
        auto S = random_colored(rng, k, n, 1000000);
        try {
            auto problems = check_strip(S, find_strip(S));
            if (!problems.empty()) ++failures, o.fail_with(problems.front());
        } catch (const Error& e) {
            ++failures;
            o.fail_with(e.what());
        }
    }
    o.detail = "1000 instances (k=3..10), " + std::to_string(failures) + " checker failures (want 0)";
    return o;
}

// ---- 7 ----
Outcome expedient() {
    Outcome o;
    std::mt19937_64 rng(7);
    long failures = 0;
    for (int it = 0; it < 1000; ++it) {
        auto pts = triangle_cloud(3, rng);
        std::array<Point, 3> in{pts[3], pts[4], pts[5]};
        auto lab = expedient_labeling(pts[0], pts[1], pts[2], in);
        bool ok = count_expedient(pts[0], pts[1], pts[2], in) >= 1 && is_expedient(pts[0], pts[1], pts[2], lab.a, lab.b, lab.c);

        const std::size_t inner = 3 + rng() % 25;
        const int kin = 3 + static_cast<int>(rng() % 4);
        auto cloud = triangle_cloud(inner, rng);
        std::vector<int> labels{1, 2, 3};
        for (std::size_t i = 0; i < inner; ++i)
            labels.push_back(4 + static_cast<int>(i < static_cast<std::size_t>(kin) ? i : rng() % kin));
        ColoredPointSet S(cloud, labels, PositionCheck::Trust);
        auto e = empty_expedient_triangle(S, 0, 1, 2);
        ok = ok && std::set<int>{S.color(e.a), S.color(e.b), S.color(e.c)}.size() == 3 &&
             is_expedient(cloud[0], cloud[1], cloud[2], S.point(e.a), S.point(e.b), S.point(e.c));
        for (std::size_t i = 3; i < cloud.size(); ++i) ok = ok && !inside_open(cloud[i], e.r, e.s, e.t);
        for (std::size_t h = 1; h < e.history.size(); ++h)
            for (const Point& q : e.history[h])
                ok = ok && locate_point(q, Polygon{e.history[h - 1][0], e.history[h - 1][1], e.history[h - 1][2]}) !=
                               Containment::Exterior;
        if (!ok) ++failures, o.fail_with("iteration " + std::to_string(it));
    }
    o.detail = "1000 labelings vs six-assignment oracle plus 1000 nesting/emptiness checks, " +
               std::to_string(failures) + " failures (want 0)";
    return o;
}

// ---- 8 ----
Outcome twins_stats() {
    Outcome o;
    long min_slack = -1;
    for (int k = 2; k <= 25; ++k) {
        auto pts = gen_twins(k, rational(1, 100), static_cast<std::uint64_t>(k));
        auto res = build_covering_tree(pts);
        SegmentStats st = segment_stats(res.partition, pts);
        const long n = 2L * k;
        const long s0 = static_cast<long>(st.s0), s1 = static_cast<long>(st.s1), s2 = static_cast<long>(st.s2);
        const long size = 2 * static_cast<long>(st.s) + st.t;
        const long lower = (20 * n - 8 + 18) / 19;
        if (s2 > 8 * s0 + 9 * s1 + 4 * (st.t + 1)) o.fail_with("k=" + std::to_string(k) + " s2 inequality");
        if (!lemma20_holds(st)) o.fail_with("k=" + std::to_string(k) + " lemma20_holds disagrees");
        if (size < lower) o.fail_with("k=" + std::to_string(k) + " 2s+t=" + std::to_string(size));
        min_slack = min_slack < 0 ? size - lower : std::min(min_slack, size - lower);
    }
    o.detail = "k=2..25: s2 <= 8s0+9s1+4(t+1) and 2s+t >= ceil((20n-8)/19), min slack " + std::to_string(min_slack);
    return o;
}

// ---- 9 ----
Outcome performance() {
    Outcome o;
    const std::size_t sizes[] = {25000, 50000, 100000};
    double secs[3];
    for (int i = 0; i < 3; ++i) {
        auto G = gen_random(50, sizes[i], 9);
        std::ostringstream text;
        for (std::size_t p = 0; p < G.n(); ++p)
            text << to_string(G.point(p).x) << " " << to_string(G.point(p).y) << " " << G.label(p) << "\n";
        const std::string input = text.str();
        double best = 1e9;
        for (int rep = 0; rep < 3; ++rep) {
            auto t0 = Clock::now();
            ColoredPointSet S = parse_input(input);
            SolveResult r = solve(S);
            std::string out = emit_output(S, r);
            best = std::min(best, since(t0));
            if (r.pipeline != Pipeline::General || out.empty()) o.fail_with("wrong pipeline");
        }
        secs[i] = best;
    }
    const double r1 = secs[1] / secs[0], r2 = secs[2] / secs[1];
    if (secs[2] >= 10) o.fail_with("n=100000 took " + fmt("%.2fs", secs[2]));
    if (r1 > 2.5 || r2 > 2.5) o.fail_with("doubling ratio above 2.5");
    o.detail = "parse+solve+emit, best of 3: 25k " + fmt("%.2fs", secs[0]) + ", 50k " + fmt("%.2fs", secs[1]) +
               ", 100k " + fmt("%.2fs", secs[2]) + " (< 10s); ratios " + fmt("%.2f", r1) + ", " + fmt("%.2f", r2) +
               " (<= 2.5)";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"rb-index table", hard_instances}, {"small-k fuzzing", small_k_fuzz},
        {"general-k bound", general_k},     {"covering-tree formulas", covering_formulas},
        {"thickener identity", thickener},  {"strip properties", strips},
        {"expedient labeling", expedient},  {"twins statistics", twins_stats},
        {"desk-scale performance", performance},
    };
    int failed = 0, index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.fail_with(e.what());
        }
        failed += !o.pass;
        std::printf("criterion %d %-24s %s  %s [%.1fs]%s%s\n", index, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                    since(t0), o.pass ? "" : " first failure: ", o.first_failure.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
