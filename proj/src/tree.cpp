#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "rainbow/covering.hpp"
#include "rainbow/error.hpp"

namespace rainbow {

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

bool opposite_collinear(const Point& u, const Point& v) { return sign(cross(u, v)) == 0 && sign(dot(u, v)) < 0; }

std::pair<Point, Point> canonical(const Segment& s) {
    return s.a < s.b ? std::make_pair(s.a, s.b) : std::make_pair(s.b, s.a);
}

bool interior_of(const Point& p, const Segment& s) { return p != s.a && p != s.b && on_segment(p, s.a, s.b); }

// Segments meeting anywhere other than a single shared endpoint.
bool overlap_or_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    if (!segments_intersect(a, b, c, d)) return false;
    bool share = a == c || a == d || b == c || b == d;
    if (!share) return true;
    const Point& s = (a == c || a == d) ? a : b;
    const Point& p = (s == a) ? b : a;
    const Point& q = (s == c) ? d : c;
    if (p == q) return true;
    // sharing one endpoint: bad only if they continue along the same ray
    return sign(cross(p - s, q - s)) == 0 && sign(dot(p - s, q - s)) > 0;
}

std::vector<std::pair<Point, Point>> as_pairs(const std::vector<Segment>& segs) {
    std::vector<std::pair<Point, Point>> out;
    out.reserve(segs.size());
    for (const Segment& s : segs) out.emplace_back(s.a, s.b);
    return out;
}

}  // namespace

int SegmentPartition::t() const {
    int total = 0;
    for (const Fork& f : forks) total += f.multiplicity;
    return total;
}

void validate_tree(const CoveringTree& tree) {
    const auto& V = tree.vertices;
    const auto& E = tree.edges;
    auto bad = [](const std::string& what) { fail(ErrorKind::InternalInvariant, "covering tree: " + what); };
    if (V.empty()) bad("no vertices");
    if (E.size() + 1 != V.size()) bad("edge count is not vertex count minus one");
    std::vector<Point> sorted_vertices = V;
    std::sort(sorted_vertices.begin(), sorted_vertices.end());
    if (std::adjacent_find(sorted_vertices.begin(), sorted_vertices.end()) != sorted_vertices.end()) bad("repeated vertex");
    DisjointSets ds(V.size());
    for (auto [u, w] : E) {
        if (u >= V.size() || w >= V.size() || u == w) bad("malformed edge");
        if (!ds.unite(u, w)) bad("cycle");
    }
    // edges first, then targets as degenerate segments
    std::vector<std::pair<Point, Point>> boxes;
    for (auto [u, w] : E) boxes.emplace_back(V[u], V[w]);
    for (const Point& p : tree.targets) boxes.emplace_back(p, p);
    std::vector<char> covered(tree.targets.size(), 0);
    for (std::size_t t = 0; t < tree.targets.size(); ++t)
        covered[t] = std::binary_search(sorted_vertices.begin(), sorted_vertices.end(), tree.targets[t]);
    for (auto [i, j] : box_overlap_pairs(boxes)) {
        if (j < E.size()) {
            if (overlap_or_cross(V[E[i].first], V[E[i].second], V[E[j].first], V[E[j].second]))
                bad("edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
        } else if (i < E.size() && !covered[j - E.size()]) {
            covered[j - E.size()] = on_segment(boxes[j].first, boxes[i].first, boxes[i].second);
        }
    }
    for (std::size_t t = 0; t < tree.targets.size(); ++t)
        if (!covered[t]) bad("target " + to_string(tree.targets[t]) + " not covered");
    std::vector<std::vector<std::size_t>> nbr(V.size());
    for (auto [u, w] : E) {
        nbr[u].push_back(w);
        nbr[w].push_back(u);
    }
    for (std::size_t v = 0; v < V.size(); ++v)
        if (nbr[v].size() == 2 && opposite_collinear(V[nbr[v][0]] - V[v], V[nbr[v][1]] - V[v]))
            bad("suppressible vertex " + to_string(V[v]));
}

std::vector<Fork> compute_forks(const std::vector<Segment>& segments) {
    struct Info {
        std::size_t host;
        bool left = false, right = false;
    };
    std::map<Point, Info> found;
    auto visit = [&](std::size_t i, std::size_t j) {
        for (int end = 0; end < 2; ++end) {
            const Point& v = end == 0 ? segments[i].a : segments[i].b;
            const Point& other = end == 0 ? segments[i].b : segments[i].a;
            if (!interior_of(v, segments[j])) continue;
            auto it = found.try_emplace(v, Info{j}).first;
            int side = orient_sign(segments[j].a, segments[j].b, other);
            (side > 0 ? it->second.left : it->second.right) = true;
        }
    };
    for (auto [i, j] : box_overlap_pairs(as_pairs(segments))) {
        visit(i, j);
        visit(j, i);
    }
    std::vector<Fork> forks;
    for (const auto& [v, info] : found) forks.push_back({v, info.left && info.right ? 2 : 1});
    return forks;
}

SegmentPartition partition_tree(const CoveringTree& tree) {
    const auto& V = tree.vertices;
    const auto& E = tree.edges;
    std::vector<std::vector<std::size_t>> incident(V.size());
    for (std::size_t e = 0; e < E.size(); ++e) {
        incident[E[e].first].push_back(e);
        incident[E[e].second].push_back(e);
    }
    auto far_end = [&](std::size_t e, std::size_t v) { return E[e].first == v ? E[e].second : E[e].first; };
    DisjointSets chains(E.size());
    for (std::size_t v = 0; v < V.size(); ++v) {
        std::vector<bool> used(incident[v].size(), false);
        for (std::size_t i = 0; i < incident[v].size(); ++i) {
            if (used[i]) continue;
            for (std::size_t j = i + 1; j < incident[v].size(); ++j) {
                if (used[j]) continue;
                Point d1 = V[far_end(incident[v][i], v)] - V[v];
                Point d2 = V[far_end(incident[v][j], v)] - V[v];
                if (opposite_collinear(d1, d2)) {
                    chains.unite(incident[v][i], incident[v][j]);
                    used[i] = used[j] = true;
                    break;
                }
            }
        }
    }
    std::map<std::size_t, std::pair<Point, Point>> extent;
    for (std::size_t e = 0; e < E.size(); ++e) {
        std::size_t r = chains.find(e);
        const Point& p = V[E[e].first];
        const Point& q = V[E[e].second];
        auto lo = std::min(p, q), hi = std::max(p, q);
        auto it = extent.find(r);
        if (it == extent.end()) {
            extent.emplace(r, std::make_pair(lo, hi));
        } else {
            it->second.first = std::min(it->second.first, lo);
            it->second.second = std::max(it->second.second, hi);
        }
    }
    SegmentPartition out;
    for (const auto& [r, ab] : extent) out.segments.push_back({ab.first, ab.second});
    out.forks = compute_forks(out.segments);
    return out;
}

void validate_partition(const CoveringTree& tree, const SegmentPartition& partition) {
    auto bad = [](const std::string& what) { fail(ErrorKind::InvalidPartition, what); };
    const auto& segs = partition.segments;
    for (const Segment& s : segs)
        if (s.a == s.b) bad("degenerate segment");
    for (auto [i, j] : box_overlap_pairs(as_pairs(segs))) {
        const Segment &p = segs[i], &q = segs[j];
        if (proper_cross(p.a, p.b, q.a, q.b)) bad("segments cross");
        if (orient_sign(p.a, p.b, q.a) == 0 && orient_sign(p.a, p.b, q.b) == 0 && overlap_or_cross(p.a, p.b, q.a, q.b))
            bad("collinear segments overlap");
    }
    SegmentPartition reference = partition_tree(tree);
    std::multiset<std::pair<Point, Point>> mine, ref;
    for (const Segment& s : segs) mine.insert(canonical(s));
    for (const Segment& s : reference.segments) ref.insert(canonical(s));
    if (mine != ref) bad("segments do not match the tree's maximal collinear paths");
    auto key = [](const std::vector<Fork>& fs) {
        std::multiset<std::pair<Point, int>> out;
        for (const Fork& f : fs) out.insert({f.vertex, f.multiplicity});
        return out;
    };
    if (key(partition.forks) != key(compute_forks(segs))) bad("fork list does not match the geometry");
}

CoveringTree suppress_collinear(const CoveringTree& tree) {
    std::size_t n = tree.vertices.size();
    std::vector<std::set<std::size_t>> nbr(n);
    for (auto [u, w] : tree.edges) {
        nbr[u].insert(w);
        nbr[w].insert(u);
    }
    std::vector<bool> removed(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        if (nbr[v].size() != 2) continue;
        std::size_t a = *nbr[v].begin(), b = *std::next(nbr[v].begin());
        if (!opposite_collinear(tree.vertices[a] - tree.vertices[v], tree.vertices[b] - tree.vertices[v])) continue;
        nbr[a].erase(v);
        nbr[b].erase(v);
        nbr[a].insert(b);
        nbr[b].insert(a);
        nbr[v].clear();
        removed[v] = true;
    }
    CoveringTree out;
    out.targets = tree.targets;
    std::vector<std::size_t> index(n, SIZE_MAX);
    for (std::size_t v = 0; v < n; ++v)
        if (!removed[v]) {
            index[v] = out.vertices.size();
            out.vertices.push_back(tree.vertices[v]);
        }
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w : nbr[v])
            if (v < w) out.edges.emplace_back(index[v], index[w]);
    return out;
}

CoveringTree tree_from_segments(const std::vector<Segment>& segments, std::vector<Point> targets) {
    std::vector<Point> verts;
    for (const Segment& s : segments) {
        verts.push_back(s.a);
        verts.push_back(s.b);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    auto index_of = [&](const Point& p) {
        return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), p) - verts.begin());
    };
    // vertices lying on each segment, via the box filter with vertices as degenerate segments
    std::vector<std::pair<Point, Point>> boxes = as_pairs(segments);
    for (const Point& v : verts) boxes.emplace_back(v, v);
    std::vector<std::vector<Point>> on_seg(segments.size());
    for (auto [i, j] : box_overlap_pairs(boxes))
        if (i < segments.size() && j >= segments.size() && on_segment(boxes[j].first, segments[i].a, segments[i].b))
            on_seg[i].push_back(boxes[j].first);
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t k = 0; k < segments.size(); ++k) {
        std::vector<Point>& on = on_seg[k];
        std::sort(on.begin(), on.end());
        for (std::size_t i = 0; i + 1 < on.size(); ++i) {
            std::size_t u = index_of(on[i]), w = index_of(on[i + 1]);
            edges.insert({std::min(u, w), std::max(u, w)});
        }
    }
    CoveringTree tree;
    tree.vertices = std::move(verts);
    tree.edges.assign(edges.begin(), edges.end());
    tree.targets = std::move(targets);
    return suppress_collinear(tree);
}

CoveringTree transform_tree(const CoveringTree& tree, const AffineMap& map) {
    CoveringTree out;
    out.edges = tree.edges;
    for (const Point& v : tree.vertices) out.vertices.push_back(map.apply(v));
    for (const Point& t : tree.targets) out.targets.push_back(map.apply(t));
    return out;
}

CoveringTree attach_point(const CoveringTree& tree, const Point& extra, const Point& anchor) {
    CoveringTree out = tree;
    require(std::find(out.vertices.begin(), out.vertices.end(), extra) == out.vertices.end(),
            ErrorKind::PreconditionViolated, "attached point is already a tree vertex");
    require(extra != anchor, ErrorKind::PreconditionViolated, "attached point equals its anchor");
    std::size_t a;
    auto it = std::find(out.vertices.begin(), out.vertices.end(), anchor);
    if (it != out.vertices.end()) {
        a = static_cast<std::size_t>(it - out.vertices.begin());
    } else {
        std::size_t host = SIZE_MAX;
        for (std::size_t e = 0; e < out.edges.size(); ++e)
            if (on_segment(anchor, out.vertices[out.edges[e].first], out.vertices[out.edges[e].second])) host = e;
        require(host != SIZE_MAX, ErrorKind::PreconditionViolated, "anchor is not on the tree");
        a = out.vertices.size();
        out.vertices.push_back(anchor);
        auto [u, w] = out.edges[host];
        out.edges[host] = {u, a};
        out.edges.emplace_back(a, w);
    }
    for (auto [u, w] : out.edges) {
        const Point &p = out.vertices[u], &q = out.vertices[w];
        if (u == a || w == a) {
            const Point& o = u == a ? q : p;
            if (sign(cross(o - anchor, extra - anchor)) == 0 && sign(dot(o - anchor, extra - anchor)) > 0)
                fail(ErrorKind::CrossingViolation, "attached segment overlaps an edge");
        } else if (segments_intersect(anchor, extra, p, q)) {
            fail(ErrorKind::CrossingViolation, "attached segment meets the tree");
        }
    }
    std::size_t x = out.vertices.size();
    out.vertices.push_back(extra);
    out.edges.emplace_back(a, x);
    out.targets.push_back(extra);
    return suppress_collinear(out);
}

std::size_t expected_segments(std::size_t n) {
    std::size_t j = n / 7, r = n % 7;
    return 4 * j + 1 + (r + 1) / 2;
}

int expected_forks(std::size_t n) {
    std::size_t j = n / 7, r = n % 7;
    return static_cast<int>(2 * j + (r + 1) / 2);
}

}  // namespace rainbow
