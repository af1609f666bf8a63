#include <doctest.h>

#include "rainbow/error.hpp"
#include "rainbow/thicken.hpp"
#include "rainbow/verify.hpp"

using namespace rainbow;

namespace {

Point P(long x, long y) { return Point(x, y); }

CoveringTree make_tree(std::vector<Point> v, std::vector<std::pair<std::size_t, std::size_t>> e,
                       std::vector<Point> targets = {}) {
    CoveringTree t;
    t.vertices = std::move(v);
    t.edges = std::move(e);
    t.targets = std::move(targets);
    return t;
}

void check_thickening(const CoveringTree& tree, const Coordinate& eps) {
    auto part = partition_tree(tree);
    auto poly = thicken(tree, part, eps);
    CHECK(poly.size() == 2 * part.s() + static_cast<std::size_t>(part.t()));
    CHECK(is_simple(poly.vertices));
    CHECK(signed_area2(poly.vertices) > 0);
    CHECK(area(poly.vertices) <= eps);
    for (const Point& v : tree.vertices) CHECK(locate_point(v, poly) != Containment::Exterior);
}

}  // namespace

TEST_CASE("safe_epsilon examples") {
    auto seg = make_tree({P(0, 0), P(1, 0)}, {{0, 1}});
    CHECK(safe_epsilon(seg, {P(0, 1)}) == rational(1, 2));
    CHECK(safe_epsilon(seg, {P(2, 0)}) == rational(1, 2));
    CHECK(safe_epsilon(seg, {}) == rational(1, 4));
    CHECK(safe_epsilon(seg, {P(5, 5), Point(rational(1, 2), rational(1, 8))}) == rational(1, 16));
    CHECK_THROWS_AS(safe_epsilon(seg, {Point(rational(1, 2), Coordinate(0))}), Error);
}

TEST_CASE("min_squared_distance agrees with brute force") {
    auto tree = make_tree({P(0, 0), P(7, 1), P(-3, 5), P(2, -6)}, {{0, 1}, {0, 2}, {0, 3}});
    std::vector<Point> obs;
    for (int i = -6; i <= 6; ++i)
        for (int j = -6; j <= 6; ++j)
            if ((i + 2 * j) % 5 == 1) obs.push_back(Point(rational(i * 3 + 1, 4), rational(j * 5 + 2, 7)));
    Coordinate brute = -1;
    for (const Point& p : obs)
        for (auto [u, w] : tree.edges) {
            Coordinate d = squared_distance_to_segment(p, tree.vertices[u], tree.vertices[w]);
            if (brute < 0 || d < brute) brute = d;
        }
    CHECK(min_squared_distance(tree, obs) == brute);
}

TEST_CASE("two-segment star gives a quadrilateral") {
    check_thickening(make_tree({P(0, 0), P(3, 1), P(-1, 4)}, {{0, 1}, {0, 2}}), Coordinate(1));
}

TEST_CASE("two-edge path with tiny epsilon") {
    auto tree = make_tree({P(0, 0), P(5, 0), P(6, 4)}, {{0, 1}, {1, 2}});
    auto part = partition_tree(tree);
    REQUIRE(part.s() == 2);
    Coordinate eps = rational(1, 1000000);
    auto poly = thicken(tree, part, eps);
    CHECK(poly.size() == 4);
    CHECK(area(poly.vertices) <= eps);
}

TEST_CASE("five segments with forks of multiplicity one and two give 13 vertices") {
    // host (0,0)-(10,0); u2 = (4,0) ends segments on both sides, u6 = (8,0) on one
    auto tree = make_tree({P(0, 0), P(4, 0), P(8, 0), P(10, 0), P(4, 5), P(3, -5), P(9, 4), P(0, 7)},
                          {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {1, 5}, {2, 6}, {4, 7}});
    REQUIRE_NOTHROW(validate_tree(tree));
    auto part = partition_tree(tree);
    CHECK(part.s() == 5);
    CHECK(part.t() == 3);
    auto poly = thicken(tree, part, Coordinate(1));
    CHECK(poly.size() == 13);
    check_thickening(tree, rational(1, 100));
}

TEST_CASE("thicken respects a radius cap and excludes obstacles") {
    auto tree = make_tree({P(0, 0), P(4, 0), P(2, 3)}, {{0, 1}, {0, 2}});
    std::vector<Point> obstacles{Point(rational(2, 1), rational(1, 10)), P(-1, -1), P(5, 5)};
    Coordinate rho = safe_epsilon(tree, obstacles);
    auto poly = thicken(tree, partition_tree(tree), Coordinate(10), rho);
    for (const Point& o : obstacles) CHECK(locate_point(o, poly) == Containment::Exterior);
}

TEST_CASE("thicken rejects invalid input") {
    auto single = make_tree({P(0, 0), P(1, 0)}, {{0, 1}});
    CHECK_THROWS_AS(thicken(single, partition_tree(single), Coordinate(1)), Error);
    auto tree = make_tree({P(0, 0), P(3, 1), P(-1, 4)}, {{0, 1}, {0, 2}});
    auto part = partition_tree(tree);
    part.forks.push_back({P(0, 0), 1});
    CHECK_THROWS_AS(thicken(tree, part, Coordinate(1)), Error);
}

TEST_CASE("enclose_segment examples") {
    auto tri = enclose_segment(P(0, 0), P(1, 0), {P(0, 0), P(1, 0), Point(rational(1, 2), Coordinate(0))}, Coordinate(1));
    CHECK(tri.size() == 3);
    CHECK(area(tri.vertices) <= 1);
    CHECK(locate_point(P(0, 0), tri) == Containment::Interior);
    CHECK(locate_point(P(1, 0), tri) == Containment::Interior);

    auto dot = enclose_segment(P(3, 3), P(3, 3), {P(3, 3)}, Coordinate(1));
    CHECK(locate_point(P(3, 3), dot) == Containment::Interior);

    Coordinate tiny = rational(1, 1000000000);
    auto thin = enclose_segment(P(0, 0), P(5, 2), {P(0, 0), P(5, 2)}, tiny);
    CHECK(area(thin.vertices) <= tiny);
    CHECK(locate_point(P(5, 2), thin) == Containment::Interior);

    auto capped = enclose_segment(P(0, 0), P(1, 0), {}, Coordinate(1), rational(1, 64));
    CHECK(locate_point(Point(rational(1, 2), rational(1, 32)), capped) == Containment::Exterior);
}
