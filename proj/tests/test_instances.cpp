#include <doctest.h>

#include <random>

#include "rainbow/covering.hpp"
#include "rainbow/error.hpp"
#include "rainbow/instances.hpp"
#include "rainbow/small_k.hpp"
#include "rainbow/verify.hpp"

using namespace rainbow;

namespace {

InstanceSpec hard(InstanceKind kind) {
    InstanceSpec s;
    s.kind = kind;
    return s;
}

std::vector<int> class_sizes(const ColoredPointSet& S) {
    std::vector<int> out;
    for (const auto& c : S.classes()) out.push_back(static_cast<int>(c.size()));
    return out;
}

bool inside_closed(const Point& p, const Point& a, const Point& b, const Point& c) {
    int h = orient_sign(a, b, c);
    return orient_sign(a, b, p) * h >= 0 && orient_sign(b, c, p) * h >= 0 && orient_sign(c, a, p) * h >= 0;
}

}  // namespace

TEST_CASE("S4: five points, no perfect triangle on a candidate grid") {
    auto S = gen_hard(hard(InstanceKind::S4));
    CHECK(S.n() == 5);
    CHECK(S.k() == 4);
    CHECK(class_sizes(S) == std::vector<int>{1, 1, 1, 2});
    // triangles with vertices on a grid around the instance
    std::vector<Point> cand;
    for (int i = -1; i <= 7; ++i)
        for (int j = -1; j <= 7; ++j) cand.emplace_back(rational(i, 6), rational(j, 6));
    long perfect = 0, tested = 0;
    for (std::size_t a = 0; a < cand.size(); ++a)
        for (std::size_t b = a + 1; b < cand.size(); ++b)
            for (std::size_t c = b + 1; c < cand.size(); ++c) {
                if (orient_sign(cand[a], cand[b], cand[c]) == 0) continue;
                ++tested;
                std::vector<int> cnt(S.k(), 0);
                for (std::size_t i = 0; i < S.n(); ++i)
                    if (inside_closed(S.point(i), cand[a], cand[b], cand[c])) ++cnt[S.color(i)];
                perfect += std::all_of(cnt.begin(), cnt.end(), [](int v) { return v == 1; });
            }
    CHECK(tested > 50000);
    CHECK(perfect == 0);
}

TEST_CASE("hard instances reach the small-k bounds exactly") {
    for (auto [kind, k, size] : {std::tuple{InstanceKind::S4, 4, 4}, {InstanceKind::S5, 5, 5},
                                 {InstanceKind::S6, 6, 6}, {InstanceKind::S7, 7, 8}}) {
        CAPTURE(instance_kind_name(kind));
        auto S = gen_hard(hard(kind));
        REQUIRE(S.k() == static_cast<std::size_t>(k));
        auto poly = solve_small(S);
        CHECK(certify(poly, S).perfect);
        CHECK(poly.size() == static_cast<std::size_t>(size));
    }
}

TEST_CASE("hard instances: class structure and determinism") {
    auto s5 = gen_hard(hard(InstanceKind::S5));
    auto sizes = class_sizes(s5);
    CHECK(std::vector<int>(sizes.begin(), sizes.begin() + 4) == std::vector<int>{1, 1, 1, 1});
    CHECK(sizes[4] > 1000);
    auto s7 = gen_hard(hard(InstanceKind::S7));
    CHECK(class_sizes(s7)[6] > 1000);
    CHECK(s7.points() == gen_hard(hard(InstanceKind::S7)).points());
    InstanceSpec other = hard(InstanceKind::S7);
    other.seed = 2;
    CHECK(s7.points() != gen_hard(other).points());
    // inner vertices of S7 sit inside the outer triangle
    for (std::size_t i = 3; i < 6; ++i)
        CHECK(inside_closed(s7.point(i), s7.point(0), s7.point(1), s7.point(2)));
}

TEST_CASE("hard instances: large triangles capture two dense points") {
    for (auto kind : {InstanceKind::S5, InstanceKind::S6, InstanceKind::S7}) {
        InstanceSpec spec = hard(kind);
        auto S = gen_hard(spec);
        const int dense = static_cast<int>(S.k()) - (kind == InstanceKind::S6 ? 2 : 1);
        Coordinate xmin = S.point(0).x, xmax = xmin, ymin = S.point(0).y, ymax = ymin;
        for (const Point& p : S.points()) {
            xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
        }
        const Coordinate side = std::max(xmax - xmin, ymax - ymin);
        const Coordinate threshold = 8 * spec.grid_density * side * side;
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<int> d(0, 1000);
        int tested = 0;
        while (tested < 60) {
            std::array<Point, 3> t;
            for (auto& p : t)
                p = Point(xmin + (xmax - xmin) * rational(d(rng), 1000), ymin + (ymax - ymin) * rational(d(rng), 1000));
            if (area({t[0], t[1], t[2]}) < threshold) continue;
            ++tested;
            int inside = 0;
            for (std::size_t i : S.classes()[dense])
                if (orient_sign(t[0], t[1], S.point(i)) * orient_sign(t[0], t[1], t[2]) > 0 &&
                    orient_sign(t[1], t[2], S.point(i)) * orient_sign(t[0], t[1], t[2]) > 0 &&
                    orient_sign(t[2], t[0], S.point(i)) * orient_sign(t[0], t[1], t[2]) > 0)
                    ++inside;
            CHECK(inside >= 2);
        }
    }
}

TEST_CASE("gen_hard rejects bad specs") {
    InstanceSpec s = hard(InstanceKind::Random);
    CHECK_THROWS_AS(gen_hard(s), Error);
    s = hard(InstanceKind::S5);
    s.grid_density = 0;
    CHECK_THROWS_AS(gen_hard(s), Error);
    CHECK_THROWS_AS(parse_instance_kind("s9"), Error);
    CHECK(parse_instance_kind("S7") == InstanceKind::S7);
}

TEST_CASE("twins: small cases") {
    auto two = gen_twins(2, rational(1, 100), 1);
    CHECK(two.size() == 4);
    CHECK_FALSE(find_collinear_triple(two));

    const Coordinate eps = rational(1, 100);
    auto four = gen_twins(4, eps, 1);
    for (int i = 0; i < 4; ++i) {
        const Point &a = four[2 * i], &b = four[2 * i + 1];
        CHECK(a.y == a.x * a.x);
        CHECK(squared_distance(a, b) < eps * eps);
        CHECK(b.y > b.x * b.x);
        for (int j = i + 1; j < 4; ++j) CHECK(squared_distance(a, four[2 * j]) > 4 * eps * eps);
        if (i > 0) {
            Point prev = four[2 * i - 1] - four[2 * i - 2], cur = b - a;
            CHECK(sign(cur.x) > 0);
            CHECK(cur.y / cur.x < prev.y / prev.x);  // slopes decrease
        }
    }
    CHECK_THROWS_AS(gen_twins(1, eps, 1), Error);
    CHECK_THROWS_AS(gen_twins(3, Coordinate(0), 1), Error);
}

TEST_CASE("twins: crossing property and covering-tree bound") {
    for (int k : {4, 8, 12}) CHECK(twins_lines_cross_left(gen_twins(k, rational(1, 100), 5)));
    CHECK(twins_lines_cross_left(gen_twins(25, rational(1, 100), 5)));

    auto pts = gen_twins(10, rational(1, 100), 1);
    auto res = build_covering_tree(pts);
    const long m = 2 * static_cast<long>(res.partition.s()) + res.partition.t();
    CHECK(m == 31);
    CHECK(m >= ceil_of(lower_bound_tree(20)));
    CHECK(ceil_of(lower_bound_tree(20)) == 21);
}

TEST_CASE("gen_random") {
    auto three = gen_random(3, 3, 1);
    CHECK(class_sizes(three) == std::vector<int>{1, 1, 1});
    auto one = gen_random(1, 5, 1);
    CHECK(class_sizes(one) == std::vector<int>{5});
    auto a = gen_random(7, 700, 1), b = gen_random(7, 700, 1);
    CHECK(a.points() == b.points());
    CHECK(a.colors() == b.colors());
    CHECK(a.k() == 7);
    CHECK_FALSE(find_collinear_triple(a.points()));
    Box box{Coordinate(-5), Coordinate(2), Coordinate(-4), Coordinate(3)};
    auto boxed = gen_random(4, 50, 9, box);
    for (const Point& p : boxed.points()) {
        CHECK(p.x >= -5);
        CHECK(p.x <= -4);
        CHECK(p.y >= 2);
        CHECK(p.y <= 3);
    }
    CHECK_THROWS_AS(gen_random(4, 3, 1), Error);
    CHECK_THROWS_AS(gen_random(0, 3, 1), Error);
}
