#include <doctest.h>

#include <map>
#include <random>

#include "rainbow/error.hpp"
#include "rainbow/strip.hpp"
#include "support.hpp"

using namespace rainbow;
using namespace rainbow::testing;

namespace {

Point P(long x, long y) { return Point(x, y); }

int strictly_inside(const ColoredPointSet& S, const Strip& st, int color) {
    const Point &x = S.point(st.x), &y = S.point(st.y), &z = S.point(st.z);
    int count = 0;
    for (std::size_t p = 0; p < S.n(); ++p) {
        if (S.color(p) != color) continue;
        int a = orient_sign(x, y, S.point(p)), b = orient_sign(z, z + (y - x), S.point(p));
        if (a * b < 0) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("three colors give an empty strip") {
    ColoredPointSet S({P(0, 4), P(3, 5), P(1, 0)}, {1, 2, 3});
    StripTrace tr;
    Strip st = find_strip(S, &tr, true);
    CHECK(check_strip(S, st).empty());
    CHECK(tr.invariant_failures.empty());
    CHECK(st.kind == StripCase::WAbsent);
    for (int c = 0; c < 3; ++c) CHECK(strictly_inside(S, st, c) == 0);
    std::vector<std::size_t> idx{st.x, st.y, st.z};
    std::sort(idx.begin(), idx.end());
    CHECK(idx == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("four colors with two yellow points inside the triangle") {
    ColoredPointSet S({P(0, 10), P(10, 11), P(4, 0), P(4, 5), P(6, 6)}, {1, 2, 3, 4, 4});
    StripTrace tr;
    Strip st = find_strip(S, &tr, true);
    CHECK(check_strip(S, st).empty());
    CHECK(tr.invariant_failures.empty());
    CHECK(st.kind == StripCase::WAbsent);
    CHECK(strictly_inside(S, st, 3) >= 1);
}

TEST_CASE("checker rejects broken strips") {
    ColoredPointSet S({P(0, 4), P(3, 5), P(1, 0), P(2, 2)}, {1, 2, 3, 1});
    Strip st = find_strip(S);
    REQUIRE(check_strip(S, st).empty());
    Strip bad = st;
    bad.i1 = st.i2;
    CHECK_FALSE(check_strip(S, bad).empty());
    Strip with_w = st;
    with_w.w = 3;
    CHECK_FALSE(check_strip(S, with_w).empty());
    // a strip whose line 1 runs through two red points violates (ii)
    Strip two_red{0, 3, 1, std::nullopt, 0, 0, 1, StripCase::WAbsent};
    CHECK_FALSE(check_strip(S, two_red).empty());
}

TEST_CASE("too few colors") {
    ColoredPointSet S({P(0, 0), P(1, 1), P(2, 5)}, {1, 2, 2});
    CHECK_THROWS_AS(find_strip(S), Error);
}

TEST_CASE("random strips satisfy every property") {
    std::mt19937_64 rng(99);
    std::map<char, int> stops;
    for (int it = 0; it < 400; ++it) {
        int k = 3 + it % 8;
        std::size_t n = static_cast<std::size_t>(k) + rng() % 40;
        auto S = random_colored(rng, k, n, 500);
        StripTrace tr;
        Strip st = find_strip(S, &tr, true);
        auto problems = check_strip(S, st);
        CHECK(problems.empty());
        CHECK(tr.invariant_failures.empty());
        CHECK(tr.events <= 2 * n);
        ++stops[tr.stop];
    }
    CHECK(stops['A'] > 0);
    CHECK(stops['B'] > 0);
    CHECK(stops['C'] > 0);
}
