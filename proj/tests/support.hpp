#ifndef RAINBOW_TESTS_SUPPORT_HPP
#define RAINBOW_TESTS_SUPPORT_HPP

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "rainbow/geometry.hpp"
#include "rainbow/point_set.hpp"

namespace rainbow::testing {

// n integer points in [-range, range]^2 with no three collinear.
inline std::vector<Point> random_points_gp(std::size_t n, long range, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-range, range);
    for (;;) {
        std::vector<Point> pts;
        for (std::size_t i = 0; i < n; ++i) pts.emplace_back(d(rng), d(rng));
        if (!find_collinear_triple(pts)) {
            std::vector<Point> s = pts;
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) == s.end()) return pts;
        }
    }
}

inline bool inside_open(const Point& p, const Point& a, const Point& b, const Point& c) {
    int s = orient_sign(a, b, p);
    return s != 0 && s == orient_sign(b, c, p) && s == orient_sign(c, a, p);
}

// Direct reading of the definition for one assignment of points to corners.
inline bool is_expedient(const Point& x, const Point& y, const Point& z, const Point& a, const Point& b, const Point& c) {
    auto r = line_intersection(x, a, y, b);
    auto s = line_intersection(y, b, z, c);
    auto t = line_intersection(z, c, x, a);
    if (!r || !s || !t) return false;
    auto strictly_on = [](const Point& p, const Point& u, const Point& v) {
        return p != u && p != v && on_segment(p, u, v);
    };
    return strictly_on(a, x, *r) && strictly_on(b, y, *s) && strictly_on(c, z, *t);
}

inline int count_expedient(const Point& x, const Point& y, const Point& z, std::array<Point, 3> in) {
    std::sort(in.begin(), in.end());
    int n = 0;
    do n += is_expedient(x, y, z, in[0], in[1], in[2]);
    while (std::next_permutation(in.begin(), in.end()));
    return n;
}

// Triangle with random general-position points inside it.
inline std::vector<Point> triangle_cloud(std::size_t inner, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-1000, 1000);
    for (;;) {
        std::vector<Point> pts{Point(d(rng), d(rng)), Point(d(rng), d(rng)), Point(d(rng), d(rng))};
        if (orient_sign(pts[0], pts[1], pts[2]) == 0) continue;
        int guard = 0;
        while (pts.size() < inner + 3 && guard++ < 100000) {
            Point p(d(rng), d(rng));
            if (inside_open(p, pts[0], pts[1], pts[2])) pts.push_back(p);
        }
        if (pts.size() < inner + 3) continue;
        std::vector<Point> s = pts;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) continue;
        if (!find_collinear_triple(pts)) return pts;
    }
}

inline ColoredPointSet random_colored(std::mt19937_64& rng, int k, std::size_t n, long range) {
    auto pts = testing::random_points_gp(n, range, rng);
    std::vector<int> labels(n);
    std::uniform_int_distribution<int> col(1, k);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i < static_cast<std::size_t>(k) ? static_cast<int>(i) + 1 : col(rng);
    std::shuffle(labels.begin(), labels.end(), rng);
    return ColoredPointSet(pts, labels);
}

}  // namespace rainbow::testing

#endif
