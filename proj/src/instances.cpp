#include "rainbow/instances.hpp"

#include <algorithm>
#include <random>

#include "rainbow/error.hpp"

namespace rainbow {

namespace {

constexpr int kResolutionBits = 32;

// Uniform rational in [lo, hi] on a grid of 2^32 steps.
Coordinate uniform(std::mt19937_64& rng, const Coordinate& lo, const Coordinate& hi) {
    std::uniform_int_distribution<unsigned long> d(0, (1UL << kResolutionBits));
    mpz_class den = 1;
    den <<= kResolutionBits;
    Coordinate step(mpz_class(d(rng)), den);
    step.canonicalize();
    return lo + (hi - lo) * step;
}

bool has_duplicates(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    return std::adjacent_find(pts.begin(), pts.end()) != pts.end();
}

bool sampled_collinear(const std::vector<Point>& pts, std::mt19937_64& rng, std::size_t samples) {
    if (pts.size() < 3) return false;
    std::uniform_int_distribution<std::size_t> d(0, pts.size() - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t i = d(rng), j = d(rng), l = d(rng);
        if (i == j || j == l || i == l) continue;
        if (orient_sign(pts[i], pts[j], pts[l]) == 0) return true;
    }
    return false;
}

constexpr std::size_t kExactScanLimit = 300;

bool general_position(const std::vector<Point>& pts, std::mt19937_64& rng) {
    if (has_duplicates(pts)) return false;
    if (pts.size() <= kExactScanLimit) return !find_collinear_triple(pts);
    return !sampled_collinear(pts, rng, 200000);
}

// Triples with at least one of the first `singles` points: exact, by sorting
// directions around each of them.
bool singles_in_general_position(const std::vector<Point>& pts, std::size_t singles) {
    for (std::size_t i = 0; i < singles; ++i) {
        std::vector<Point> dirs;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            Point d = pts[j] - pts[i];
            if (sign(d.y) < 0 || (sign(d.y) == 0 && sign(d.x) < 0)) d = -d;
            dirs.push_back(d);
        }
        std::sort(dirs.begin(), dirs.end(), [](const Point& a, const Point& b) { return sign(cross(a, b)) > 0; });
        for (std::size_t j = 0; j + 1 < dirs.size(); ++j)
            if (sign(cross(dirs[j], dirs[j + 1])) == 0) return false;
        if (dirs.size() > 1 && sign(cross(dirs.front(), dirs.back())) == 0) return false;
    }
    return true;
}

Point midpoint(const Point& a, const Point& b) { return rational(1, 2) * (a + b); }

}  // namespace

InstanceKind parse_instance_kind(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "s4") return InstanceKind::S4;
    if (s == "s5") return InstanceKind::S5;
    if (s == "s6") return InstanceKind::S6;
    if (s == "s7") return InstanceKind::S7;
    if (s == "twins") return InstanceKind::Twins;
    if (s == "random") return InstanceKind::Random;
    fail(ErrorKind::BadSpec, "unknown instance kind '" + name + "'");
}

const char* instance_kind_name(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::S4: return "s4";
        case InstanceKind::S5: return "s5";
        case InstanceKind::S6: return "s6";
        case InstanceKind::S7: return "s7";
        case InstanceKind::Twins: return "twins";
        case InstanceKind::Random: return "random";
    }
    return "?";
}

ColoredPointSet gen_hard(const InstanceSpec& spec) {
    require(spec.kind == InstanceKind::S4 || spec.kind == InstanceKind::S5 || spec.kind == InstanceKind::S6 ||
                spec.kind == InstanceKind::S7,
            ErrorKind::BadSpec, "gen_hard needs kind s4, s5, s6 or s7");
    require(sign(spec.grid_density) > 0 && spec.grid_density < 1, ErrorKind::BadSpec, "grid density must be in (0, 1)");
    require(sign(spec.inner_offset) > 0 && spec.inner_offset < rational(1, 4), ErrorKind::BadSpec,
            "inner offset must be in (0, 1/4)");

    const Point x(0, 0), y(1, 0), z(rational(7, 20), rational(9, 10));
    std::vector<Point> singles{x, y, z};
    std::vector<int> labels{1, 2, 3};
    int dense_label = 0;
    switch (spec.kind) {
        case InstanceKind::S4:
            singles.push_back(Point(rational(9, 20), rational(3, 10)));
            singles.push_back(Point(rational(11, 20), rational(9, 20)));
            labels.insert(labels.end(), {4, 4});
            break;
        case InstanceKind::S5:
        case InstanceKind::S6:
            singles.push_back(Point(rational(1, 2), rational(7, 20)));
            labels.push_back(4);
            dense_label = 5;
            if (spec.kind == InstanceKind::S6) {
                singles.push_back(Point(rational(3, 10), rational(1, 5)));
                labels.push_back(6);
            }
            break;
        default: {
            // inner triangle: edge midpoints moved inward along the edge normal,
            // by inner_offset times the edge length
            const Point g = rational(1, 3) * (x + y + z);
            auto inner = [&](const Point& a, const Point& b) {
                Point m = midpoint(a, b);
                Point normal(-(b - a).y, (b - a).x);
                if (sign(dot(normal, g - m)) < 0) normal = -normal;
                return m + spec.inner_offset * normal;
            };
            singles.push_back(inner(y, z));  // u, opposite x
            singles.push_back(inner(z, x));  // v, opposite y
            singles.push_back(inner(x, y));  // w, opposite z
            labels.insert(labels.end(), {4, 5, 6});
            dense_label = 7;
        }
    }

    std::mt19937_64 rng(spec.seed);
    Coordinate xmin = singles[0].x, xmax = xmin, ymin = singles[0].y, ymax = ymin;
    for (const Point& p : singles) {
        xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
    }
    const Coordinate side = std::max(xmax - xmin, ymax - ymin);
    const Coordinate h = spec.grid_density * side;

    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<Point> pts;
        std::vector<int> lab = labels;
        const Coordinate jitter = h / 16;
        for (const Point& p : singles)
            pts.push_back(Point(p.x + uniform(rng, -jitter, jitter), p.y + uniform(rng, -jitter, jitter)));
        const std::size_t nsingles = pts.size();
        if (dense_label != 0) {
            const Coordinate q = h / 8;
            for (Coordinate gx = xmin; gx <= xmax; gx += h)
                for (Coordinate gy = ymin; gy <= ymax; gy += h) {
                    bool clear = true;
                    for (const Point& s : singles)
                        clear = clear && (abs_value(s.x - gx) >= h / 2 || abs_value(s.y - gy) >= h / 2);
                    if (!clear) continue;
                    pts.push_back(Point(gx + uniform(rng, -q, q), gy + uniform(rng, -q, q)));
                    lab.push_back(dense_label);
                }
        }
        if (!singles_in_general_position(pts, nsingles) || !general_position(pts, rng)) continue;
        return ColoredPointSet(pts, lab, PositionCheck::Trust);
    }
    fail(ErrorKind::InternalInvariant, "could not place the hard instance in general position");
}

std::vector<Point> gen_twins(int k, const Coordinate& eps, std::uint64_t seed) {
    require(k >= 2, ErrorKind::BadParams, "twins need k >= 2");
    require(sign(eps) > 0, ErrorKind::BadParams, "twins need eps > 0");
    std::mt19937_64 rng(seed);
    std::vector<mpz_class> xs{1};
    for (int i = 1; i < k; ++i) xs.push_back(4 * xs.back() + 4);
    const mpz_class top = 4 * xs.back();
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<Point> pts;
        for (int i = 0; i < k; ++i) {
            Point a{Coordinate(xs[i]), Coordinate(xs[i] * xs[i])};
            // slopes decrease with i and stay above every tangent slope 2 x_i
            Coordinate m = Coordinate(top + (k - i));
            Coordinate t = eps / (2 * (1 + m)) * uniform(rng, rational(1, 2), Coordinate(1));
            pts.push_back(a);
            pts.push_back(a + t * Point(Coordinate(1), m));
        }
        if (!find_collinear_triple(pts)) return pts;
    }
    fail(ErrorKind::InternalInvariant, "twins construction kept producing collinear triples");
}

bool twins_lines_cross_left(const std::vector<Point>& twins, int exact_limit, std::size_t samples,
                            std::uint64_t seed) {
    require(twins.size() % 2 == 0, ErrorKind::BadParams, "twins come in pairs");
    const int k = static_cast<int>(twins.size() / 2);
    auto check = [&](std::array<int, 4> pairs, unsigned pick) {
        std::array<Point, 4> c;
        for (int m = 0; m < 4; ++m) c[m] = twins[2 * pairs[m] + ((pick >> m) & 1)];
        std::sort(c.begin(), c.end());
        auto q = line_intersection(c[0], c[3], c[1], c[2]);
        return q && q->x < c[0].x;
    };
    if (k < 4) return true;
    if (k <= exact_limit) {
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                for (int c = b + 1; c < k; ++c)
                    for (int d = c + 1; d < k; ++d)
                        for (unsigned pick = 0; pick < 16; ++pick)
                            if (!check({a, b, c, d}, pick)) return false;
        return true;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> twin(0, k - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        std::array<int, 4> q{twin(rng), twin(rng), twin(rng), twin(rng)};
        std::sort(q.begin(), q.end());
        if (std::adjacent_find(q.begin(), q.end()) != q.end()) continue;
        if (!check(q, static_cast<unsigned>(rng() & 15))) return false;
    }
    return true;
}

ColoredPointSet gen_random(int k, std::size_t n, std::uint64_t seed, const Box& bbox) {
    require(k >= 1 && n >= static_cast<std::size_t>(k), ErrorKind::BadParams, "gen_random needs n >= k >= 1");
    require(bbox.xmin < bbox.xmax && bbox.ymin < bbox.ymax, ErrorKind::BadParams, "empty bounding box");
    std::mt19937_64 rng(seed);
    for (;;) {
        std::vector<Point> pts;
        pts.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            pts.emplace_back(uniform(rng, bbox.xmin, bbox.xmax), uniform(rng, bbox.ymin, bbox.ymax));
        if (!general_position(pts, rng)) continue;
        std::vector<int> labels(n);
        std::uniform_int_distribution<int> col(1, k);
        for (std::size_t i = 0; i < n; ++i) labels[i] = i < static_cast<std::size_t>(k) ? static_cast<int>(i) + 1 : col(rng);
        std::shuffle(labels.begin(), labels.end(), rng);
        return ColoredPointSet(std::move(pts), std::move(labels), PositionCheck::Trust);
    }
}

ColoredPointSet generate(const InstanceSpec& spec) {
    switch (spec.kind) {
        case InstanceKind::Twins: {
            auto pts = gen_twins(spec.k, spec.eps, spec.seed);
            std::vector<int> labels(pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i) labels[i] = static_cast<int>(i) + 1;
            return ColoredPointSet(std::move(pts), std::move(labels), PositionCheck::Trust);
        }
        case InstanceKind::Random:
            return gen_random(spec.k, spec.n, spec.seed, spec.bbox);
        default:
            return gen_hard(spec);
    }
}

}  // namespace rainbow
