#include "rainbow/solver.hpp"

#include <chrono>

#include "rainbow/error.hpp"
#include "rainbow/small_k.hpp"
#include "rainbow/thicken.hpp"

namespace rainbow {

const char* pipeline_name(Pipeline p) {
    switch (p) {
        case Pipeline::Segment: return "segment";
        case Pipeline::SmallK: return "small-k";
        case Pipeline::General: return "general";
    }
    return "?";
}

namespace {

std::vector<Point> others(const ColoredPointSet& S, const std::vector<std::size_t>& reps) {
    std::vector<char> chosen(S.n(), 0);
    for (std::size_t r : reps) chosen[r] = 1;
    std::vector<Point> out;
    out.reserve(S.n() - reps.size());
    for (std::size_t i = 0; i < S.n(); ++i)
        if (!chosen[i]) out.push_back(S.point(i));
    return out;
}

}  // namespace

SolveResult solve(const ColoredPointSet& S) {
    const auto start = std::chrono::steady_clock::now();
    SolveResult res;
    const std::size_t k = S.k();
    res.bound = upper_bound_rainbow(static_cast<long>(k));
    if (k >= 3 && k <= 7) {
        SmallKTrace tr;
        res.polygon = solve_small(S, &tr);
        res.pipeline = Pipeline::SmallK;
        res.construction = tr.construction;
    } else {
        for (const auto& cls : S.classes()) res.representatives.push_back(cls.front());
        std::vector<Point> reps;
        for (std::size_t r : res.representatives) reps.push_back(S.point(r));
        const std::vector<Point> obstacles = others(S, res.representatives);
        if (k <= 2) {
            CoveringTree tree;
            tree.vertices = reps;
            if (k == 2) tree.edges = {{0, 1}};
            tree.targets = reps;
            Coordinate rho = safe_epsilon(tree, obstacles);
            res.polygon = enclose_segment(reps.front(), reps.back(), reps, rho, rho);
            res.pipeline = Pipeline::Segment;
        } else {
            CoveringResult cov = build_covering_tree(reps);
            Coordinate rho = safe_epsilon(cov.tree, obstacles);
            res.polygon = thicken(cov.tree, cov.partition, rho, rho);
            res.covering = std::move(cov);
            res.pipeline = Pipeline::General;
        }
    }
    res.certificate = certify(res.polygon, S);
    if (res.pipeline == Pipeline::SmallK) {
        PolygonLocator loc(res.polygon.vertices);
        for (std::size_t i = 0; i < S.n(); ++i)
            if (loc.locate(S.point(i)) != Containment::Exterior) res.representatives.push_back(i);
    }
    if (!res.certificate.perfect)
        fail(ErrorKind::CertificationFailed, std::string(pipeline_name(res.pipeline)) + " polygon is not perfect");
    if (static_cast<long>(res.polygon.size()) > res.bound)
        fail(ErrorKind::CertificationFailed, "polygon has " + std::to_string(res.polygon.size()) +
                                                 " vertices, above the bound " + std::to_string(res.bound));
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

}  // namespace rainbow
