#include <CLI11.hpp>

#include <iostream>

#include "rainbow/error.hpp"
#include "rainbow/instances.hpp"
#include "rainbow/solver.hpp"

using namespace rainbow;

namespace {

constexpr int kInvalidInput = 1;
constexpr int kCertification = 2;

int exit_code_of(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::CertificationFailed:
        case ErrorKind::InternalInvariant:
        case ErrorKind::UncoveredTarget:
            return kCertification;
        default:
            return kInvalidInput;
    }
}

int run_solve(const std::string& file, const std::string& svg, bool show_tree, std::uint64_t seed) {
    ColoredPointSet S = parse_input(read_file(file));
    SolveResult r = solve(S);
    r.seed = seed;
    std::cout << emit_output(S, r);
    if (!svg.empty()) emit_svg(S, r, svg, show_tree);
    return 0;
}

int run_verify(const std::string& points, const std::string& polygon) {
    ColoredPointSet S = parse_input(read_file(points));
    Polygon poly = parse_polygon(read_file(polygon));
    RainbowCertificate cert = certify(poly, S);
    std::cout << "size " << poly.size() << "\n";
    for (std::size_t c = 0; c < cert.counts.size(); ++c)
        std::cout << "count " << S.label_of(static_cast<int>(c)) << " " << cert.counts[c] << "\n";
    std::cout << "perfect " << (cert.perfect ? "yes" : "no") << "\n";
    return cert.perfect ? 0 : kCertification;
}

int run_gen(const std::string& kind, int k, std::size_t n, std::uint64_t seed) {
    InstanceSpec spec;
    spec.kind = parse_instance_kind(kind);
    spec.k = k;
    spec.n = n;
    spec.seed = seed;
    ColoredPointSet S = generate(spec);
    std::cout << "# " << instance_kind_name(spec.kind) << " k=" << S.k() << " n=" << S.n() << " seed=" << seed << "\n";
    for (std::size_t i = 0; i < S.n(); ++i)
        std::cout << to_string(S.point(i).x) << " " << to_string(S.point(i).y) << " " << S.label(i) << "\n";
    return 0;
}

int run_stats(const std::string& points, const std::string& tree_file) {
    ColoredPointSet S = parse_input(read_file(points));
    CoveringTree tree = tree_from_segments(parse_segments(read_file(tree_file)), S.points());
    try {
        validate_tree(tree);
    } catch (const Error& e) {
        fail(ErrorKind::PreconditionViolated, std::string("tree file does not cover the points: ") + e.what());
    }
    SegmentPartition part = partition_tree(tree);
    SegmentStats st = segment_stats(part, S.points());
    const long n = static_cast<long>(S.n());
    std::cout << "n " << n << "\n";
    std::cout << "s " << st.s << "\n";
    std::cout << "t " << st.t << "\n";
    std::cout << "s0 " << st.s0 << "\n";
    std::cout << "s1 " << st.s1 << "\n";
    std::cout << "s2 " << st.s2 << "\n";
    std::cout << "size " << 2 * st.s + static_cast<std::size_t>(st.t) << "\n";
    std::cout << "lemma20 " << (lemma20_holds(st) ? "holds" : "violated") << "\n";
    if (n >= 4 && n % 2 == 0) std::cout << "lower_bound " << ceil_of(lower_bound_tree(n)) << "\n";
    return 0;
}

int run_bounds(long k) {
    std::cout << "k " << k << "\n";
    std::cout << "upper " << upper_bound_rainbow(k) << "\n";
    if (k >= 5) std::cout << "lower " << ceil_of(lower_bound_rainbow(k)) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perfect rainbow polygons for colored point sets"};
    app.require_subcommand(1);

    std::string file, svg, points, polygon, tree, kind;
    bool show_tree = false;
    std::uint64_t seed = 1;
    int k = 0;
    long bound_k = 0;
    std::size_t n = 0;

    auto* solve_cmd = app.add_subcommand("solve", "compute a certified perfect rainbow polygon");
    solve_cmd->add_option("file", file, "points file")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--svg", svg, "write an SVG figure");
    solve_cmd->add_flag("--show-tree", show_tree, "draw the covering tree in the SVG");
    solve_cmd->add_option("--seed", seed, "recorded in the output");

    auto* verify_cmd = app.add_subcommand("verify", "certify a polygon against a point set");
    verify_cmd->add_option("points", points)->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("polygon", polygon)->required()->check(CLI::ExistingFile);

    auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
    gen_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember({"s4", "s5", "s6", "s7", "twins", "random"}));
    gen_cmd->add_option("--k", k);
    gen_cmd->add_option("--n", n);
    gen_cmd->add_option("--seed", seed);

    auto* stats_cmd = app.add_subcommand("stats", "segment statistics of a covering tree");
    stats_cmd->add_option("points", points)->required()->check(CLI::ExistingFile);
    stats_cmd->add_option("tree", tree)->required()->check(CLI::ExistingFile);

    auto* bounds_cmd = app.add_subcommand("bounds", "rainbow polygon size bounds");
    bounds_cmd->add_option("--k", bound_k)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInvalidInput;
    }

    try {
        if (*solve_cmd) return run_solve(file, svg, show_tree, seed);
        if (*verify_cmd) return run_verify(points, polygon);
        if (*gen_cmd) return run_gen(kind, k, n, seed);
        if (*stats_cmd) return run_stats(points, tree);
        if (*bounds_cmd) return run_bounds(bound_k);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_of(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCertification;
    }
    return kInvalidInput;
}
