#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rainbow/error.hpp"
#include "rainbow/solver.hpp"

namespace rainbow {

namespace {

constexpr const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4",
                                    "#f032e6", "#bfef45", "#469990", "#9a6324", "#800000", "#000075"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);
constexpr double kCanvas = 800;
constexpr double kMargin = 20;

struct View {
    double xmin, ymax, scale;
    std::string x(const Point& p) const { return fmt((p.x.get_d() - xmin) * scale + kMargin); }
    std::string y(const Point& p) const { return fmt((ymax - p.y.get_d()) * scale + kMargin); }
    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return buf;
    }
};

View fit(const std::vector<Point>& pts) {
    double xmin = pts[0].x.get_d(), xmax = xmin, ymin = pts[0].y.get_d(), ymax = ymin;
    for (const Point& p : pts) {
        xmin = std::min(xmin, p.x.get_d()), xmax = std::max(xmax, p.x.get_d());
        ymin = std::min(ymin, p.y.get_d()), ymax = std::max(ymax, p.y.get_d());
    }
    double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
    return {xmin, ymax, (kCanvas - 2 * kMargin) / span};
}

}  // namespace

std::string render_svg(const ColoredPointSet& S, const SolveResult& r, bool show_tree) {
    std::vector<Point> extent = S.points();
    extent.insert(extent.end(), r.polygon.vertices.begin(), r.polygon.vertices.end());
    const bool tree = show_tree && r.covering;
    if (tree) extent.push_back(r.covering->barrier.a), extent.push_back(r.covering->barrier.b);
    const View v = fit(extent);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
        << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    out << "<path class=\"polygon\" fill=\"#ffd70040\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
    for (std::size_t i = 0; i < r.polygon.size(); ++i) {
        const Point& p = r.polygon.vertices[i];
        out << (i == 0 ? "M" : " L") << v.x(p) << " " << v.y(p);
    }
    out << " Z\"/>\n";

    if (tree) {
        const SegmentPartition& part = r.covering->partition;
        const Segment& bar = r.covering->barrier;
        out << "<g class=\"tree\">\n";
        for (const Segment& s : part.segments) {
            const bool is_barrier = orient_sign(bar.a, bar.b, s.a) == 0 && orient_sign(bar.a, bar.b, s.b) == 0;
            out << "<line class=\"" << (is_barrier ? "barrier" : "segment") << "\" x1=\"" << v.x(s.a) << "\" y1=\""
                << v.y(s.a) << "\" x2=\"" << v.x(s.b) << "\" y2=\"" << v.y(s.b) << "\" stroke=\"#555555\""
                << (is_barrier ? " stroke-dasharray=\"6 4\"" : "") << " stroke-width=\"1\"/>\n";
        }
        for (const Fork& f : part.forks)
            out << "<circle class=\"fork\" cx=\"" << v.x(f.vertex) << "\" cy=\"" << v.y(f.vertex) << "\" r=\""
                << (f.multiplicity == 2 ? 4 : 3) << "\" fill=\"none\" stroke=\"#555555\"/>\n";
        out << "</g>\n";
    }

    std::vector<char> chosen(S.n(), 0);
    for (std::size_t i : r.representatives) chosen[i] = 1;
    out << "<g class=\"points\">\n";
    for (std::size_t i = 0; i < S.n(); ++i) {
        const char* fill = kPalette[static_cast<std::size_t>(S.color(i)) % kPaletteSize];
        out << "<circle cx=\"" << v.x(S.point(i)) << "\" cy=\"" << v.y(S.point(i)) << "\" r=\"" << (chosen[i] ? 4 : 2)
            << "\" fill=\"" << fill << "\"" << (chosen[i] ? " stroke=\"black\" class=\"representative\"" : "") << "/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

void emit_svg(const ColoredPointSet& S, const SolveResult& r, const std::string& path, bool show_tree) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    f << render_svg(S, r, show_tree);
    if (!f) fail(ErrorKind::IoError, "cannot write '" + path + "'");
}

}  // namespace rainbow
