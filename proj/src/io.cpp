#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "rainbow/error.hpp"
#include "rainbow/solver.hpp"

namespace rainbow {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream in(body);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(std::move(t));
    return out;
}

template <class F>
void for_each_line(const std::string& text, F&& f) {
    std::istringstream in(text);
    std::size_t number = 0;
    for (std::string line; std::getline(in, line);) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto tok = tokens_of(line);
        if (!tok.empty()) f(number, tok);
    }
}

Coordinate coordinate_at(std::size_t line, const std::string& text) {
    try {
        return parse_coordinate(text);
    } catch (const Error& e) {
        fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + e.what());
    }
}

int label_at(std::size_t line, const std::string& text) {
    const bool digits = !text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); });
    if (!digits || text.size() > 9 || std::stol(text) <= 0)
        fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": color must be a positive integer, got '" + text + "'");
    return static_cast<int>(std::stol(text));
}

std::optional<std::array<std::size_t, 3>> sampled_collinear(const std::vector<Point>& pts) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> d(0, pts.size() - 1);
    for (int s = 0; s < 400000; ++s) {
        std::size_t i = d(rng), j = d(rng), l = d(rng);
        if (i == j || j == l || i == l) continue;
        if (orient_sign(pts[i], pts[j], pts[l]) == 0) {
            std::array<std::size_t, 3> t{i, j, l};
            std::sort(t.begin(), t.end());
            return t;
        }
    }
    return std::nullopt;
}

}  // namespace

ColoredPointSet parse_input(const std::string& text) {
    std::vector<Point> pts;
    std::vector<int> labels;
    std::vector<std::size_t> lines;
    for_each_line(text, [&](std::size_t line, const std::vector<std::string>& tok) {
        if (tok.size() != 3)
            fail(ErrorKind::ParseError,
                 "line " + std::to_string(line) + ": expected '<x> <y> <color>', got " + std::to_string(tok.size()) + " fields");
        pts.emplace_back(coordinate_at(line, tok[0]), coordinate_at(line, tok[1]));
        labels.push_back(label_at(line, tok[2]));
        lines.push_back(line);
    });
    require(!pts.empty(), ErrorKind::ParseError, "no points in input");

    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pts[a] < pts[b] || (pts[a] == pts[b] && a < b);
    });
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (pts[order[i]] == pts[order[i + 1]])
            fail(ErrorKind::ParseError, "line " + std::to_string(lines[order[i + 1]]) + ": duplicate of line " +
                                            std::to_string(lines[order[i]]) + " at " + to_string(pts[order[i]]));

    auto triple = pts.size() <= kParseExactScanLimit ? find_collinear_triple(pts) : sampled_collinear(pts);
    if (triple) {
        auto [a, b, c] = *triple;
        fail(ErrorKind::GeneralPositionViolation, "points " + std::to_string(a) + ", " + std::to_string(b) + ", " +
                                                      std::to_string(c) + " (lines " + std::to_string(lines[a]) + ", " +
                                                      std::to_string(lines[b]) + ", " + std::to_string(lines[c]) +
                                                      ") are collinear");
    }
    return ColoredPointSet(std::move(pts), std::move(labels), PositionCheck::Trust);
}

Polygon parse_polygon(const std::string& text) {
    Polygon poly;
    for_each_line(text, [&](std::size_t line, const std::vector<std::string>& tok) {
        if (tok[0] == "vertex") {
            if (tok.size() != 3) fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": vertex needs 2 coordinates");
            poly.emplace_back(coordinate_at(line, tok[1]), coordinate_at(line, tok[2]));
        } else if (!std::isalpha(static_cast<unsigned char>(tok[0][0]))) {
            // bare "x y" line; keyword lines of a solve output are skipped
            if (tok.size() != 2) fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected '<x> <y>'");
            poly.emplace_back(coordinate_at(line, tok[0]), coordinate_at(line, tok[1]));
        }
    });
    require(poly.size() >= 3, ErrorKind::ParseError, "polygon needs at least 3 vertices");
    return poly;
}

std::vector<Segment> parse_segments(const std::string& text) {
    std::vector<Segment> segs;
    for_each_line(text, [&](std::size_t line, const std::vector<std::string>& tok) {
        if (tok[0] != "segment") return;
        if (tok.size() != 5) fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": segment needs 4 coordinates");
        segs.push_back({Point(coordinate_at(line, tok[1]), coordinate_at(line, tok[2])),
                        Point(coordinate_at(line, tok[3]), coordinate_at(line, tok[4]))});
    });
    require(!segs.empty(), ErrorKind::ParseError, "no segment lines");
    return segs;
}

std::string emit_output(const ColoredPointSet& S, const SolveResult& r, bool include_tree) {
    std::ostringstream out;
    out << "k " << S.k() << "\n";
    out << "n " << S.n() << "\n";
    out << "seed " << r.seed << "\n";
    out << "pipeline " << pipeline_name(r.pipeline) << "\n";
    if (!r.construction.empty()) out << "construction " << r.construction << "\n";
    out << "size " << r.polygon.size() << "\n";
    out << "bound " << r.bound << "\n";
    for (const Point& v : r.polygon.vertices) out << "vertex " << to_string(v.x) << " " << to_string(v.y) << "\n";
    for (std::size_t c = 0; c < r.certificate.counts.size(); ++c)
        out << "count " << S.label_of(static_cast<int>(c)) << " " << r.certificate.counts[c] << "\n";
    if (include_tree && r.covering) {
        const SegmentPartition& part = r.covering->partition;
        for (const Segment& s : part.segments)
            out << "segment " << to_string(s.a.x) << " " << to_string(s.a.y) << " " << to_string(s.b.x) << " "
                << to_string(s.b.y) << "\n";
        for (const Fork& f : part.forks)
            out << "fork " << to_string(f.vertex.x) << " " << to_string(f.vertex.y) << " " << f.multiplicity << "\n";
        out << "s " << part.s() << "\n";
        out << "t " << part.t() << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) fail(ErrorKind::IoError, "cannot read '" + path + "'");
    return ss.str();
}

}  // namespace rainbow
