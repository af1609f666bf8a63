#ifndef RAINBOW_SOLVER_HPP
#define RAINBOW_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/covering.hpp"
#include "rainbow/geometry.hpp"
#include "rainbow/point_set.hpp"
#include "rainbow/verify.hpp"

namespace rainbow {

enum class Pipeline { Segment, SmallK, General };
const char* pipeline_name(Pipeline p);

struct SolveResult {
    SimplePolygon polygon;
    RainbowCertificate certificate;
    Pipeline pipeline = Pipeline::Segment;
    std::string construction;                  // small-k construction name
    std::vector<std::size_t> representatives;  // one enclosed point per color
    std::optional<CoveringResult> covering;    // General only
    long bound = 0;                            // upper_bound_rainbow(k)
    std::uint64_t seed = 0;                    // echoed in the output; the solver is deterministic
    double seconds = 0;
};

// Throws CertificationFailed if the final polygon is not perfect or exceeds the bound.
SolveResult solve(const ColoredPointSet& S);

// Above this size parse_input checks collinearity on sampled triples only.
constexpr std::size_t kParseExactScanLimit = 5000;

// One point per line: "<x> <y> <color>"; '#' starts a comment.
ColoredPointSet parse_input(const std::string& text);
// Vertices "x y", or "vertex x y" lines of a solve output; other lines ignored.
Polygon parse_polygon(const std::string& text);
// "segment x1 y1 x2 y2" lines; other lines ignored.
std::vector<Segment> parse_segments(const std::string& text);

std::string emit_output(const ColoredPointSet& S, const SolveResult& result, bool include_tree = true);
std::string render_svg(const ColoredPointSet& S, const SolveResult& result, bool show_tree = false);
void emit_svg(const ColoredPointSet& S, const SolveResult& result, const std::string& path, bool show_tree = false);

std::string read_file(const std::string& path);

}  // namespace rainbow

#endif
