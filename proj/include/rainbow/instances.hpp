#ifndef RAINBOW_INSTANCES_HPP
#define RAINBOW_INSTANCES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rainbow/geometry.hpp"
#include "rainbow/point_set.hpp"

namespace rainbow {

enum class InstanceKind { S4, S5, S6, S7, Twins, Random };

InstanceKind parse_instance_kind(const std::string& name);
const char* instance_kind_name(InstanceKind kind);

struct Box {
    Coordinate xmin{0}, ymin{0}, xmax{1}, ymax{1};
};

struct InstanceSpec {
    InstanceKind kind = InstanceKind::Random;
    int k = 0;           // colors (Random), twin pairs (Twins); implied by the S kinds
    std::size_t n = 0;   // Random only
    Coordinate grid_density = rational(1, 40);  // dense-class spacing, relative to the box
    Coordinate inner_offset = rational(1, 100); // S7: inner vertices off the edge midpoints, relative to edge length
    Coordinate eps = rational(1, 100);          // Twins: twin distance bound
    std::uint64_t seed = 1;
    Box bbox;
};

// Throws BadSpec for the non-S kinds.
ColoredPointSet gen_hard(const InstanceSpec& spec);

// 2k points a_1, b_1, ..., a_k, b_k; throws BadParams for k < 2 or eps <= 0.
std::vector<Point> gen_twins(int k, const Coordinate& eps, std::uint64_t seed);

// Any four points from four distinct twin pairs, taken by increasing x, have
// the lines c1c4 and c2c3 meeting left of all four. Input is a_1, b_1, a_2, ...
// Exhaustive up to exact_limit pairs, sampled beyond.
bool twins_lines_cross_left(const std::vector<Point>& twins, int exact_limit = 12, std::size_t samples = 20000,
                            std::uint64_t seed = 1);

// n points, k nonempty classes, general position: exact scan for n <= 300,
// random triple sampling beyond. Throws BadParams unless n >= k >= 1.
ColoredPointSet gen_random(int k, std::size_t n, std::uint64_t seed, const Box& bbox = {});

// Dispatch on spec.kind. Twins get one color per point.
ColoredPointSet generate(const InstanceSpec& spec);

}  // namespace rainbow

#endif
