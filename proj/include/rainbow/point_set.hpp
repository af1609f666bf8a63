#ifndef RAINBOW_POINT_SET_HPP
#define RAINBOW_POINT_SET_HPP

#include <cstddef>
#include <vector>

#include "rainbow/geometry.hpp"

namespace rainbow {

enum class PositionCheck {
    Verify,  // exact collinearity scan, O(n^2 log n)
    Trust,   // caller guarantees general position (e.g. by construction)
};

// Points with positive integer color labels. Colors are also exposed as dense
// indices 0..k-1 in increasing label order.
class ColoredPointSet {
public:
    ColoredPointSet() = default;
    ColoredPointSet(std::vector<Point> points, std::vector<int> labels, PositionCheck check = PositionCheck::Verify);

    std::size_t n() const { return points_.size(); }
    std::size_t k() const { return label_of_.size(); }

    const std::vector<Point>& points() const { return points_; }
    const Point& point(std::size_t i) const { return points_[i]; }
    int label(std::size_t i) const { return label_of_[color_[i]]; }
    int color(std::size_t i) const { return color_[i]; }
    const std::vector<int>& colors() const { return color_; }
    int label_of(int color) const { return label_of_[color]; }
    const std::vector<int>& labels() const { return label_of_; }
    // Indices of the points of each dense color.
    const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
    bool position_verified() const { return verified_; }

    ColoredPointSet subset(const std::vector<std::size_t>& indices) const;

private:
    std::vector<Point> points_;
    std::vector<int> color_;
    std::vector<int> label_of_;
    std::vector<std::vector<std::size_t>> classes_;
    bool verified_ = false;
};

}  // namespace rainbow

#endif
