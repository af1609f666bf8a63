#include "rainbow/point_set.hpp"

#include <algorithm>
#include <numeric>

#include "rainbow/error.hpp"

namespace rainbow {

ColoredPointSet::ColoredPointSet(std::vector<Point> points, std::vector<int> labels, PositionCheck check)
    : points_(std::move(points)) {
    require(points_.size() == labels.size(), ErrorKind::BadParams, "points and colors differ in length");
    require(!points_.empty(), ErrorKind::BadParams, "empty point set");
    for (int l : labels) require(l > 0, ErrorKind::BadParams, "color labels must be positive");

    label_of_ = labels;
    std::sort(label_of_.begin(), label_of_.end());
    label_of_.erase(std::unique(label_of_.begin(), label_of_.end()), label_of_.end());
    color_.resize(labels.size());
    classes_.assign(label_of_.size(), {});
    for (std::size_t i = 0; i < labels.size(); ++i) {
        color_[i] = static_cast<int>(std::lower_bound(label_of_.begin(), label_of_.end(), labels[i]) - label_of_.begin());
        classes_[color_[i]].push_back(i);
    }

    std::vector<std::size_t> order(points_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points_[a] < points_[b]; });
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (points_[order[i]] == points_[order[i + 1]])
            fail(ErrorKind::DuplicatePoint, "points " + std::to_string(order[i]) + " and " +
                                                std::to_string(order[i + 1]) + " coincide at " +
                                                to_string(points_[order[i]]));

    if (check == PositionCheck::Verify) {
        if (auto t = find_collinear_triple(points_))
            fail(ErrorKind::GeneralPositionViolation, "collinear points " + std::to_string((*t)[0]) + ", " +
                                                          std::to_string((*t)[1]) + ", " + std::to_string((*t)[2]));
        verified_ = true;
    }
}

ColoredPointSet ColoredPointSet::subset(const std::vector<std::size_t>& indices) const {
    std::vector<Point> pts;
    std::vector<int> labels;
    pts.reserve(indices.size());
    labels.reserve(indices.size());
    for (std::size_t i : indices) {
        pts.push_back(points_[i]);
        labels.push_back(label(i));
    }
    ColoredPointSet out(std::move(pts), std::move(labels), PositionCheck::Trust);
    out.verified_ = verified_;
    return out;
}

}  // namespace rainbow
