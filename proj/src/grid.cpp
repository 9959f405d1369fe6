#include "grid.hpp"
#include "errors.hpp"

#include <cmath>

namespace lmgp {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i]) || points_[i] < 0.0)
            throw DomainError("TimeGrid: points must be finite and nonnegative");
        if (i > 0 && !(points_[i] > points_[i - 1]))
            throw DomainError("TimeGrid: points must be strictly increasing");
    }
}

TimeGrid TimeGrid::linspace(double start, double stop, std::size_t count) {
    if (count == 0) return TimeGrid{};
    if (count == 1) return TimeGrid{{start}};
    if (!(stop > start)) throw DomainError("TimeGrid: requires stop > start");
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i)
        pts[i] = start + (stop - start) * static_cast<double>(i) /
                             static_cast<double>(count - 1);
    return TimeGrid{std::move(pts)};
}

} // namespace lmgp
