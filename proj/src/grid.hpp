#pragma once

#include <cstddef>
#include <vector>

namespace lmgp {

// Strictly increasing, finite, nonnegative time points.
class TimeGrid {
public:
    TimeGrid() = default;
    explicit TimeGrid(std::vector<double> points);
    static TimeGrid linspace(double start, double stop, std::size_t count);

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double back() const { return points_.back(); }

private:
    std::vector<double> points_;
};

} // namespace lmgp
