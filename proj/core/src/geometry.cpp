#include "pdtomo/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pdtomo {

Direction angle_to_direction(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {{c, s}, {-s, c}};
}

ImageGrid::ImageGrid(int nx, int ny, double delta_x)
    : nx_(nx), ny_(ny), delta_x_(delta_x) {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("ImageGrid: pixel counts must be >= 1");
    if (!(delta_x > 0.0))
        throw std::invalid_argument("ImageGrid: delta_x must be > 0");
}

ImageGrid ImageGrid::square(int n, double width) {
    if (n < 1)
        throw std::invalid_argument("ImageGrid: pixel count must be >= 1");
    return ImageGrid(n, n, width / n);
}

DetectorGrid::DetectorGrid(int count, double width)
    : count_(count), width_(width) {
    if (count < 1)
        throw std::invalid_argument("DetectorGrid: count must be >= 1");
    if (!(width > 0.0))
        throw std::invalid_argument("DetectorGrid: width must be > 0");
}

namespace {

void check_strictly_increasing(const std::vector<double>& angles) {
    if (angles.empty())
        throw std::invalid_argument("AngleSet: angle list must be non-empty");
    for (std::size_t q = 1; q < angles.size(); ++q)
        if (!(angles[q] > angles[q - 1]))
            throw std::invalid_argument(
                "AngleSet: angles must be strictly increasing");
}

}  // namespace

AngleSet::AngleSet(AngleKind kind, std::vector<double> angles,
                   std::vector<double> weights)
    : kind_(kind), angles_(std::move(angles)), weights_(std::move(weights)) {}

AngleSet AngleSet::full(std::vector<double> angles, double period) {
    check_strictly_increasing(angles);
    if (!(period > 0.0))
        throw std::invalid_argument("AngleSet: period must be > 0");
    const std::size_t q_count = angles.size();
    if (!(angles.back() - angles.front() < period))
        throw std::invalid_argument(
            "AngleSet: angles must span less than one period");
    std::vector<double> weights(q_count);
    for (std::size_t q = 0; q < q_count; ++q) {
        const double prev = (q == 0) ? angles.back() - period : angles[q - 1];
        const double next =
            (q + 1 == q_count) ? angles.front() + period : angles[q + 1];
        weights[q] = 0.5 * (next - prev);
    }
    return AngleSet(AngleKind::full, std::move(angles), std::move(weights));
}

AngleSet AngleSet::full_uniform(int count, double period, double start) {
    if (count < 1)
        throw std::invalid_argument("AngleSet: count must be >= 1");
    if (!(period > 0.0))
        throw std::invalid_argument("AngleSet: period must be > 0");
    std::vector<double> angles(count);
    const double step = period / count;
    for (int q = 0; q < count; ++q) angles[q] = start + q * step;
    std::vector<double> weights(count, step);
    return AngleSet(AngleKind::full, std::move(angles), std::move(weights));
}

AngleSet AngleSet::limited(std::vector<double> angles) {
    check_strictly_increasing(angles);
    const std::size_t q_count = angles.size();
    std::vector<double> weights(q_count);
    for (std::size_t q = 0; q < q_count; ++q) {
        const double prev = (q == 0) ? angles.front() : angles[q - 1];
        const double next = (q + 1 == q_count) ? angles.back() : angles[q + 1];
        weights[q] = 0.5 * (next - prev);
    }
    return AngleSet(AngleKind::limited, std::move(angles), std::move(weights));
}

AngleSet AngleSet::limited_uniform(int count, double first, double last) {
    if (count < 1)
        throw std::invalid_argument("AngleSet: count must be >= 1");
    if (count == 1) return limited({first});
    if (!(last > first))
        throw std::invalid_argument("AngleSet: need last > first");
    std::vector<double> angles(count);
    const double step = (last - first) / (count - 1);
    for (int q = 0; q < count; ++q) angles[q] = first + q * step;
    angles.back() = last;
    return limited(std::move(angles));
}

AngleSet AngleSet::sparse(std::vector<double> angles) {
    check_strictly_increasing(angles);
    std::vector<double> weights(angles.size(), 1.0);
    return AngleSet(AngleKind::sparse, std::move(angles), std::move(weights));
}

AngleSet AngleSet::from_parts(AngleKind kind, std::vector<double> angles,
                              std::vector<double> weights) {
    check_strictly_increasing(angles);
    if (weights.size() != angles.size())
        throw std::invalid_argument("AngleSet: weight/angle size mismatch");
    return AngleSet(kind, std::move(angles), std::move(weights));
}

double AngleSet::weight_sum() const {
    double sum = 0.0;
    for (double w : weights_) sum += w;
    return sum;
}

double FanGeometry::derived_width(double source_radius,
                                  double source_detector_distance) {
    if (!(source_radius > 1.0))
        throw std::invalid_argument("FanGeometry: requires R_E > 1");
    if (!(source_detector_distance > source_radius + 1.0))
        throw std::invalid_argument("FanGeometry: requires R > R_E + 1");
    return 2.0 * source_detector_distance /
           std::sqrt(source_radius * source_radius - 1.0);
}

FanGeometry::FanGeometry(double source_radius, double source_detector_distance,
                         int detector_count)
    : source_radius_(source_radius),
      source_detector_(source_detector_distance),
      detector_(detector_count,
                derived_width(source_radius, source_detector_distance)) {}

const char* to_string(AngleKind kind) {
    switch (kind) {
        case AngleKind::full: return "full";
        case AngleKind::limited: return "limited";
        case AngleKind::sparse: return "sparse";
    }
    return "full";
}

AngleKind angle_kind_from_string(const std::string& name) {
    if (name == "full") return AngleKind::full;
    if (name == "limited") return AngleKind::limited;
    if (name == "sparse") return AngleKind::sparse;
    throw std::invalid_argument("unknown angle kind: " + name);
}

}  // namespace pdtomo
