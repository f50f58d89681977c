#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Discretization lattices for pixel-driven projectors: image grid, detector
// grid, angle sets with quadrature weights, and fanbeam source/detector
// geometry. All types are immutable after construction and safe to share
// across threads.

namespace pdtomo {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Unit projection direction and its 90-degree rotation.
struct Direction {
    Vec2 theta;       // (cos phi, sin phi)
    Vec2 theta_perp;  // (-sin phi, cos phi)
};

Direction angle_to_direction(double phi);

// N x M pixel lattice with spacing delta_x, centered on the origin.
// Pixel centers are delta_x * (i - (N-1)/2, j - (M-1)/2) for 0-based (i, j);
// the grid is point-symmetric about the origin.
class ImageGrid {
  public:
    ImageGrid(int nx, int ny, double delta_x);

    // Square grid of n x n pixels covering a width x width domain.
    static ImageGrid square(int n, double width = 2.0);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double delta_x() const { return delta_x_; }
    std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }

    double x(int i) const { return delta_x_ * (i - 0.5 * (nx_ - 1)); }
    double y(int j) const { return delta_x_ * (j - 0.5 * (ny_ - 1)); }
    Vec2 center(int i, int j) const { return {x(i), y(j)}; }

    bool operator==(const ImageGrid&) const = default;

  private:
    int nx_;
    int ny_;
    double delta_x_;
};

// P equispaced detector cells spanning (-width/2, width/2).
// Cell centers are offset(p) = delta_s * (p - (P-1)/2) for 0-based p.
class DetectorGrid {
  public:
    DetectorGrid(int count, double width);

    int count() const { return count_; }
    double width() const { return width_; }
    double delta_s() const { return width_ / count_; }
    double offset(int p) const { return delta_s() * (p - 0.5 * (count_ - 1)); }

    bool operator==(const DetectorGrid&) const = default;

  private:
    int count_;
    double width_;
};

enum class AngleKind { full, limited, sparse };

// Strictly increasing projection angles with per-angle quadrature weights.
//
// full:    weights (phi_{q+1} - phi_{q-1})/2 with periodic wraparound; the
//          weights sum to the period (2*pi, or pi for half-turn data).
// limited: endpoint convention phi_0 = phi_1, phi_{Q+1} = phi_Q; the weights
//          sum to phi_Q - phi_1.
// sparse:  counting measure, every weight is 1.
class AngleSet {
  public:
    static AngleSet full(std::vector<double> angles, double period);
    static AngleSet full_uniform(int count, double period, double start = 0.0);
    static AngleSet limited(std::vector<double> angles);
    static AngleSet limited_uniform(int count, double first, double last);
    static AngleSet sparse(std::vector<double> angles);

    // Rebuild from stored data (deserialization); weights are trusted.
    static AngleSet from_parts(AngleKind kind, std::vector<double> angles,
                               std::vector<double> weights);

    int count() const { return static_cast<int>(angles_.size()); }
    double angle(int q) const { return angles_[q]; }
    double weight(int q) const { return weights_[q]; }
    const std::vector<double>& angles() const { return angles_; }
    const std::vector<double>& weights() const { return weights_; }
    AngleKind kind() const { return kind_; }
    double weight_sum() const;

    bool operator==(const AngleSet&) const = default;

  private:
    AngleSet(AngleKind kind, std::vector<double> angles,
             std::vector<double> weights);

    AngleKind kind_;
    std::vector<double> angles_;
    std::vector<double> weights_;
};

// Fanbeam acquisition: point source on a circle of radius R_E > 1 around the
// origin, flat detector at distance R > R_E + 1 from the source. The detector
// width W = 2*R/sqrt(R_E^2 - 1) is exactly wide enough that every ray through
// the unit ball is detected.
class FanGeometry {
  public:
    FanGeometry(double source_radius, double source_detector_distance,
                int detector_count);

    double source_radius() const { return source_radius_; }                  // R_E
    double source_detector_distance() const { return source_detector_; }     // R
    double width() const { return detector_.width(); }                       // W
    const DetectorGrid& detector() const { return detector_; }

    bool operator==(const FanGeometry&) const = default;

  private:
    static double derived_width(double source_radius,
                                double source_detector_distance);

    double source_radius_;
    double source_detector_;
    DetectorGrid detector_;
};

const char* to_string(AngleKind kind);
AngleKind angle_kind_from_string(const std::string& name);

}  // namespace pdtomo
