#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pdtomo/geometry.hpp"

// Value arrays carrying their grid metadata. Storage is row-major with the
// first index fastest: images are indexed f[j*nx + i], sinograms g[q*P + p].

namespace pdtomo {

class Image {
  public:
    explicit Image(ImageGrid grid)
        : grid_(grid), values_(grid.size(), 0.0) {}
    Image(ImageGrid grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw std::invalid_argument("Image: value array does not match grid");
    }

    const ImageGrid& grid() const { return grid_; }
    double& at(int i, int j) { return values_[index(i, j)]; }
    double at(int i, int j) const { return values_[index(i, j)]; }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * grid_.nx() + i;
    }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

  private:
    ImageGrid grid_;
    std::vector<double> values_;
};

class Sinogram {
  public:
    Sinogram(DetectorGrid detector, AngleSet angles)
        : detector_(detector),
          angles_(std::move(angles)),
          values_(static_cast<std::size_t>(detector.count()) * angles_.count(),
                  0.0) {}
    Sinogram(DetectorGrid detector, AngleSet angles, std::vector<double> values)
        : detector_(detector),
          angles_(std::move(angles)),
          values_(std::move(values)) {
        const auto expected =
            static_cast<std::size_t>(detector_.count()) * angles_.count();
        if (values_.size() != expected)
            throw std::invalid_argument(
                "Sinogram: value array does not match detector/angle grid");
    }

    const DetectorGrid& detector() const { return detector_; }
    const AngleSet& angles() const { return angles_; }
    double& at(int p, int q) { return values_[index(p, q)]; }
    double at(int p, int q) const { return values_[index(p, q)]; }
    std::size_t index(int p, int q) const {
        return static_cast<std::size_t>(q) * detector_.count() + p;
    }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

  private:
    DetectorGrid detector_;
    AngleSet angles_;
    std::vector<double> values_;
};

}  // namespace pdtomo
