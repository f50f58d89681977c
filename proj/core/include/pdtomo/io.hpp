#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pdtomo/analysis.hpp"
#include "pdtomo/arrays.hpp"

// File formats.
//
// Arrays are stored as a pair of files: <base>.raw holds the values as
// little-endian IEEE 754 doubles in storage order (image: i fastest;
// sinogram: p fastest), and <base>.json is a sidecar describing the grid:
//   { "kind": "image",    "dims": [N, M], "delta_x": ... }
//   { "kind": "sinogram", "dims": [P, Q], "delta_s": ..., "width": ...,
//     "angle_kind": "full"|"limited"|"sparse", "angles": [...],
//     "weights": [...], "geometry": {"R_E": .., "R": .., "W": ..}? }
// The roundtrip read(write(x)) == x is bit-exact.

namespace pdtomo {

// Optional fanbeam annotation stored with a sinogram.
struct FanInfo {
    double source_radius = 0.0;             // R_E
    double source_detector_distance = 0.0;  // R
    double width = 0.0;                     // W
};

struct ArrayFile {
    std::variant<Image, Sinogram> data;
    std::optional<FanInfo> geometry;
};

void write_array(const std::string& path, const Image& image);
void write_array(const std::string& path, const Sinogram& sinogram,
                 const std::optional<FanInfo>& geometry = std::nullopt);
ArrayFile read_array(const std::string& path);

// CSV table of convergence records, one row per record, preceded by the
// header P,N,Q,delta_s,l2_error_full,l2_error_worst_projection,wall_time_s.
// Values are written in decimal notation with 12 significant digits.
// Extra lines (e.g. fitted slopes) are appended as '#' comments.
void write_csv_records(const std::string& path,
                       const std::vector<ConvergenceRecord>& records,
                       const std::vector<std::string>& comments = {});

// 16-bit binary PGM, min-max normalized; constant arrays map to mid-gray
// 32768. Sinograms are transposed so angles run horizontally.
void export_pgm(const std::string& path, const Image& image);
void export_pgm(const std::string& path, const Sinogram& sinogram);

}  // namespace pdtomo
