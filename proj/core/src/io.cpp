#include "pdtomo/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pdtomo {

namespace {

std::string base_path(const std::string& path) {
    if (path.size() > 4 && path.ends_with(".raw"))
        return path.substr(0, path.size() - 4);
    if (path.size() > 5 && path.ends_with(".json"))
        return path.substr(0, path.size() - 5);
    return path;
}

void check_finite(std::span<const double> values, const char* what) {
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) +
                                        ": refusing to write non-finite values");
}

std::uint64_t to_le_bits(double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    if constexpr (std::endian::native == std::endian::big)
        bits = __builtin_bswap64(bits);
    return bits;
}

double from_le_bits(std::uint64_t bits) {
    if constexpr (std::endian::native == std::endian::big)
        bits = __builtin_bswap64(bits);
    return std::bit_cast<double>(bits);
}

void write_payload(const std::string& path, std::span<const double> values) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    for (double v : values) {
        const std::uint64_t bits = to_le_bits(v);
        out.write(reinterpret_cast<const char*>(&bits), sizeof(bits));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<double> read_payload(const std::string& path,
                                 std::size_t expected_count) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path);
    const auto actual_bytes = static_cast<std::uint64_t>(in.tellg());
    const std::uint64_t expected_bytes = expected_count * sizeof(double);
    if (actual_bytes != expected_bytes)
        throw std::runtime_error(
            path + ": expected " + std::to_string(expected_bytes) +
            " bytes of payload, found " + std::to_string(actual_bytes));
    in.seekg(0);
    std::vector<double> values(expected_count);
    for (std::size_t k = 0; k < expected_count; ++k) {
        std::uint64_t bits = 0;
        in.read(reinterpret_cast<char*>(&bits), sizeof(bits));
        values[k] = from_le_bits(bits);
    }
    if (!in) throw std::runtime_error("read failed: " + path);
    return values;
}

void write_sidecar(const std::string& path, const nlohmann::json& meta) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << meta.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_array(const std::string& path, const Image& image) {
    check_finite(image.values(), "write_array(image)");
    const std::string base = base_path(path);
    nlohmann::json meta{
        {"kind", "image"},
        {"dims", {image.grid().nx(), image.grid().ny()}},
        {"delta_x", image.grid().delta_x()},
    };
    write_sidecar(base + ".json", meta);
    write_payload(base + ".raw", image.values());
}

void write_array(const std::string& path, const Sinogram& sinogram,
                 const std::optional<FanInfo>& geometry) {
    check_finite(sinogram.values(), "write_array(sinogram)");
    const std::string base = base_path(path);
    nlohmann::json meta{
        {"kind", "sinogram"},
        {"dims", {sinogram.detector().count(), sinogram.angles().count()}},
        {"delta_s", sinogram.detector().delta_s()},
        {"width", sinogram.detector().width()},
        {"angle_kind", to_string(sinogram.angles().kind())},
        {"angles", sinogram.angles().angles()},
        {"weights", sinogram.angles().weights()},
    };
    if (geometry)
        meta["geometry"] = {{"R_E", geometry->source_radius},
                            {"R", geometry->source_detector_distance},
                            {"W", geometry->width}};
    write_sidecar(base + ".json", meta);
    write_payload(base + ".raw", sinogram.values());
}

ArrayFile read_array(const std::string& path) {
    const std::string base = base_path(path);
    std::ifstream in(base + ".json");
    if (!in)
        throw std::runtime_error("cannot open for reading: " + base + ".json");
    nlohmann::json meta;
    try {
        in >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(base + ".json: malformed sidecar: " + e.what());
    }

    try {
        const std::string kind = meta.at("kind").get<std::string>();
        const auto dims = meta.at("dims").get<std::vector<int>>();
        if (dims.size() != 2)
            throw std::runtime_error("dims must have two entries");
        const std::size_t count =
            static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]);
        if (kind == "image") {
            const ImageGrid grid(dims[0], dims[1],
                                 meta.at("delta_x").get<double>());
            return {Image(grid, read_payload(base + ".raw", count)),
                    std::nullopt};
        }
        if (kind == "sinogram") {
            const DetectorGrid detector(dims[0], meta.at("width").get<double>());
            AngleSet angles = AngleSet::from_parts(
                angle_kind_from_string(meta.at("angle_kind").get<std::string>()),
                meta.at("angles").get<std::vector<double>>(),
                meta.at("weights").get<std::vector<double>>());
            std::optional<FanInfo> fan;
            if (meta.contains("geometry")) {
                const auto& geo = meta.at("geometry");
                fan = FanInfo{geo.at("R_E").get<double>(),
                              geo.at("R").get<double>(),
                              geo.at("W").get<double>()};
            }
            return {Sinogram(detector, std::move(angles),
                             read_payload(base + ".raw", count)),
                    fan};
        }
        throw std::runtime_error("unknown kind: " + kind);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(base + ".json: malformed sidecar: " + e.what());
    }
}

namespace {

// Fixed-point decimal with 12 significant digits.
std::string decimal12(double v) {
    if (v == 0.0) return "0";
    if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    const int magnitude =
        static_cast<int>(std::floor(std::log10(std::abs(v))));
    const int decimals = std::max(0, 11 - magnitude);
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

}  // namespace

void write_csv_records(const std::string& path,
                       const std::vector<ConvergenceRecord>& records,
                       const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << "P,N,Q,delta_s,l2_error_full,l2_error_worst_projection,"
           "wall_time_s\n";
    for (const ConvergenceRecord& r : records) {
        out << r.detectors << ',' << r.image_size << ',' << r.angle_count
            << ',' << decimal12(r.delta_s) << ',' << decimal12(r.l2_error_full)
            << ',' << decimal12(r.l2_error_worst_projection) << ','
            << decimal12(r.wall_time_s) << '\n';
    }
    for (const std::string& line : comments) out << "# " << line << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

void write_pgm16(const std::string& path, int width, int height,
                 const std::function<double(int, int)>& value) {
    double lo = value(0, 0), hi = lo;
    for (int row = 0; row < height; ++row)
        for (int col = 0; col < width; ++col) {
            const double v = value(col, row);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << "P5\n" << width << " " << height << "\n65535\n";
    const double span = hi - lo;
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            const std::uint16_t level =
                span > 0.0 ? static_cast<std::uint16_t>(
                                 std::lround((value(col, row) - lo) / span *
                                             65535.0))
                           : 32768;
            // PGM multi-byte samples are big-endian
            const unsigned char bytes[2] = {
                static_cast<unsigned char>(level >> 8),
                static_cast<unsigned char>(level & 0xff)};
            out.write(reinterpret_cast<const char*>(bytes), 2);
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void export_pgm(const std::string& path, const Image& image) {
    write_pgm16(path, image.grid().nx(), image.grid().ny(),
                [&](int col, int row) { return image.at(col, row); });
}

void export_pgm(const std::string& path, const Sinogram& sinogram) {
    // angle-horizontal layout: column = q, row = p
    write_pgm16(path, sinogram.angles().count(), sinogram.detector().count(),
                [&](int col, int row) { return sinogram.at(row, col); });
}

}  // namespace pdtomo
