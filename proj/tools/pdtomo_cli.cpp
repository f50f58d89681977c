// Command line front end: every experiment is a subcommand operating on the
// array/CSV/PGM formats of pdtomo/io.hpp. All angles are radians.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdtomo/analysis.hpp"
#include "pdtomo/fanbeam.hpp"
#include "pdtomo/io.hpp"
#include "pdtomo/joseph.hpp"
#include "pdtomo/parallel.hpp"
#include "pdtomo/phantoms.hpp"
#include "pdtomo/radon.hpp"
#include "pdtomo/solvers.hpp"

using namespace pdtomo;
using std::numbers::pi;

namespace {

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ','))
        values.push_back(std::stod(item));
    if (values.empty()) throw std::invalid_argument("empty number list");
    return values;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> values;
    for (double v : parse_doubles(text)) values.push_back(static_cast<int>(v));
    return values;
}

std::pair<int, int> parse_size(const std::string& text) {
    const auto values = parse_ints(text);
    if (values.size() == 1) return {values[0], values[0]};
    if (values.size() == 2) return {values[0], values[1]};
    throw std::invalid_argument("--size expects N or N,M");
}

double parse_period(const std::string& text) {
    if (text == "pi") return pi;
    if (text == "2pi") return 2 * pi;
    return std::stod(text);
}

struct PhantomSpec {
    std::string kind;  // "shepp-logan" or "disc:<r>"
    int supersample = 4;

    Image rasterize(const ImageGrid& grid) const {
        if (kind == "shepp-logan") return rasterize_shepp_logan(grid);
        if (kind.starts_with("disc:"))
            return rasterize_disc(grid, std::stod(kind.substr(5)), supersample);
        throw std::invalid_argument(
            "unknown phantom '" + kind + "', expected shepp-logan or disc:<r>");
    }
};

struct AngleFlags {
    int count = 1;
    std::string range;   // "a,b" -> limited set
    std::string sparse;  // explicit angle list -> sparse set
    std::string period = "";

    AngleSet build(double default_period) const {
        if (!sparse.empty()) return AngleSet::sparse(parse_doubles(sparse));
        if (!range.empty()) {
            const auto bounds = parse_doubles(range);
            if (bounds.size() != 2)
                throw std::invalid_argument("--angle-range expects a,b");
            return AngleSet::limited_uniform(count, bounds[0], bounds[1]);
        }
        const double p =
            period.empty() ? default_period : parse_period(period);
        return AngleSet::full_uniform(count, p);
    }

    void attach(CLI::App* cmd, bool with_period = true) {
        cmd->add_option("--angles", count, "number of angles Q");
        cmd->add_option("--angle-range", range,
                        "limited-angle interval a,b (radians)");
        cmd->add_option("--sparse", sparse,
                        "explicit sparse angle list (radians)");
        if (with_period)
            cmd->add_option("--period", period,
                            "angular period for full sets: pi, 2pi or a value");
    }
};

int run(int argc, char** argv) {
    CLI::App app{
        "pdtomo - pixel-driven parallel-beam and fanbeam projectors.\n"
        "Angles are radians throughout; arrays are written as .raw/.json "
        "pairs."};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: hardware); results do not "
                   "depend on it")
        ->capture_default_str();

    // ---- project ----------------------------------------------------------
    auto* project = app.add_subcommand(
        "project", "parallel-beam pixel-driven forward projection");
    PhantomSpec project_phantom;
    AngleFlags project_angles;
    std::string project_size = "128";
    int project_detectors = 128;
    double project_width = 2.0;
    std::string project_out, project_pgm;
    project->add_option("--phantom", project_phantom.kind,
                        "shepp-logan or disc:<r>")
        ->required();
    project->add_option("--size", project_size, "image pixels N or N,M");
    project->add_option("--detectors", project_detectors, "detector count P");
    project->add_option("--width", project_width, "detector width (default 2)");
    project->add_option("--supersample", project_phantom.supersample,
                        "disc rasterization oversampling factor");
    project_angles.attach(project);
    project->add_option("--out", project_out, "output array base path")
        ->required();
    project->add_option("--pgm", project_pgm, "also write a PGM preview");

    // ---- backproject ------------------------------------------------------
    auto* backproject = app.add_subcommand(
        "backproject", "parallel-beam pixel-driven backprojection");
    std::string bp_in, bp_out, bp_size = "128", bp_pgm;
    backproject->add_option("--in", bp_in, "input sinogram base path")
        ->required();
    backproject->add_option("--size", bp_size, "image pixels N or N,M");
    backproject->add_option("--out", bp_out, "output array base path")
        ->required();
    backproject->add_option("--pgm", bp_pgm, "also write a PGM preview");

    // ---- fan-project ------------------------------------------------------
    auto* fan_project = app.add_subcommand(
        "fan-project", "fanbeam pixel-driven forward projection");
    PhantomSpec fan_phantom;
    AngleFlags fan_angles;
    std::string fan_size = "128";
    int fan_detectors = 128;
    double fan_re = 0.0, fan_rd = 0.0;
    std::string fan_out, fan_pgm;
    fan_project->add_option("--phantom", fan_phantom.kind,
                            "shepp-logan or disc:<r>")
        ->required();
    fan_project->add_option("--size", fan_size, "image pixels N or N,M");
    fan_project->add_option("--detectors", fan_detectors, "detector count P");
    fan_project->add_option("--supersample", fan_phantom.supersample,
                            "disc rasterization oversampling factor");
    fan_project->add_option("--re", fan_re, "source-to-origin distance R_E")
        ->required();
    fan_project->add_option("--rd", fan_rd, "source-to-detector distance R")
        ->required();
    fan_angles.attach(fan_project);
    fan_project->add_option("--out", fan_out, "output array base path")
        ->required();
    fan_project->add_option("--pgm", fan_pgm, "also write a PGM preview");

    // ---- fan-backproject --------------------------------------------------
    auto* fan_backproject_cmd = app.add_subcommand(
        "fan-backproject", "fanbeam pixel-driven backprojection");
    std::string fbp_in, fbp_out, fbp_size = "128", fbp_pgm;
    double fbp_re = 0.0, fbp_rd = 0.0;
    fan_backproject_cmd->add_option("--in", fbp_in, "input sinogram base path")
        ->required();
    fan_backproject_cmd->add_option("--size", fbp_size, "image pixels N or N,M");
    fan_backproject_cmd->add_option(
        "--re", fbp_re, "source-to-origin distance (default: sidecar value)");
    fan_backproject_cmd->add_option(
        "--rd", fbp_rd, "source-to-detector distance (default: sidecar value)");
    fan_backproject_cmd->add_option("--out", fbp_out, "output array base path")
        ->required();
    fan_backproject_cmd->add_option("--pgm", fbp_pgm,
                                    "also write a PGM preview");

    // ---- adjoint-check ----------------------------------------------------
    auto* adjoint = app.add_subcommand(
        "adjoint-check",
        "measure the relative adjointness gap; exits 0 iff <= 1e-10");
    std::string adj_geometry = "parallel";
    std::string adj_size = "128";
    int adj_detectors = 128, adj_angles = 90, adj_trials = 20;
    std::uint64_t adj_seed = 42;
    double adj_re = 3.0, adj_rd = 5.0;
    adjoint->add_option("--geometry", adj_geometry, "parallel or fan")
        ->check(CLI::IsMember({"parallel", "fan"}));
    adjoint->add_option("--size", adj_size, "image pixels N or N,M");
    adjoint->add_option("--detectors", adj_detectors, "detector count P");
    adjoint->add_option("--angles", adj_angles, "angle count Q");
    adjoint->add_option("--trials", adj_trials, "random trials");
    adjoint->add_option("--seed", adj_seed, "random seed");
    adjoint->add_option("--re", adj_re, "fan source-to-origin distance");
    adjoint->add_option("--rd", adj_rd, "fan source-to-detector distance");

    // ---- convergence ------------------------------------------------------
    auto* convergence = app.add_subcommand(
        "convergence", "disc-phantom L2-error study over a detector list");
    std::string conv_coupling = "quadratic";
    std::string conv_plist = "50,100,200,400";
    std::string conv_out;
    StudyOptions conv_options;
    std::string conv_period = "pi";
    convergence->add_option("--coupling", conv_coupling, "linear or quadratic")
        ->check(CLI::IsMember({"linear", "quadratic"}));
    convergence->add_option("--p-list", conv_plist, "ascending detector counts");
    convergence->add_option("--r", conv_options.r, "disc radius");
    convergence->add_option("--period", conv_period,
                            "angular period: pi, 2pi or a value");
    convergence->add_option("--supersample", conv_options.supersample,
                            "disc rasterization oversampling factor");
    convergence->add_option("--budget", conv_options.op_budget,
                            "refuse runs whose predicted cost exceeds this");
    convergence->add_option("--out", conv_out, "output CSV path")->required();

    // ---- landweber --------------------------------------------------------
    auto* landweber_cmd = app.add_subcommand(
        "landweber",
        "Landweber inversion of self-generated Shepp-Logan data");
    std::string lw_pair = "pd";
    int lw_iters = 200, lw_size = 300, lw_detectors = 300, lw_angles = 100;
    int lw_norm_iters = 50;
    std::uint64_t lw_seed = 7;
    double lw_omega = 0.0;
    std::string lw_residuals, lw_image;
    landweber_cmd->add_option("--pair", lw_pair,
                              "pd: pixel-driven forward, jo: Joseph forward; "
                              "backprojection is always pixel-driven")
        ->check(CLI::IsMember({"pd", "jo"}));
    landweber_cmd->add_option("--iters", lw_iters, "iteration count");
    landweber_cmd->add_option("--size", lw_size, "image pixels N");
    landweber_cmd->add_option("--detectors", lw_detectors, "detector count P");
    landweber_cmd->add_option("--angles", lw_angles, "angle count Q");
    landweber_cmd->add_option(
        "--omega", lw_omega,
        "step size (default 0.9/sigma^2 from the pixel-driven pair)");
    landweber_cmd->add_option("--norm-iters", lw_norm_iters,
                              "power iterations for the step-size estimate");
    landweber_cmd->add_option("--seed", lw_seed, "seed for the norm estimate");
    landweber_cmd
        ->add_option("--out-residuals", lw_residuals, "residual CSV path")
        ->required();
    landweber_cmd->add_option("--out-image", lw_image,
                              "write the final iterate as an array");

    // ---- norm-estimate ----------------------------------------------------
    auto* norm_cmd = app.add_subcommand(
        "norm-estimate", "power-iteration estimate of the operator norm");
    std::string nm_geometry = "parallel";
    std::string nm_size = "128";
    int nm_detectors = 128, nm_angles = 90, nm_iters = 50;
    std::uint64_t nm_seed = 7;
    double nm_re = 3.0, nm_rd = 5.0;
    norm_cmd->add_option("--geometry", nm_geometry, "parallel or fan")
        ->check(CLI::IsMember({"parallel", "fan"}));
    norm_cmd->add_option("--size", nm_size, "image pixels N or N,M");
    norm_cmd->add_option("--detectors", nm_detectors, "detector count P");
    norm_cmd->add_option("--angles", nm_angles, "angle count Q");
    norm_cmd->add_option("--iters", nm_iters, "power iterations");
    norm_cmd->add_option("--seed", nm_seed, "random seed");
    norm_cmd->add_option("--re", nm_re, "fan source-to-origin distance");
    norm_cmd->add_option("--rd", nm_rd, "fan source-to-detector distance");

    // let the global --threads flag appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    set_num_threads(threads);

    if (app.got_subcommand(project)) {
        const auto [n, m] = parse_size(project_size);
        const ImageGrid grid(n, m, 2.0 / n);
        const Image image = project_phantom.rasterize(grid);
        const DetectorGrid detector(project_detectors, project_width);
        const Sinogram sino =
            radon_forward(image, detector, project_angles.build(pi));
        write_array(project_out, sino);
        if (!project_pgm.empty()) export_pgm(project_pgm, sino);
        return 0;
    }

    if (app.got_subcommand(backproject)) {
        const ArrayFile file = read_array(bp_in);
        if (!std::holds_alternative<Sinogram>(file.data))
            throw std::invalid_argument("backproject expects a sinogram input");
        const auto [n, m] = parse_size(bp_size);
        const Image image =
            radon_backproject(std::get<Sinogram>(file.data),
                              ImageGrid(n, m, 2.0 / n));
        write_array(bp_out, image);
        if (!bp_pgm.empty()) export_pgm(bp_pgm, image);
        return 0;
    }

    if (app.got_subcommand(fan_project)) {
        const auto [n, m] = parse_size(fan_size);
        const ImageGrid grid(n, m, 2.0 / n);
        const Image image = fan_phantom.rasterize(grid);
        const FanGeometry geometry(fan_re, fan_rd, fan_detectors);
        const Sinogram sino =
            fan_forward(image, geometry, fan_angles.build(2 * pi));
        write_array(fan_out, sino,
                    FanInfo{geometry.source_radius(),
                            geometry.source_detector_distance(),
                            geometry.width()});
        if (!fan_pgm.empty()) export_pgm(fan_pgm, sino);
        return 0;
    }

    if (app.got_subcommand(fan_backproject_cmd)) {
        const ArrayFile file = read_array(fbp_in);
        if (!std::holds_alternative<Sinogram>(file.data))
            throw std::invalid_argument(
                "fan-backproject expects a sinogram input");
        const Sinogram& sino = std::get<Sinogram>(file.data);
        double re = fbp_re, rd = fbp_rd;
        if ((re == 0.0 || rd == 0.0) && file.geometry) {
            re = re == 0.0 ? file.geometry->source_radius : re;
            rd = rd == 0.0 ? file.geometry->source_detector_distance : rd;
        }
        if (re == 0.0 || rd == 0.0)
            throw std::invalid_argument(
                "fan-backproject needs --re/--rd or a geometry sidecar");
        const FanGeometry geometry(re, rd, sino.detector().count());
        const auto [n, m] = parse_size(fbp_size);
        const Image image =
            fan_backproject(sino, geometry, ImageGrid(n, m, 2.0 / n));
        write_array(fbp_out, image);
        if (!fbp_pgm.empty()) export_pgm(fbp_pgm, image);
        return 0;
    }

    if (app.got_subcommand(adjoint)) {
        const auto [n, m] = parse_size(adj_size);
        const ImageGrid grid(n, m, 2.0 / n);
        double gap = 0.0;
        if (adj_geometry == "parallel") {
            const DetectorGrid detector(adj_detectors, 2.0);
            const AngleSet angles = AngleSet::full_uniform(adj_angles, pi);
            gap = adjointness_gap(
                [&](const Image& f) { return radon_forward(f, detector, angles); },
                [&](const Sinogram& s) { return radon_backproject(s, grid); },
                grid, detector, angles, adj_trials, adj_seed);
        } else {
            const FanGeometry geometry(adj_re, adj_rd, adj_detectors);
            const AngleSet angles = AngleSet::full_uniform(adj_angles, 2 * pi);
            gap = adjointness_gap(
                [&](const Image& f) { return fan_forward(f, geometry, angles); },
                [&](const Sinogram& s) {
                    return fan_backproject(s, geometry, grid);
                },
                grid, geometry.detector(), angles, adj_trials, adj_seed);
        }
        std::printf("max relative adjointness gap: %.6e (threshold 1e-10)\n",
                    gap);
        return gap <= 1e-10 ? 0 : 1;
    }

    if (app.got_subcommand(convergence)) {
        conv_options.period = parse_period(conv_period);
        const ConvergenceStudy study = convergence_study(
            parse_ints(conv_plist),
            conv_coupling == "linear" ? Coupling::linear : Coupling::quadratic,
            conv_options);
        std::vector<std::string> comments;
        {
            std::ostringstream line;
            line << "fitted log-log slope of l2_error_full vs delta_s: "
                 << study.fitted_slope;
            comments.push_back(line.str());
        }
        if (!study.pair_slopes.empty()) {
            std::ostringstream line;
            line << "pairwise slopes:";
            for (double s : study.pair_slopes) line << " " << s;
            comments.push_back(line.str());
        }
        write_csv_records(conv_out, study.records, comments);
        std::printf("wrote %zu records to %s (fitted slope %.4f)\n",
                    study.records.size(), conv_out.c_str(),
                    study.fitted_slope);
        return 0;
    }

    if (app.got_subcommand(landweber_cmd)) {
        const ImageGrid grid = ImageGrid::square(lw_size, 2.0);
        const DetectorGrid detector(lw_detectors, 2.0);
        const AngleSet angles = AngleSet::full_uniform(lw_angles, pi);
        const Image phantom = rasterize_shepp_logan(grid);

        const ForwardOp pd_fwd = [&](const Image& f) {
            return radon_forward(f, detector, angles);
        };
        const ForwardOp jo_fwd = [&](const Image& f) {
            return joseph_forward(f, detector, angles);
        };
        const BackwardOp pd_bwd = [&](const Sinogram& s) {
            return radon_backproject(s, grid);
        };
        const ForwardOp& fwd = lw_pair == "pd" ? pd_fwd : jo_fwd;

        double omega = lw_omega;
        double sigma = 0.0;
        if (omega <= 0.0) {
            sigma = estimate_operator_norm(pd_fwd, pd_bwd, grid, detector,
                                           angles, lw_norm_iters, lw_seed);
            omega = 0.9 / (sigma * sigma);
        }

        // data generated by the selected pair's own forward operator
        const Sinogram data = fwd(phantom);
        const auto [image, trace] =
            landweber(fwd, pd_bwd, data, omega, lw_iters, Image(grid));

        std::ofstream out(lw_residuals, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open for writing: " +
                                     lw_residuals);
        out << "iteration,residual_l2\n";
        for (std::size_t k = 0; k < trace.residual_norms.size(); ++k) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.12g",
                          trace.residual_norms[k]);
            out << k << ',' << buf << '\n';
        }
        out << "# pair " << lw_pair << ", omega " << omega;
        if (sigma > 0.0) out << " (0.9/sigma^2, sigma " << sigma << ")";
        out << '\n';
        if (!lw_image.empty()) write_array(lw_image, image);
        if (trace.diverged) {
            std::fprintf(stderr,
                         "landweber diverged at iteration %d "
                         "(non-finite residual); trace written to %s\n",
                         trace.iterations, lw_residuals.c_str());
            return 1;
        }
        std::printf("residual %zu iterations: first %.6e last %.6e\n",
                    trace.residual_norms.size() - 1,
                    trace.residual_norms.front(),
                    trace.residual_norms.back());
        return 0;
    }

    if (app.got_subcommand(norm_cmd)) {
        const auto [n, m] = parse_size(nm_size);
        const ImageGrid grid(n, m, 2.0 / n);
        double sigma = 0.0;
        if (nm_geometry == "parallel") {
            const DetectorGrid detector(nm_detectors, 2.0);
            const AngleSet angles = AngleSet::full_uniform(nm_angles, pi);
            sigma = estimate_operator_norm(
                [&](const Image& f) { return radon_forward(f, detector, angles); },
                [&](const Sinogram& s) { return radon_backproject(s, grid); },
                grid, detector, angles, nm_iters, nm_seed);
        } else {
            const FanGeometry geometry(nm_re, nm_rd, nm_detectors);
            const AngleSet angles = AngleSet::full_uniform(nm_angles, 2 * pi);
            sigma = estimate_operator_norm(
                [&](const Image& f) { return fan_forward(f, geometry, angles); },
                [&](const Sinogram& s) {
                    return fan_backproject(s, geometry, grid);
                },
                grid, geometry.detector(), angles, nm_iters, nm_seed);
        }
        std::printf("%.12g\n", sigma);
        return 0;
    }

    return 2;  // unreachable with require_subcommand(1)
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
