#include "cli.hpp"

#include <emmatch/analysis.hpp>
#include <emmatch/edge_current.hpp>
#include <emmatch/em_field.hpp>
#include <emmatch/errors.hpp>
#include <emmatch/kernels.hpp>
#include <emmatch/matcher.hpp>
#include <emmatch/raster.hpp>
#include <emmatch/synthetic.hpp>
#include <emmatch/visual.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace emmatch::cli {

namespace {

struct Options {
    // edges
    double threshold_percent = 0.10;
    bool quantize = true;
    // scene
    double z_separation = 0.0;
    double force_constant = 1.0;
    double min_distance = 1e-6;
    // sweep / match
    int intervals = 120;
    double step_degrees = 1.0;
    int max_iterations = 720;
    int oscillation_window = 4;
    double zero_band = 0.0;
    bool classify = true;
    // raster
    double fill = 0.0;
    bool mask_circle = false;
    // execution
    bool deterministic = true;
    int threads = 0;

    // files
    std::string input;
    std::string second;
    std::string output;
    std::string edge_map;
    std::string current_svg;
    std::string csv;
    std::string force_svg;
    std::string bar_svg;
    std::string pie_svg;
    std::string trajectory;

    // rotate / synth
    double angle = 0.0;
    std::string shape = "rectangle";
    int size = 64;
    double half_width = 16.5;
    double half_height = 10.5;
    double offset_x = 0.0;
    double offset_y = 0.0;

    EdgeParams edge() const { return {threshold_percent, quantize}; }
    SceneConfig scene() const { return {force_constant, z_separation, min_distance}; }
    Execution execution() const {
        return deterministic ? Execution::deterministic : Execution::parallel;
    }

    SweepParams sweep() const {
        SweepParams p;
        p.intervals = intervals;
        p.scene = scene();
        p.zero_band = zero_band;
        p.edge = edge();
        p.fill = fill;
        p.mask_circle = mask_circle;
        p.execution = execution();
        return p;
    }

    MatchParams match() const {
        MatchParams p;
        p.step = step_degrees;
        p.max_iterations = max_iterations;
        p.oscillation_window = oscillation_window;
        p.zero_band = zero_band;
        p.scene = scene();
        p.edge = edge();
        p.fill = fill;
        p.mask_circle = mask_circle;
        p.classify_intervals = classify ? intervals : 0;
        p.execution = execution();
        return p;
    }
};

std::string fmt_num(double v, const char* pattern = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

const char* direction_of(int sign) {
    if (sign < 0) return "counterclockwise";
    if (sign > 0) return "clockwise";
    return "balanced";
}

GrayImage prepared(const GrayImage& img, const Options& o) {
    return o.mask_circle ? mask_circle(img, o.fill) : img;
}

int cmd_edges(const Options& o, std::ostream& out) {
    const GrayImage img = prepared(load_image(o.input), o);
    const GradientField field = sobel_gradient(img);
    const auto edges = extract_significant_edges(field, o.edge());
    const CurrentSet set = gradient_to_current(field, edges, o.edge(), 0.0, img.center());

    if (!o.edge_map.empty()) save_image(edge_map(img.width(), img.height(), edges), o.edge_map);
    if (!o.current_svg.empty()) write_current_svg(set, o.current_svg);
    out << "elements: " << set.size() << '\n';
    return kOk;
}

int cmd_moment(const Options& o, std::ostream& out) {
    const GrayImage original = load_image(o.input);
    const GrayImage rotated = load_image(o.second);
    if (!original.same_size(rotated)) throw std::invalid_argument("images must share dimensions");

    CurrentSet lower = extract_currents(prepared(original, o), o.edge(), 0.0);
    CurrentSet upper = extract_currents(prepared(rotated, o), o.edge(), o.z_separation);
    if (lower.empty()) throw DegenerateInputError("empty current set in " + o.input);
    if (upper.empty()) throw DegenerateInputError("empty current set in " + o.second);

    const SceneConfig scene = o.scene();
    const MomentResult m = total_moment(upper, lower, scene, o.execution());
    const int sign = moment_sign(m.total, m.abs_sum(), o.zero_band);

    if (!o.csv.empty() || !o.force_svg.empty()) {
        const auto forces = force_field(upper, lower, scene, o.execution());
        if (!o.csv.empty()) write_force_csv(upper, forces, m, o.csv);
        if (!o.force_svg.empty()) write_force_svg(upper, forces, o.force_svg);
    }

    const double abs_sum = m.abs_sum();
    out << "elements: " << upper.size() << " acted on, " << lower.size() << " source\n";
    out << "total moment: " << fmt_num(m.total) << '\n';
    out << "per-element abs sum: " << fmt_num(abs_sum) << '\n';
    out << "relative magnitude: " << fmt_num(abs_sum > 0 ? std::abs(m.total) / abs_sum : 0.0, "%.3e")
        << '\n';
    out << "sign: " << sign << " (" << direction_of(sign) << ")\n";
    return kOk;
}

void print_distribution(const SignDistribution& dist, std::ostream& out) {
    out << "sections: " << dist.sections.size() << '\n';
    for (const Section& s : dist.sections) {
        out << "  " << fmt_num(s.start_angle, "%g") << "° .. " << fmt_num(s.end_angle, "%g")
            << "°  sign " << (s.sign > 0 ? "+" : "-") << '\n';
    }
    out << "convergence:";
    if (dist.convergence.empty()) out << " none";
    for (const AngleRange& r : dist.convergence) out << ' ' << format_range(r);
    out << '\n';
    out << "oscillating angles:";
    if (dist.oscillating_angles.empty()) out << " none";
    for (double a : dist.oscillating_angles) out << ' ' << fmt_num(a, "%g") << "°";
    out << '\n';
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const GrayImage original = load_image(o.input);
    const SignDistribution dist = sweep_moment_signs(original, o.sweep());
    if (!o.csv.empty()) write_sign_csv(dist, o.csv);
    if (!o.bar_svg.empty()) write_text_file(o.bar_svg, sign_bar_svg(dist));
    if (!o.pie_svg.empty()) write_text_file(o.pie_svg, sign_pie_svg(dist));
    print_distribution(dist, out);
    return kOk;
}

int cmd_match(const Options& o, std::ostream& out, std::ostream& err) {
    const GrayImage original = load_image(o.input);
    const GrayImage rotated = load_image(o.second);
    if (!original.same_size(rotated)) throw std::invalid_argument("images must share dimensions");

    const MatchResult r = match_rotation(original, rotated, o.match());
    if (!o.trajectory.empty()) write_trajectory_csv(r, o.trajectory);

    out << "iterations: " << r.trajectory.size() << '\n';
    if (!r.converged) {
        err << "error: no balance reached within " << o.max_iterations << " iterations\n";
        return kNotConverged;
    }
    if (r.balance_kind == BalanceKind::local) {
        err << "error: stalled at a local balance near oscillating angle "
            << fmt_num(*r.local_balance_angle, "%g")
            << "°; the rotation lies outside the convergence range\n";
        return kLocalBalance;
    }
    out << "estimated rotation: " << fmt_num(r.correction(), "%.6g") << " deg clockwise\n";
    return kOk;
}

int cmd_rotate(const Options& o, std::ostream& out) {
    const GrayImage img = load_image(o.input);
    save_image(rotate_image(img, {o.angle, std::nullopt, o.fill}), o.output);
    out << "wrote " << o.output << '\n';
    return kOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
    const Vec2 c{(o.size - 1) / 2.0 + o.offset_x, (o.size - 1) / 2.0 + o.offset_y};
    GrayImage img(o.size, o.size);
    if (o.shape == "rectangle") {
        img = synthetic::rectangle(o.size, o.size, c, o.half_width, o.half_height, o.angle);
    } else if (o.shape == "ellipse") {
        img = synthetic::ellipse(o.size, o.size, c, o.half_width, o.half_height, o.angle);
    } else {
        throw std::invalid_argument("unknown shape '" + o.shape + "'");
    }
    save_image(img, o.output);
    out << "wrote " << o.output << '\n';
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Rotation matching of images by virtual electromagnetic interaction", "emmatch"};
    app.set_config("--config", "", "key=value file with defaults for any root flag");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--threshold-percent", o.threshold_percent,
                   "Edge threshold as a fraction of the maximum gradient magnitude")
        ->capture_default_str();
    app.add_flag("--quantize,!--no-quantize", o.quantize,
                 "Snap current directions to 8 compass directions (default on)");
    app.add_option("--z-separation", o.z_separation, "Distance between the two image planes")
        ->capture_default_str();
    app.add_option("--force-constant", o.force_constant, "Force constant A")->capture_default_str();
    app.add_option("--min-distance", o.min_distance, "Pairs closer than this are skipped")
        ->capture_default_str();
    app.add_option("--intervals", o.intervals, "Equal angle intervals over 360 degrees")
        ->capture_default_str();
    app.add_option("--step-degrees", o.step_degrees, "Matcher turn per iteration")
        ->capture_default_str();
    app.add_option("--max-iterations", o.max_iterations, "Matcher iteration budget")
        ->capture_default_str();
    app.add_option("--oscillation-window", o.oscillation_window,
                   "Alternating signs in a row that count as balance")
        ->capture_default_str();
    app.add_option("--zero-band", o.zero_band, "|moment| at or below this records sign 0")
        ->capture_default_str();
    app.add_flag("--classify,!--no-classify", o.classify,
                 "Sweep the original to tell origin from local balance (default on)");
    app.add_option("--fill", o.fill, "Intensity for samples outside the frame")->capture_default_str();
    app.add_flag("--mask-circle", o.mask_circle, "Zero everything outside the inscribed circle");
    app.add_flag("--deterministic,!--no-deterministic", o.deterministic,
                 "Fixed summation order (default on); --no-deterministic enables OpenMP kernels");
    app.add_option("--threads", o.threads, "Worker cap for parallel mode (0 = runtime default)")
        ->capture_default_str();

    auto* edges = app.add_subcommand("edges", "Extract significant edges and virtual currents");
    edges->add_option("input", o.input, "Input image (PGM/PPM)")->required();
    edges->add_option("--edge-map", o.edge_map, "Write the edge map as PGM");
    edges->add_option("--current-svg", o.current_svg, "Write the current field as SVG");

    auto* moment = app.add_subcommand("moment", "Total moment on ROTATED from ORIGINAL");
    moment->add_option("original", o.input)->required();
    moment->add_option("rotated", o.second)->required();
    moment->add_option("--csv", o.csv, "Per-element x,y,tx,ty,fx,fy,moment");
    moment->add_option("--force-svg", o.force_svg, "Force field as SVG");

    auto* sweep = app.add_subcommand("sweep", "Moment sign over all rotation intervals");
    sweep->add_option("original", o.input)->required();
    sweep->add_option("--csv", o.csv, "Samples as angle_deg,moment,sign");
    sweep->add_option("--bar-svg", o.bar_svg, "Sign-vs-interval diagram");
    sweep->add_option("--pie-svg", o.pie_svg, "Circular section diagram");

    auto* match = app.add_subcommand("match", "Turn ROTATED back onto ORIGINAL by the moment sign");
    match->add_option("original", o.input)->required();
    match->add_option("rotated", o.second)->required();
    match->add_option("--trajectory", o.trajectory, "iteration,angle_deg,moment,sign");

    auto* rotate = app.add_subcommand("rotate", "Rotate an image clockwise about its center");
    rotate->add_option("input", o.input)->required();
    rotate->add_option("output", o.output)->required();
    rotate->add_option("--angle", o.angle, "Degrees, clockwise on screen")->required();

    auto* synth = app.add_subcommand("synth", "Render a synthetic test shape");
    synth->add_option("output", o.output)->required();
    synth->add_option("--shape", o.shape, "rectangle or ellipse")->capture_default_str();
    synth->add_option("--size", o.size, "Square image size")->capture_default_str();
    synth->add_option("--half-width", o.half_width)->capture_default_str();
    synth->add_option("--half-height", o.half_height)->capture_default_str();
    synth->add_option("--offset-x", o.offset_x, "Shape center relative to the image center")
        ->capture_default_str();
    synth->add_option("--offset-y", o.offset_y)->capture_default_str();
    synth->add_option("--angle", o.angle, "Clockwise turn of the shape")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    if (o.threads > 0) {
        kernels::set_default_threads(o.threads);
#ifdef _OPENMP
        omp_set_num_threads(o.threads);
#endif
    }

    try {
        if (*edges) return cmd_edges(o, out);
        if (*moment) return cmd_moment(o, out);
        if (*sweep) return cmd_sweep(o, out);
        if (*match) return cmd_match(o, out, err);
        if (*rotate) return cmd_rotate(o, out);
        if (*synth) return cmd_synth(o, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const DegenerateInputError& e) {
        err << "error: " << e.what() << '\n';
        return kDegenerateInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace emmatch::cli
