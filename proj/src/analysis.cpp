#include <emmatch/analysis.hpp>

#include <emmatch/errors.hpp>
#include <emmatch/visual.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace emmatch {

int moment_sign(double moment, double abs_sum, double zero_band) {
    const double floor = std::max(zero_band, kRelativeNoiseFloor * abs_sum);
    if (std::abs(moment) <= floor) return 0;
    return moment > 0.0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// MomentProbe
// ---------------------------------------------------------------------------

MomentProbe::MomentProbe(const GrayImage& original, Options options)
    : original_(original), options_(std::move(options)) {
    options_.edge.validate();
    options_.scene.validate();
    original_set_ = extract_currents(prepare(original_), options_.edge, 0.0);
    if (original_set_.empty()) {
        throw DegenerateInputError("empty current set: the original image has no significant edges");
    }
}

GrayImage MomentProbe::prepare(const GrayImage& img) const {
    return options_.mask_circle ? mask_circle(img, options_.fill) : img;
}

MomentResult MomentProbe::measure(const GrayImage& working) const {
    if (!working.same_size(original_)) {
        throw std::invalid_argument("images must share dimensions");
    }
    const CurrentSet set =
        extract_currents(prepare(working), options_.edge, options_.scene.z_separation);
    if (set.empty()) {
        throw DegenerateInputError("empty current set: the working image has no significant edges");
    }
    return total_moment(set, original_set_, options_.scene, options_.execution);
}

MomentResult MomentProbe::measure_rotated(double angle_deg) const {
    return measure_rotated(original_, angle_deg);
}

MomentResult MomentProbe::measure_rotated(const GrayImage& source, double angle_deg) const {
    const GrayImage turned = rotate_image(source, {angle_deg, std::nullopt, options_.fill});
    try {
        return measure(turned);
    } catch (const DegenerateInputError&) {
        std::ostringstream msg;
        msg << "empty current set at rotation angle " << angle_deg << " deg";
        throw DegenerateInputError(msg.str());
    }
}

// ---------------------------------------------------------------------------
// Sign distribution
// ---------------------------------------------------------------------------

void SweepParams::validate() const {
    if (intervals < 4) throw std::invalid_argument("intervals must be at least 4");
    if (zero_band < 0.0) throw std::invalid_argument("zero_band must be non-negative");
    edge.validate();
    scene.validate();
}

std::string format_range(const AngleRange& r) {
    char buf[96];
    if (r.lo <= 0.0 && r.hi >= 360.0) {
        std::snprintf(buf, sizeof buf, "(0°, 360°)");
    } else if (r.lo <= 0.0) {
        std::snprintf(buf, sizeof buf, "(0°, %g°]", r.hi);
    } else {
        std::snprintf(buf, sizeof buf, "[%g°, %g°)", r.lo, r.hi);
    }
    return buf;
}

std::vector<Section> decompose_sections(const std::vector<double>& angles,
                                        const std::vector<int>& signs) {
    std::vector<Section> sections;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] == 0) continue;
        if (!sections.empty() && sections.back().sign == signs[i]) {
            sections.back().last_index = i;
            sections.back().end_angle = angles[i];
        } else {
            sections.push_back({i, i, angles[i], angles[i], signs[i]});
        }
    }
    return sections;
}

std::vector<AngleRange> detect_convergence(const SignDistribution& dist) {
    const auto& s = dist.sections;
    if (s.empty()) {
        std::clog << "warning: sign distribution has no nonzero moment; no convergence range\n";
        return {};
    }
    if (s.size() < 2 || s.front().sign != -1 || s.back().sign != 1) return {};
    if (s.size() == 2) return {{0.0, 360.0}};
    // Sample i stands for the interval ((i-1)*step, i*step].
    return {{0.0, s.front().end_angle}, {s.back().start_angle - dist.step, 360.0}};
}

std::vector<double> detect_oscillating_angles(const SignDistribution& dist) {
    std::vector<double> out;
    const auto& s = dist.sections;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i].sign != 1 || s[i + 1].sign != -1) continue;
        if (s[i + 1].start_angle >= 360.0 - 1e-9) continue;  // origin balance seen from the left
        out.push_back(0.5 * (s[i].end_angle + s[i + 1].start_angle));
    }
    return out;
}

std::optional<double> predict_balance(const SignDistribution& dist, double start_deg) {
    const std::size_t n = dist.signs.size();
    if (n == 0) return std::nullopt;
    const double step = dist.step;

    auto k = static_cast<long>(std::lround(normalize_degrees(start_deg) / step)) - 1;
    if (k < 0) k += static_cast<long>(n);
    std::size_t i = static_cast<std::size_t>(k) % n;

    for (std::size_t walked = 0; walked <= n; ++walked) {
        const int s = dist.signs[i];
        if (s == 0) return normalize_degrees(dist.angles[i]);
        const std::size_t next = s > 0 ? (i + 1) % n : (i + n - 1) % n;
        const int t = dist.signs[next];
        if (t == 0) return normalize_degrees(dist.angles[next]);
        if (t != s) {
            const bool across_wrap = (i == n - 1 && next == 0) || (i == 0 && next == n - 1);
            return across_wrap ? 0.0 : normalize_degrees(dist.angles[i] + s * step / 2.0);
        }
        i = next;
    }
    return std::nullopt;
}

SignDistribution assemble_distribution(std::vector<double> angles, std::vector<double> moments,
                                       std::vector<int> signs) {
    if (angles.size() != moments.size() || angles.size() != signs.size() || angles.empty()) {
        throw std::invalid_argument("assemble_distribution: inconsistent sample vectors");
    }
    SignDistribution dist;
    dist.step = 360.0 / static_cast<double>(angles.size());
    dist.angles = std::move(angles);
    dist.moments = std::move(moments);
    dist.signs = std::move(signs);
    dist.sections = decompose_sections(dist.angles, dist.signs);
    dist.convergence = detect_convergence(dist);
    dist.oscillating_angles = detect_oscillating_angles(dist);
    return dist;
}

SignDistribution sweep_moment_signs(const GrayImage& original, const SweepParams& params) {
    params.validate();
    [[maybe_unused]] const bool parallel = params.execution == Execution::parallel;
    // Angles are spread across threads; each entry runs the serial kernel, so
    // every entry is bit-identical to the deterministic sweep.
    const MomentProbe probe(original, {params.edge, params.scene, params.fill, params.mask_circle,
                                       Execution::deterministic});

    const int n = params.intervals;
    const double step = params.step();
    std::vector<double> angles(n);
    std::vector<double> moments(n);
    std::vector<int> signs(n);
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (int i = 0; i < n; ++i) {
        const double angle = (i + 1) * step;
        angles[i] = angle;
        try {
            const MomentResult m = probe.measure_rotated(angle);
            moments[i] = m.total;
            signs[i] = moment_sign(m.total, m.abs_sum(), params.zero_band);
        } catch (...) {
#pragma omp critical(emmatch_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    return assemble_distribution(std::move(angles), std::move(moments), std::move(signs));
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

void write_sign_csv(const SignDistribution& dist, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "angle_deg,moment,sign\n";
    char buf[128];
    for (std::size_t i = 0; i < dist.angles.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.17g,%d\n", dist.angles[i], dist.moments[i],
                      dist.signs[i]);
        out << buf;
    }
    write_text_file(path, out.str());
}

SignDistribution read_sign_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("angle_deg,moment,sign", 0) != 0) {
        throw IoError(path.string() + ": missing header angle_deg,moment,sign");
    }
    std::vector<double> angles, moments;
    std::vector<int> signs;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        double a = 0.0, m = 0.0;
        int s = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%d", &a, &m, &s) != 3 || s < -1 || s > 1) {
            throw IoError(path.string() + ": malformed row '" + line + "'");
        }
        angles.push_back(a);
        moments.push_back(m);
        signs.push_back(s);
    }
    if (angles.empty()) throw IoError(path.string() + ": no samples");
    return assemble_distribution(std::move(angles), std::move(moments), std::move(signs));
}

void export_sign_diagram(const SignDistribution& dist, const std::filesystem::path& path,
                         DiagramStyle style) {
    write_text_file(path, style == DiagramStyle::bar ? sign_bar_svg(dist) : sign_pie_svg(dist));
    std::filesystem::path csv = path;
    csv.replace_extension(".csv");
    write_sign_csv(dist, csv);
}

}  // namespace emmatch
