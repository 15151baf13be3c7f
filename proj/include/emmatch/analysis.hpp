#pragma once

#include <emmatch/edge_current.hpp>
#include <emmatch/em_field.hpp>
#include <emmatch/raster.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace emmatch {

/// Moments below this fraction of sum|per-element| carry no usable sign:
/// they are rounding noise of an exactly balanced configuration.
inline constexpr double kRelativeNoiseFloor = 1e-9;

/// Sign of a total moment, 0 when |moment| <= max(zero_band, noise floor).
int moment_sign(double moment, double abs_sum, double zero_band);

/// Runs "turn an image, extract its currents, take the moment against the
/// original" with the original's current set computed once.
///
/// The original sits on z = 0 and the turned image on z = z_separation. The
/// turned image is the acted-on set, its moment taken about the grid center.
class MomentProbe {
public:
    struct Options {
        EdgeParams edge;
        SceneConfig scene;
        double fill = 0.0;
        bool mask_circle = false;
        Execution execution = Execution::deterministic;
    };

    MomentProbe(const GrayImage& original, Options options);

    /// Moment on `working` (same size as the original) from the original.
    /// Throws DegenerateInputError when `working` has no current elements.
    MomentResult measure(const GrayImage& working) const;

    /// Moment on rotate(source, angle) from the original; `source` defaults to
    /// the original itself.
    MomentResult measure_rotated(double angle_deg) const;
    MomentResult measure_rotated(const GrayImage& source, double angle_deg) const;

    const CurrentSet& original_currents() const { return original_set_; }
    const GrayImage& original() const { return original_; }
    const Options& options() const { return options_; }

    /// Applies the configured circular mask (if any).
    GrayImage prepare(const GrayImage& img) const;

private:
    GrayImage original_;
    Options options_;
    CurrentSet original_set_;
};

struct SweepParams {
    int intervals = 120;
    SceneConfig scene;       // scene.z_separation is the plane distance d
    double zero_band = 0.0;  // |moment| <= zero_band records sign 0
    EdgeParams edge;
    double fill = 0.0;
    bool mask_circle = false;
    Execution execution = Execution::deterministic;

    void validate() const;
    double step() const { return 360.0 / intervals; }
};

/// Maximal run of equal nonzero sign. Zero entries are skipped over.
struct Section {
    std::size_t first_index = 0;
    std::size_t last_index = 0;
    double start_angle = 0.0;  // angle of the first sample in the run
    double end_angle = 0.0;    // angle of the last sample in the run
    int sign = 0;
};

/// Range of deviation angles. lo == 0 reads as "(0, hi]", hi == 360 as
/// "[lo, 360)", and {0, 360} as the full circle "(0, 360)".
struct AngleRange {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const AngleRange&) const = default;
};

std::string format_range(const AngleRange& r);

struct SignDistribution {
    double step = 3.0;
    std::vector<double> angles;   // i*step for i = 1..intervals
    std::vector<double> moments;
    std::vector<int> signs;
    std::vector<Section> sections;
    std::vector<AngleRange> convergence;
    std::vector<double> oscillating_angles;

    std::size_t intervals() const { return angles.size(); }
};

/// Builds sections, convergence ranges and oscillating angles from raw samples.
/// `angles` must be i*step for i = 1..n.
SignDistribution assemble_distribution(std::vector<double> angles, std::vector<double> moments,
                                       std::vector<int> signs);

std::vector<Section> decompose_sections(const std::vector<double>& angles,
                                        const std::vector<int>& signs);

/// Rotates the original clockwise through every interval and records the sign
/// of the total moment on the rotated image.
SignDistribution sweep_moment_signs(const GrayImage& original, const SweepParams& params);

/// First (negative) and last (positive) sections as restoring ranges around
/// 0 degrees. Two sections (-, +) give the full circle. Returns nothing when
/// 0 degrees is not a restoring balance.
std::vector<AngleRange> detect_convergence(const SignDistribution& dist);

/// Boundaries between consecutive sections signed (+, -): both sides push
/// toward them. Boundaries next to the 0/360 wrap are not reported.
std::vector<double> detect_oscillating_angles(const SignDistribution& dist);

/// Follows the sign flow from the sample nearest `start_deg` to the balance it
/// drains into. Returns the balance angle in [0, 360), or nothing when the flow
/// never settles (single-signed distribution).
std::optional<double> predict_balance(const SignDistribution& dist, double start_deg);

enum class DiagramStyle { bar, pie };

/// Writes the diagram as SVG to `path` and the samples as CSV next to it
/// (same stem, .csv extension).
void export_sign_diagram(const SignDistribution& dist, const std::filesystem::path& path,
                         DiagramStyle style);

/// CSV with header `angle_deg,moment,sign`, one row per interval.
void write_sign_csv(const SignDistribution& dist, const std::filesystem::path& path);
SignDistribution read_sign_csv(const std::filesystem::path& path);

}  // namespace emmatch
