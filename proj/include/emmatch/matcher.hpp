#pragma once

#include <emmatch/analysis.hpp>
#include <emmatch/edge_current.hpp>
#include <emmatch/em_field.hpp>
#include <emmatch/raster.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

namespace emmatch {

struct MatchParams {
    double step = 1.0;           // degrees turned per iteration
    int max_iterations = 720;
    int oscillation_window = 4;  // this many alternating signs in a row count as balance
    double zero_band = 0.0;
    SceneConfig scene;
    EdgeParams edge;
    double fill = 0.0;
    bool mask_circle = false;
    /// Resolution of the reference sweep used to tell the origin balance from
    /// a local one. 0 skips the sweep and reports every balance as origin.
    int classify_intervals = 120;
    Execution execution = Execution::deterministic;

    void validate() const;
};

struct TrajectoryEntry {
    int iteration = 0;
    double angle = 0.0;   // clockwise turn applied to the rotated input, [0, 360)
    double moment = 0.0;  // total moment measured at that turn
    int sign = 0;
};

enum class BalanceKind { none, origin, local };

const char* to_string(BalanceKind kind);

struct MatchResult {
    std::vector<TrajectoryEntry> trajectory;
    /// Turn at the balance point, in [0, 360). For an oscillation this is the
    /// midpoint of the last two trajectory angles.
    double final_angle = 0.0;
    bool converged = false;
    BalanceKind balance_kind = BalanceKind::none;
    /// Deviation from the original at which a local balance sits: the nearest
    /// oscillating angle, or the best-matching sweep angle when none is close.
    std::optional<double> local_balance_angle;
    /// Interior balance points of the original's reference sweep.
    std::vector<double> oscillating_angles;

    /// Estimated clockwise rotation of the input relative to the original.
    double correction() const { return normalize_degrees(-final_angle); }
};

class MatchError : public std::runtime_error {
public:
    MatchError(const std::string& what, MatchResult result)
        : std::runtime_error(what), result_(std::move(result)) {}
    const MatchResult& result() const { return result_; }

private:
    MatchResult result_;
};

/// Turns `rotated` step by step in the direction its total moment commands
/// (negative: counterclockwise, positive: clockwise) until the signs
/// oscillate, the moment vanishes, or the iteration budget runs out.
///
/// Each iterate is a single rotation of the pristine `rotated` input by the
/// accumulated turn. `reference` is the original's sign distribution; it is
/// swept on demand when omitted and classify_intervals > 0.
MatchResult match_rotation(const GrayImage& original, const GrayImage& rotated,
                           const MatchParams& params,
                           const SignDistribution* reference = nullptr);

/// Clockwise rotation of `rotated` relative to `original`, in [0, 360).
/// Throws MatchError unless the matcher settles at the origin balance.
double estimate_rotation(const GrayImage& original, const GrayImage& rotated,
                         const MatchParams& params);

/// Header `iteration,angle_deg,moment,sign`.
void write_trajectory_csv(const MatchResult& result, const std::filesystem::path& path);

}  // namespace emmatch
