#include <emmatch/matcher.hpp>

#include <emmatch/visual.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace emmatch {

void MatchParams::validate() const {
    if (!(step > 0.0 && step <= 90.0)) throw std::invalid_argument("step must lie in (0, 90]");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
    if (oscillation_window < 2) throw std::invalid_argument("oscillation_window must be at least 2");
    if (zero_band < 0.0) throw std::invalid_argument("zero_band must be non-negative");
    if (classify_intervals != 0 && classify_intervals < 4) {
        throw std::invalid_argument("classify_intervals must be 0 or at least 4");
    }
    edge.validate();
    scene.validate();
}

const char* to_string(BalanceKind kind) {
    switch (kind) {
        case BalanceKind::origin: return "origin";
        case BalanceKind::local: return "local";
        case BalanceKind::none: break;
    }
    return "none";
}

namespace {

bool tail_alternates(const std::vector<TrajectoryEntry>& t, int window) {
    if (t.size() < static_cast<std::size_t>(window)) return false;
    for (std::size_t i = t.size() - window + 1; i < t.size(); ++i) {
        if (t[i].sign == 0 || t[i].sign != -t[i - 1].sign) return false;
    }
    return true;
}

double circular_midpoint(double a, double b) {
    double d = normalize_degrees(b - a);
    if (d > 180.0) d -= 360.0;
    return normalize_degrees(a + d / 2.0);
}

double circular_distance(double a, double b) {
    const double d = normalize_degrees(a - b);
    return std::min(d, 360.0 - d);
}

// Which balance the matcher sits at: find the deviation whose rotated original
// looks most like the working image, over every angle of the reference sweep.
// Near 0 is the origin; anything else is a local balance, named after the
// nearest oscillating angle when one is close.
void classify_balance(const MomentProbe& probe, const GrayImage& rotated,
                      const SignDistribution& reference, MatchResult& result) {
    const GrayImage& original = probe.original();
    const double fill = probe.options().fill;
    const GrayImage working = rotate_image(rotated, {result.final_angle, std::nullopt, fill});

    // Nearest-to-zero first, so exact ties (symmetric shapes) favor the origin.
    std::vector<double> candidates;
    for (double h : reference.angles) {
        if (normalize_degrees(h) != 0.0) candidates.push_back(normalize_degrees(h));
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](double x, double y) {
        return circular_distance(x, 0.0) < circular_distance(y, 0.0);
    });

    double best_score = mean_abs_diff_in_circle(working, original);
    double best_angle = 0.0;
    for (double a : candidates) {
        const double score =
            mean_abs_diff_in_circle(working, rotate_image(original, {a, std::nullopt, fill}));
        if (score < best_score - 1e-9) {
            best_score = score;
            best_angle = a;
        }
    }

    const double tolerance = 2.0 * reference.step;
    if (circular_distance(best_angle, 0.0) <= tolerance) {
        result.balance_kind = BalanceKind::origin;
        return;
    }
    result.balance_kind = BalanceKind::local;
    result.local_balance_angle = best_angle;
    double nearest = tolerance;
    for (double osc : reference.oscillating_angles) {
        const double dist = circular_distance(osc, best_angle);
        if (dist <= nearest) {
            nearest = dist;
            result.local_balance_angle = osc;
        }
    }
}

}  // namespace

MatchResult match_rotation(const GrayImage& original, const GrayImage& rotated,
                           const MatchParams& params, const SignDistribution* reference) {
    params.validate();
    if (!original.same_size(rotated)) throw std::invalid_argument("images must share dimensions");

    const MomentProbe probe(original,
                            {params.edge, params.scene, params.fill, params.mask_circle,
                             params.execution});

    MatchResult result;
    double turn = 0.0;
    for (int it = 0; it < params.max_iterations; ++it) {
        const MomentResult m = probe.measure_rotated(rotated, turn);
        const int sign = moment_sign(m.total, m.abs_sum(), params.zero_band);
        result.trajectory.push_back({it, normalize_degrees(turn), m.total, sign});

        if (sign == 0) {
            result.converged = true;
            result.final_angle = normalize_degrees(turn);
            break;
        }
        if (tail_alternates(result.trajectory, params.oscillation_window)) {
            const auto& t = result.trajectory;
            result.converged = true;
            result.final_angle = circular_midpoint(t[t.size() - 2].angle, t.back().angle);
            break;
        }
        // Negative turns the picture counterclockwise, i.e. decreases the turn.
        turn = normalize_degrees(turn + sign * params.step);
    }
    if (!result.converged) {
        result.final_angle = result.trajectory.back().angle;
        return result;
    }

    SignDistribution swept;
    if (reference == nullptr && params.classify_intervals > 0) {
        SweepParams sp;
        sp.intervals = params.classify_intervals;
        sp.scene = params.scene;
        sp.zero_band = params.zero_band;
        sp.edge = params.edge;
        sp.fill = params.fill;
        sp.mask_circle = params.mask_circle;
        sp.execution = params.execution;
        swept = sweep_moment_signs(original, sp);
        reference = &swept;
    }
    if (reference == nullptr) {
        result.balance_kind = BalanceKind::origin;
        return result;
    }
    result.oscillating_angles = reference->oscillating_angles;
    classify_balance(probe, rotated, *reference, result);
    return result;
}

double estimate_rotation(const GrayImage& original, const GrayImage& rotated,
                         const MatchParams& params) {
    MatchResult result = match_rotation(original, rotated, params);
    if (!result.converged) {
        throw MatchError("no balance reached within " + std::to_string(params.max_iterations) +
                             " iterations",
                         std::move(result));
    }
    if (result.balance_kind == BalanceKind::local) {
        std::ostringstream msg;
        msg << "stalled at a local balance (oscillating angle " << *result.local_balance_angle
            << " deg); the rotation lies outside the convergence range";
        throw MatchError(msg.str(), std::move(result));
    }
    return result.correction();
}

void write_trajectory_csv(const MatchResult& result, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "iteration,angle_deg,moment,sign\n";
    char buf[128];
    for (const TrajectoryEntry& e : result.trajectory) {
        std::snprintf(buf, sizeof buf, "%d,%.10g,%.17g,%d\n", e.iteration, e.angle, e.moment,
                      e.sign);
        out << buf;
    }
    write_text_file(path, out.str());
}

}  // namespace emmatch
