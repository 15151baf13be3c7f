#include "support.hpp"

#include <emmatch/analysis.hpp>
#include <emmatch/errors.hpp>
#include <emmatch/synthetic.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace emmatch;

namespace {

const auto kDir = testsupport::scratch_dir("analysis");

// Distribution over n intervals from a list of (count, sign) runs.
SignDistribution from_runs(std::initializer_list<std::pair<int, int>> runs) {
    std::vector<int> signs;
    for (auto [count, sign] : runs) signs.insert(signs.end(), count, sign);
    const double step = 360.0 / signs.size();
    std::vector<double> angles, moments;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        angles.push_back((i + 1) * step);
        moments.push_back(signs[i] * (1.0 + i));
    }
    return assemble_distribution(std::move(angles), std::move(moments), std::move(signs));
}

void check_partition(const SignDistribution& d) {
    std::vector<int> owner(d.signs.size(), -1);
    for (std::size_t s = 0; s < d.sections.size(); ++s) {
        const Section& sec = d.sections[s];
        CHECK(sec.sign != 0);
        CHECK(sec.start_angle == d.angles[sec.first_index]);
        CHECK(sec.end_angle == d.angles[sec.last_index]);
        CHECK(d.signs[sec.first_index] == sec.sign);
        CHECK(d.signs[sec.last_index] == sec.sign);
        if (s > 0) {
            CHECK(d.sections[s - 1].sign == -sec.sign);
            CHECK(d.sections[s - 1].last_index < sec.first_index);
        }
        for (std::size_t i = sec.first_index; i <= sec.last_index; ++i) {
            CHECK((d.signs[i] == 0 || d.signs[i] == sec.sign));
            if (d.signs[i] != 0) {
                CHECK(owner[i] == -1);
                owner[i] = static_cast<int>(s);
            }
        }
    }
    for (std::size_t i = 0; i < d.signs.size(); ++i) CHECK((d.signs[i] == 0) == (owner[i] == -1));
}

}  // namespace

TEST_CASE("moment_sign noise floor") {
    CHECK(moment_sign(-3.0, 10.0, 0.0) == -1);
    CHECK(moment_sign(3.0, 10.0, 0.0) == 1);
    CHECK(moment_sign(0.0, 10.0, 0.0) == 0);
    CHECK(moment_sign(5e-10, 1.0, 0.0) == 0);
    CHECK(moment_sign(5e-9, 1.0, 0.0) == 1);
    CHECK(moment_sign(2.0, 10.0, 2.0) == 0);
    CHECK(moment_sign(-2.5, 10.0, 2.0) == -1);
}

TEST_CASE("convergence ranges") {
    SUBCASE("leading and trailing runs of 7") {
        const auto d = from_runs({{7, -1}, {53, 1}, {53, -1}, {7, 1}});
        REQUIRE(d.convergence.size() == 2);
        CHECK(format_range(d.convergence[0]) == "(0°, 21°]");
        CHECK(format_range(d.convergence[1]) == "[339°, 360°)");
    }
    SUBCASE("two halves cover the circle") {
        const auto d = from_runs({{60, -1}, {60, 1}});
        REQUIRE(d.convergence.size() == 1);
        CHECK(d.convergence[0] == AngleRange{0.0, 360.0});
        CHECK(format_range(d.convergence[0]) == "(0°, 360°)");
    }
    SUBCASE("all positive restores nothing") {
        CHECK(from_runs({{120, 1}}).convergence.empty());
        CHECK(from_runs({{120, 0}}).convergence.empty());
        CHECK(from_runs({{60, 1}, {60, -1}}).convergence.empty());
    }
    SUBCASE("zeros inside a run are transparent") {
        const auto d = from_runs({{3, -1}, {1, 0}, {56, -1}, {60, 1}});
        CHECK(d.sections.size() == 2);
        CHECK(format_range(d.convergence.at(0)) == "(0°, 360°)");
    }
}

TEST_CASE("oscillating angles") {
    CHECK(from_runs({{60, -1}, {60, 1}}).oscillating_angles.empty());
    const auto four = from_runs({{7, -1}, {53, 1}, {53, -1}, {7, 1}});
    REQUIRE(four.oscillating_angles.size() == 1);
    CHECK(four.oscillating_angles[0] == doctest::Approx(181.5));
    const auto eight = from_runs({{15, -1}, {15, 1}, {15, -1}, {15, 1}, {15, -1}, {15, 1}, {15, -1}, {15, 1}});
    CHECK(eight.oscillating_angles.size() == 3);
    // The (+, -) boundary at 180 counts; the (-, +) one across the wrap is the origin.
    const auto flipped = from_runs({{60, 1}, {60, -1}});
    REQUIRE(flipped.oscillating_angles.size() == 1);
    CHECK(flipped.oscillating_angles[0] == doctest::Approx(181.5));
}

TEST_CASE("sections partition the nonzero samples") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> sign(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> angles, moments;
        std::vector<int> signs;
        for (int i = 1; i <= 40; ++i) {
            angles.push_back(9.0 * i);
            signs.push_back(sign(rng));
            moments.push_back(signs.back());
        }
        check_partition(assemble_distribution(angles, moments, signs));
    }
}

TEST_CASE("every nonzero sample drains to a balance") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> sign(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> signs{-1};
        for (int i = 0; i < 38; ++i) signs.push_back(sign(rng));
        signs.push_back(1);
        std::vector<double> angles, moments;
        for (std::size_t i = 0; i < signs.size(); ++i) {
            angles.push_back(9.0 * (i + 1));
            moments.push_back(signs[i]);
        }
        const auto d = assemble_distribution(angles, moments, signs);
        for (std::size_t i = 0; i < signs.size(); ++i) {
            if (signs[i] == 0) continue;
            const auto b = predict_balance(d, angles[i]);
            REQUIRE(b.has_value());
            const bool to_origin = *b == 0.0;
            const bool to_oscillating = std::find(d.oscillating_angles.begin(), d.oscillating_angles.end(),
                                                  *b) != d.oscillating_angles.end();
            // A zero sample is a balance of its own (a boundary point).
            bool to_zero_sample = false;
            for (std::size_t k = 0; k < signs.size(); ++k) to_zero_sample |= signs[k] == 0 && angles[k] == *b;
            CHECK((to_origin || to_oscillating || to_zero_sample));
            // Inside a convergence range means draining to the origin. The
            // trailing range opens one step before its first sample.
            for (const AngleRange& r : d.convergence) {
                const bool inside = (r.lo == 0.0 && angles[i] <= r.hi) || (r.hi == 360.0 && angles[i] > r.lo);
                if (inside) CHECK((to_origin || to_zero_sample));
            }
        }
    }
}

TEST_CASE("predict_balance on a four-section layout") {
    const auto d = from_runs({{7, -1}, {53, 1}, {53, -1}, {7, 1}});
    CHECK(predict_balance(d, 10.0) == 0.0);
    CHECK(predict_balance(d, 350.0) == 0.0);
    CHECK(predict_balance(d, 100.0) == doctest::Approx(181.5));
    CHECK(predict_balance(d, 250.0) == doctest::Approx(181.5));
    CHECK_FALSE(predict_balance(from_runs({{120, 1}}), 30.0).has_value());
}

TEST_CASE("sign CSV and diagrams") {
    const auto d = from_runs({{60, -1}, {60, 1}});
    export_sign_diagram(d, kDir / "pie.svg", DiagramStyle::pie);
    export_sign_diagram(d, kDir / "bar.svg", DiagramStyle::bar);
    const std::string pie = testsupport::slurp(kDir / "pie.svg");
    CHECK(pie.rfind("<svg", 0) == 0);
    CHECK(pie.find("valid") != std::string::npos);
    CHECK(testsupport::slurp(kDir / "bar.svg").rfind("<svg", 0) == 0);

    const std::string csv = testsupport::slurp(kDir / "pie.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 121);
    CHECK(csv.rfind("angle_deg,moment,sign\n", 0) == 0);

    const auto back = read_sign_csv(kDir / "pie.csv");
    CHECK(back.signs == d.signs);
    CHECK(back.moments == d.moments);
    CHECK(back.angles == d.angles);
    CHECK(back.convergence == d.convergence);

    testsupport::write_bytes(kDir / "broken.csv", "angle_deg,moment,sign\n3,x,1\n");
    CHECK_THROWS_AS(read_sign_csv(kDir / "broken.csv"), IoError);
}

TEST_CASE("sweep entries equal standalone pipeline runs") {
    const GrayImage img = testsupport::offcenter_rectangle(3.0, -6.0, 32);
    SweepParams p;
    p.intervals = 24;
    p.scene.z_separation = 4.0;
    const SignDistribution d = sweep_moment_signs(img, p);
    REQUIRE(d.intervals() == 24);
    const CurrentSet lower = extract_currents(img, p.edge, 0.0);
    for (std::size_t i = 0; i < d.intervals(); ++i) {
        CHECK(d.angles[i] == 15.0 * (i + 1));
        const GrayImage rot = rotate_image(img, {d.angles[i]});
        const CurrentSet upper = extract_currents(rot, p.edge, 4.0);
        const MomentResult m = total_moment(upper, lower, p.scene);
        CHECK(d.moments[i] == m.total);
        CHECK(d.signs[i] == moment_sign(m.total, m.abs_sum(), 0.0));
    }
    p.execution = Execution::parallel;
    const SignDistribution par = sweep_moment_signs(img, p);
    CHECK(par.moments == d.moments);
}

TEST_CASE("centered rectangle: 30 degrees is negative in the sweep") {
    SweepParams p;
    p.intervals = 12;
    const SignDistribution d = sweep_moment_signs(testsupport::centered_rectangle(32), p);
    CHECK(d.angles[0] == 30.0);
    CHECK(d.signs[0] == -1);
}

TEST_CASE("masked symmetric shape: signs mirror about 180") {
    for (double dz : {0.0, 10.0}) {
        SweepParams p;
        p.intervals = 120;
        p.mask_circle = true;
        p.scene.z_separation = dz;
        const SignDistribution d = sweep_moment_signs(testsupport::centered_rectangle(32), p);
        const std::size_t n = d.intervals();
        int compared = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const std::size_t j = n - 2 - i;  // angle 360 - angles[i]
            REQUIRE(d.angles[i] + d.angles[j] == doctest::Approx(360.0));
            if (d.signs[i] == 0 || d.signs[j] == 0) continue;
            CHECK(d.signs[i] == -d.signs[j]);
            ++compared;
        }
        CHECK(compared > 60);
    }
}

TEST_CASE("sweep failures name the angle") {
    CHECK_THROWS_AS(sweep_moment_signs(GrayImage(16, 16, 40.0), {}), DegenerateInputError);
    GrayImage corner(32, 32, 0.0);
    for (int y = 1; y < 4; ++y)
        for (int x = 1; x < 4; ++x) corner.at(x, y) = 255.0;
    SweepParams p;
    p.intervals = 8;
    try {
        sweep_moment_signs(corner, p);
        FAIL("expected a degenerate input error");
    } catch (const DegenerateInputError& e) {
        CHECK(std::string(e.what()).find("rotation angle") != std::string::npos);
    }
    p.intervals = 3;
    CHECK_THROWS_AS(sweep_moment_signs(testsupport::centered_rectangle(32), p), std::invalid_argument);
}
