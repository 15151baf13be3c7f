#include <emmatch/visual.hpp>

#include <emmatch/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

namespace emmatch {

namespace {

constexpr double kCell = 10.0;

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

// Deviation angle -> point on a circle: 0 at the top, increasing clockwise.
Vec2 on_circle(Vec2 c, double r, double deg) {
    const double t = deg_to_rad(deg);
    return {c.x + r * std::sin(t), c.y - r * std::cos(t)};
}

std::string arc_path(Vec2 c, double r, double from_deg, double to_deg) {
    const Vec2 a = on_circle(c, r, from_deg);
    const Vec2 b = on_circle(c, r, to_deg);
    const int large = (to_deg - from_deg) > 180.0 ? 1 : 0;
    return fmt("M %.3f %.3f A %.3f %.3f 0 %d 1 %.3f %.3f", a.x, a.y, r, r, large, b.x, b.y);
}

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

std::string vector_field_svg(int width, int height, const std::vector<VectorGlyph>& glyphs) {
    std::unordered_map<long, Vec2> at;
    for (const VectorGlyph& g : glyphs) {
        const long key = std::lround(g.pos.y) * width + std::lround(g.pos.x);
        at[key] = g.dir;
    }

    std::ostringstream svg;
    svg << fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
               "viewBox=\"0 0 %d %d\">\n",
               static_cast<int>(width * kCell), static_cast<int>(height * kCell),
               static_cast<int>(width * kCell), static_cast<int>(height * kCell));
    svg << "<defs><marker id=\"head\" markerWidth=\"4\" markerHeight=\"4\" refX=\"2\" refY=\"2\" "
           "orient=\"auto\"><path d=\"M0,0 L4,2 L0,4 z\" fill=\"black\"/></marker></defs>\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double cx = (x + 0.5) * kCell;
            const double cy = (y + 0.5) * kCell;
            const auto it = at.find(static_cast<long>(y) * width + x);
            if (it == at.end() || (it->second.x == 0.0 && it->second.y == 0.0)) {
                svg << fmt("<circle cx=\"%.1f\" cy=\"%.1f\" r=\"0.8\"/>\n", cx, cy);
                continue;
            }
            const Vec2 d = quantize_direction(it->second);
            const Vec2 u = d * (1.0 / d.norm());
            const double half = 0.35 * kCell;
            svg << fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\" "
                       "stroke-width=\"1\" marker-end=\"url(#head)\"/>\n",
                       cx - u.x * half, cy - u.y * half, cx + u.x * half, cy + u.y * half);
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_current_svg(const CurrentSet& set, const std::filesystem::path& path) {
    std::vector<VectorGlyph> glyphs;
    glyphs.reserve(set.size());
    for (const CurrentElement& e : set.elements) glyphs.push_back({e.pos, e.vec});
    write_text_file(path, vector_field_svg(set.width, set.height, glyphs));
}

void write_force_svg(const CurrentSet& set, const std::vector<ForceSample>& forces,
                     const std::filesystem::path& path) {
    std::vector<VectorGlyph> glyphs;
    glyphs.reserve(forces.size());
    for (const ForceSample& f : forces) glyphs.push_back({set.elements.at(f.element_index).pos, f.force});
    write_text_file(path, vector_field_svg(set.width, set.height, glyphs));
}

void write_force_csv(const CurrentSet& set, const std::vector<ForceSample>& forces,
                     const MomentResult& moments, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "x,y,tx,ty,fx,fy,moment\n";
    for (const ForceSample& f : forces) {
        const CurrentElement& e = set.elements.at(f.element_index);
        const double m = f.element_index < moments.per_element.size()
                             ? moments.per_element[f.element_index]
                             : moment_of_force(e.pos, f.force, set.center);
        out << fmt("%.10g,%.10g,%.17g,%.17g,%.17g,%.17g,%.17g\n", e.pos.x, e.pos.y, e.vec.x,
                   e.vec.y, f.force.x, f.force.y, m);
    }
    write_text_file(path, out.str());
}

std::string sign_bar_svg(const SignDistribution& dist) {
    const int n = static_cast<int>(dist.intervals());
    const double bar = 5.0;
    const double left = 50.0;
    const double axis_y = 110.0;
    const double amp = 60.0;
    const double w = left + n * bar + 30.0;
    const double h = 220.0;

    std::ostringstream svg;
    svg << fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", w, h);
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", left,
               axis_y, left + n * bar, axis_y);
    svg << fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">+1</text>\n",
               left - 6, axis_y - amp + 4);
    svg << fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">-1</text>\n",
               left - 6, axis_y + amp + 4);

    for (int i = 0; i < n; ++i) {
        const int s = dist.signs[static_cast<std::size_t>(i)];
        const double x = left + i * bar;
        if (s > 0) {
            svg << fmt("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"#333\"/>\n",
                       x, axis_y - amp, bar - 1.0, amp);
        } else if (s < 0) {
            svg << fmt("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"#333\"/>\n",
                       x, axis_y, bar - 1.0, amp);
        }
        if ((i + 1) % 10 == 0) {
            svg << fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\" text-anchor=\"middle\">%d</text>\n",
                       x + bar / 2, axis_y + amp + 20, i + 1);
        }
    }
    svg << fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"middle\">"
               "discrete angle interval (%g deg each)</text>\n",
               left + n * bar / 2, h - 8, dist.step);
    svg << "</svg>\n";
    return svg.str();
}

std::string sign_pie_svg(const SignDistribution& dist) {
    const Vec2 c{220.0, 220.0};
    const double r = 160.0;
    const auto conv = dist.convergence;
    const bool full = conv.size() == 1;
    const std::size_t ns = dist.sections.size();

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"440\" height=\"460\">\n";
    svg << "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"3\" refY=\"3\" "
           "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"black\"/></marker></defs>\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << fmt("<circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n", c.x,
               c.y, r);

    for (std::size_t i = 0; i < ns; ++i) {
        const Section& s = dist.sections[i];
        const double from = s.start_angle - dist.step;
        const double to = s.end_angle;
        const bool valid = !conv.empty() && (full || i == 0 || i + 1 == ns);
        const char* shade = i % 2 == 0 ? "#d0d0d0" : "#909090";

        if (to - from >= 360.0 - 1e-9) {
            svg << fmt("<circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"%s\" stroke=\"black\"/>\n",
                       c.x, c.y, r, shade);
        } else {
            const Vec2 a = on_circle(c, r, from);
            const Vec2 b = on_circle(c, r, to);
            const int large = (to - from) > 180.0 ? 1 : 0;
            svg << fmt("<path d=\"M %.1f %.1f L %.3f %.3f A %.1f %.1f 0 %d 1 %.3f %.3f Z\" "
                       "fill=\"%s\" stroke=\"black\"/>\n",
                       c.x, c.y, a.x, a.y, r, r, large, b.x, b.y, shade);
        }

        // Direction of the turn the moment commands inside this section.
        const double mid = 0.5 * (from + to);
        const double span = std::min(20.0, 0.35 * (to - from));
        const double a0 = s.sign > 0 ? mid - span : mid + span;
        const double a1 = s.sign > 0 ? mid + span : mid - span;
        const std::string d =
            s.sign > 0 ? arc_path(c, 0.72 * r, a0, a1)
                       : fmt("M %.3f %.3f A %.3f %.3f 0 0 0 %.3f %.3f", on_circle(c, 0.72 * r, a0).x,
                             on_circle(c, 0.72 * r, a0).y, 0.72 * r, 0.72 * r,
                             on_circle(c, 0.72 * r, a1).x, on_circle(c, 0.72 * r, a1).y);
        svg << "<path d=\"" << d
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\" marker-end=\"url(#head)\"/>\n";

        const Vec2 label = on_circle(c, 0.45 * r, mid);
        svg << fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"middle\">%s</text>\n",
                   label.x, label.y, valid ? "valid" : "invalid");
    }

    for (double osc : dist.oscillating_angles) {
        const Vec2 tip = on_circle(c, r + 8.0, osc);
        svg << fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"red\" "
                   "stroke-width=\"2\"/>\n",
                   c.x, c.y, tip.x, tip.y);
        const Vec2 text = on_circle(c, r + 22.0, osc);
        svg << fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" fill=\"red\" "
                   "text-anchor=\"middle\">oscillating angle %g</text>\n",
                   text.x, text.y, osc);
    }

    const Vec2 zero = on_circle(c, r + 14.0, 0.0);
    svg << fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"middle\">0°</text>\n",
               zero.x, zero.y);
    svg << fmt("<text x=\"%.1f\" y=\"450\" font-size=\"12\" text-anchor=\"middle\">"
               "%zu sections, sign of total moment vs. clockwise deviation</text>\n",
               c.x, ns);
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace emmatch
