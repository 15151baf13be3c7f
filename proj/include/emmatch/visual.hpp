#pragma once

#include <emmatch/analysis.hpp>
#include <emmatch/edge_current.hpp>
#include <emmatch/em_field.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace emmatch {

struct VectorGlyph {
    Vec2 pos;
    Vec2 dir;
};

/// One cell per pixel: an 8-direction arrow where a glyph sits, a dot elsewhere.
std::string vector_field_svg(int width, int height, const std::vector<VectorGlyph>& glyphs);

void write_current_svg(const CurrentSet& set, const std::filesystem::path& path);
void write_force_svg(const CurrentSet& set, const std::vector<ForceSample>& forces,
                     const std::filesystem::path& path);

/// Per-element dump with header `x,y,tx,ty,fx,fy,moment`.
void write_force_csv(const CurrentSet& set, const std::vector<ForceSample>& forces,
                     const MomentResult& moments, const std::filesystem::path& path);

std::string sign_bar_svg(const SignDistribution& dist);
std::string sign_pie_svg(const SignDistribution& dist);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace emmatch
