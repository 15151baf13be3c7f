#include <emmatch/raster.hpp>

#include <emmatch/errors.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

namespace emmatch {

GrayImage::GrayImage(int width, int height, double value)
    : GrayImage(width, height,
                std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) *
                                        static_cast<std::size_t>(std::max(height, 0)),
                                    value)) {}

GrayImage::GrayImage(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("GrayImage: dimensions must be positive");
    }
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw std::invalid_argument("GrayImage: pixel count does not match dimensions");
    }
}

double normalize_degrees(double deg) {
    double a = std::fmod(deg, 360.0);
    if (a < 0.0) a += 360.0;
    if (a >= 360.0) a -= 360.0;
    return a + 0.0;  // no negative zero
}

namespace {

// ---------------------------------------------------------------------------
// Netpbm decoding
// ---------------------------------------------------------------------------

class NetpbmReader {
public:
    NetpbmReader(std::string data, std::string name) : data_(std::move(data)), name_(std::move(name)) {}

    std::string magic() {
        if (data_.size() < 2 || data_[0] != 'P') fail("not a Netpbm file");
        pos_ = 2;
        return data_.substr(0, 2);
    }

    long header_int() {
        skip_space_and_comments();
        if (pos_ >= data_.size() || !std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
            fail("malformed header");
        }
        long v = 0;
        while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
            v = v * 10 + (data_[pos_] - '0');
            if (v > 1'000'000'000L) fail("header value out of range");
            ++pos_;
        }
        return v;
    }

    long ascii_sample() { return header_int(); }

    // Exactly one whitespace byte separates the header from the raster.
    void end_of_header() {
        if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
            fail("malformed header");
        }
        ++pos_;
    }

    long binary_sample(bool wide) {
        const std::size_t need = wide ? 2 : 1;
        if (pos_ + need > data_.size()) fail("truncated raster");
        long v = static_cast<unsigned char>(data_[pos_]);
        if (wide) v = (v << 8) | static_cast<unsigned char>(data_[pos_ + 1]);
        pos_ += need;
        return v;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw IoError(name_ + ": " + what);
    }

private:
    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string data_;
    std::string name_;
    std::size_t pos_ = 0;
};

// Weights scaled to integers so gray inputs map to themselves exactly.
double luminance(double r, double g, double b) { return (299.0 * r + 587.0 * g + 114.0 * b) / 1000.0; }

// Rotation matrix entries with exact values at multiples of 90 degrees, so
// quarter turns are pure pixel permutations.
void exact_cos_sin(double deg, double& c, double& s) {
    const double a = normalize_degrees(deg);
    if (a == 0.0) {
        c = 1.0, s = 0.0;
    } else if (a == 90.0) {
        c = 0.0, s = 1.0;
    } else if (a == 180.0) {
        c = -1.0, s = 0.0;
    } else if (a == 270.0) {
        c = 0.0, s = -1.0;
    } else {
        c = std::cos(deg_to_rad(a));
        s = std::sin(deg_to_rad(a));
    }
}

double sample_bilinear(const GrayImage& img, double sx, double sy, double fill) {
    constexpr double kEdgeSlack = 1e-9;
    const int w = img.width();
    const int h = img.height();
    if (sx < -kEdgeSlack || sy < -kEdgeSlack || sx > (w - 1) + kEdgeSlack ||
        sy > (h - 1) + kEdgeSlack) {
        return fill;
    }
    sx = std::clamp(sx, 0.0, static_cast<double>(w - 1));
    sy = std::clamp(sy, 0.0, static_cast<double>(h - 1));
    const int x0 = static_cast<int>(std::floor(sx));
    const int y0 = static_cast<int>(std::floor(sy));
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fx = sx - x0;
    const double fy = sy - y0;
    return (1.0 - fx) * (1.0 - fy) * img.at(x0, y0) + fx * (1.0 - fy) * img.at(x1, y0) +
           (1.0 - fx) * fy * img.at(x0, y1) + fx * fy * img.at(x1, y1);
}

bool inside_inscribed_circle(const GrayImage& img, int x, int y) {
    const Vec2 c = img.center();
    const double r = std::min(img.width() - 1, img.height() - 1) / 2.0;
    const double dx = x - c.x;
    const double dy = y - c.y;
    return dx * dx + dy * dy <= r * r + 1e-9;
}

}  // namespace

GrayImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    NetpbmReader reader(std::move(data), path.string());
    const std::string magic = reader.magic();
    const bool ascii = magic == "P2" || magic == "P3";
    const bool color = magic == "P3" || magic == "P6";
    if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6") {
        reader.fail("unsupported format " + magic);
    }

    const long width = reader.header_int();
    const long height = reader.header_int();
    const long maxval = reader.header_int();
    if (width <= 0 || height <= 0) reader.fail("zero-dimension image");
    if (maxval <= 0 || maxval > 65535) reader.fail("maxval out of range");
    if (!ascii) reader.end_of_header();
    if (width * height > 100'000'000L) reader.fail("image too large");

    const bool wide = maxval > 255;
    const double scale = maxval == 255 ? 1.0 : 255.0 / static_cast<double>(maxval);
    auto next = [&] {
        const long v = ascii ? reader.ascii_sample() : reader.binary_sample(wide);
        if (v > maxval) reader.fail("sample exceeds maxval");
        return static_cast<double>(v) * scale;
    };

    std::vector<double> pixels(static_cast<std::size_t>(width * height));
    for (double& p : pixels) {
        if (color) {
            const double r = next();
            const double g = next();
            const double b = next();
            p = luminance(r, g, b);
        } else {
            p = next();
        }
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

void save_image(const GrayImage& img, const std::filesystem::path& path, PgmEncoding encoding) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());

    auto quantize = [](double v) {
        return static_cast<int>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
    };

    out << (encoding == PgmEncoding::binary ? "P5" : "P2") << '\n'
        << img.width() << ' ' << img.height() << "\n255\n";
    if (encoding == PgmEncoding::binary) {
        std::string raster;
        raster.reserve(img.pixels().size());
        for (double v : img.pixels()) raster.push_back(static_cast<char>(quantize(v)));
        out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
    } else {
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                out << quantize(img.at(x, y)) << (x + 1 < img.width() ? ' ' : '\n');
            }
        }
    }
    if (!out) throw IoError("failed writing " + path.string());
}

GrayImage rotate_image(const GrayImage& img, const RotationSpec& spec) {
    const double angle = normalize_degrees(spec.angle_deg);
    const Vec2 c = spec.center.value_or(img.center());
    if (angle == 0.0) return img;

    double cs = 1.0;
    double sn = 0.0;
    exact_cos_sin(angle, cs, sn);

    GrayImage out(img.width(), img.height(), spec.fill);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            // Forward map is clockwise on screen: (dx, dy) -> (dx*c - dy*s, dx*s + dy*c).
            const double dx = x - c.x;
            const double dy = y - c.y;
            const double sx = c.x + dx * cs + dy * sn;
            const double sy = c.y - dx * sn + dy * cs;
            out.at(x, y) = sample_bilinear(img, sx, sy, spec.fill);
        }
    }
    return out;
}

GrayImage rotate_image(const GrayImage& img, double angle_deg) {
    return rotate_image(img, RotationSpec{angle_deg, std::nullopt, 0.0});
}

GrayImage mask_circle(const GrayImage& img, double fill) {
    GrayImage out = img;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (!inside_inscribed_circle(img, x, y)) out.at(x, y) = fill;
        }
    }
    return out;
}

double mean_abs_diff_in_circle(const GrayImage& a, const GrayImage& b) {
    if (!a.same_size(b)) throw std::invalid_argument("mean_abs_diff_in_circle: size mismatch");
    double sum = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            if (!inside_inscribed_circle(a, x, y)) continue;
            sum += std::abs(a.at(x, y) - b.at(x, y));
            ++n;
        }
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace emmatch
