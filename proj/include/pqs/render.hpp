#pragma once

// Static pictures of f(D): the image of a polar grid, as binary PPM or SVG.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace pqs {

enum class ImageFormat { Ppm, Svg };

inline std::string_view to_string(ImageFormat f) { return f == ImageFormat::Ppm ? "ppm" : "svg"; }

inline ImageFormat parse_image_format(std::string_view s) {
    if (s == "ppm") return ImageFormat::Ppm;
    if (s == "svg") return ImageFormat::Svg;
    throw InvalidArgument("unknown image format '" + std::string(s) + "'");
}

struct RenderOptions {
    int circles = 8;
    int rays = 16;
    int samples = 256; // points per polyline
    int size = 512;    // square canvas, pixels
    double r_max = 0.999;

    friend bool operator==(const RenderOptions&, const RenderOptions&) = default;
};

struct Polyline {
    std::vector<Complex> points;
    bool ray = false;
};

/// Images of the circles |z| = r_max c / circles and the rays arg z = 2 pi t / rays.
inline std::vector<Polyline> grid_image(const HarmonicFunction& f, const RenderOptions& opt) {
    if (opt.circles < 8 || opt.rays < 8) throw InvalidArgument("render needs at least 8 circles and 8 rays");
    if (opt.samples < 2 || opt.size < 16) throw InvalidArgument("render needs >= 2 samples and >= 16 pixels");
    if (!(opt.r_max > 0.0 && opt.r_max < 1.0)) throw InvalidArgument("render r_max must lie in (0,1)");
    std::vector<Polyline> lines;
    for (int c = 1; c <= opt.circles; ++c) {
        const double r = opt.r_max * c / opt.circles;
        Polyline pl;
        for (int s = 0; s <= opt.samples; ++s) {
            pl.points.push_back(evaluate(f, std::polar(r, 2.0 * std::numbers::pi * s / opt.samples)));
        }
        lines.push_back(std::move(pl));
    }
    for (int t = 0; t < opt.rays; ++t) {
        const double th = 2.0 * std::numbers::pi * t / opt.rays;
        Polyline pl;
        pl.ray = true;
        for (int s = 0; s <= opt.samples; ++s) pl.points.push_back(evaluate(f, std::polar(opt.r_max * s / opt.samples, th)));
        lines.push_back(std::move(pl));
    }
    return lines;
}

namespace detail {

// Maps the bounding box of all points onto the canvas with a 5% border, y up.
struct Viewport {
    double cx = 0, cy = 0, scale = 1, half = 0;

    Viewport(const std::vector<Polyline>& lines, int size) : half(0.5 * size) {
        double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
        for (const auto& l : lines) {
            for (const auto& p : l.points) {
                x0 = std::min(x0, p.real());
                x1 = std::max(x1, p.real());
                y0 = std::min(y0, p.imag());
                y1 = std::max(y1, p.imag());
            }
        }
        cx = 0.5 * (x0 + x1);
        cy = 0.5 * (y0 + y1);
        const double extent = std::max({x1 - x0, y1 - y0, 1e-12});
        scale = 0.9 * size / extent;
    }

    double px(Complex p) const { return half + (p.real() - cx) * scale; }
    double py(Complex p) const { return half - (p.imag() - cy) * scale; }
};

inline void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace detail

/// Binary P6, 8-bit RGB: white background, circles blue, rays red.
inline std::string render_ppm(const std::vector<Polyline>& lines, int size) {
    const detail::Viewport vp(lines, size);
    std::vector<std::uint8_t> px(static_cast<std::size_t>(size) * size * 3, 255);
    auto plot = [&](int x, int y, const std::array<std::uint8_t, 3>& rgb) {
        if (x < 0 || y < 0 || x >= size || y >= size) return;
        const std::size_t o = (static_cast<std::size_t>(y) * size + x) * 3;
        px[o] = rgb[0];
        px[o + 1] = rgb[1];
        px[o + 2] = rgb[2];
    };
    for (const auto& l : lines) {
        const std::array<std::uint8_t, 3> rgb = l.ray ? std::array<std::uint8_t, 3>{170, 20, 20}
                                                      : std::array<std::uint8_t, 3>{20, 40, 170};
        for (std::size_t s = 1; s < l.points.size(); ++s) {
            const double xa = vp.px(l.points[s - 1]), ya = vp.py(l.points[s - 1]);
            const double xb = vp.px(l.points[s]), yb = vp.py(l.points[s]);
            const int steps = std::max(1, static_cast<int>(std::ceil(std::max(std::abs(xb - xa), std::abs(yb - ya)))));
            for (int t = 0; t <= steps; ++t) {
                const double u = static_cast<double>(t) / steps;
                plot(static_cast<int>(std::lround(xa + u * (xb - xa))), static_cast<int>(std::lround(ya + u * (yb - ya))), rgb);
            }
        }
    }
    std::string out = "P6\n" + std::to_string(size) + " " + std::to_string(size) + "\n255\n";
    out.append(px.begin(), px.end());
    return out;
}

/// SVG 1.1 with one path per polyline, coordinates at 3 decimals.
inline std::string render_svg(const std::vector<Polyline>& lines, int size) {
    const detail::Viewport vp(lines, size);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(size) +
           "\" height=\"" + std::to_string(size) + "\" viewBox=\"0 0 " + std::to_string(size) + " " +
           std::to_string(size) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    char buf[64];
    for (const auto& l : lines) {
        out += l.ray ? "<path fill=\"none\" stroke=\"#aa1414\" stroke-width=\"1\" d=\""
                     : "<path fill=\"none\" stroke=\"#1428aa\" stroke-width=\"1\" d=\"";
        for (std::size_t s = 0; s < l.points.size(); ++s) {
            std::snprintf(buf, sizeof buf, "%s%.3f %.3f", s == 0 ? "M" : " L", vp.px(l.points[s]), vp.py(l.points[s]));
            out += buf;
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

/// Renders f(D) to `path`; returns the number of bytes written.
inline std::size_t render(const HarmonicFunction& f, const RenderOptions& opt, const std::string& path,
                          ImageFormat format) {
    const auto lines = grid_image(f, opt);
    const std::string bytes = format == ImageFormat::Ppm ? render_ppm(lines, opt.size) : render_svg(lines, opt.size);
    detail::write_bytes(path, bytes);
    return bytes.size();
}

} // namespace pqs
