#include "psdec/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "psdec/png.hpp"

namespace psdec {

namespace {

// 5x7 bitmap font, one byte per row, low 5 bits used.
struct Glyph {
    char c;
    std::uint8_t rows[7];
};

constexpr Glyph kFont[] = {
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
    {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
    {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
    {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
    {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
    {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C}},
    {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}},
    {'+', {0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00}},
    {'e', {0x00, 0x00, 0x0E, 0x11, 0x1F, 0x10, 0x0E}},
    {'x', {0x00, 0x00, 0x11, 0x0A, 0x04, 0x0A, 0x11}},
    {'p', {0x00, 0x00, 0x1E, 0x11, 0x1E, 0x10, 0x10}},
};

const std::uint8_t* glyph_rows(char c) {
    for (const auto& g : kFont)
        if (g.c == c) return g.rows;
    return nullptr;
}

struct Canvas {
    int width, height;
    std::vector<std::uint8_t> rgb;

    Canvas(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 255) {}

    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        if (x < 0 || y < 0 || x >= width || y >= height) return;
        const std::size_t k = (static_cast<std::size_t>(y) * width + x) * 3;
        rgb[k] = r;
        rgb[k + 1] = g;
        rgb[k + 2] = b;
    }

    void text(int x, int y, const std::string& s) {
        for (char c : s) {
            if (const std::uint8_t* rows = glyph_rows(c)) {
                for (int r = 0; r < 7; ++r)
                    for (int cbit = 0; cbit < 5; ++cbit)
                        if (rows[r] & (0x10 >> cbit)) set(x + cbit, y + r, 30, 30, 30);
            }
            x += 6;
        }
    }

    int text_width(const std::string& s) const { return 6 * static_cast<int>(s.size()); }
};

struct Rgb {
    std::uint8_t r, g, b;
};

Rgb blend(double t, const Rgb& from, const Rgb& to) {
    auto mix = [t](std::uint8_t a, std::uint8_t b) {
        return static_cast<std::uint8_t>(std::lround(a + t * (b - a)));
    };
    return Rgb{mix(from.r, to.r), mix(from.g, to.g), mix(from.b, to.b)};
}

constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kRed{178, 24, 43};
constexpr Rgb kBlue{33, 102, 172};

std::string format_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

void render_heatmap(const RealField& field, const std::string& path,
                    const HeatmapStyle& style) {
    if (style.colormap != "diverging" && style.colormap != "sequential")
        throw std::invalid_argument("render_heatmap: unknown colormap " + style.colormap);
    const int scale = std::max(1, style.pixel_scale);
    const int nx = field.grid.gx.n, np = field.grid.gp.n;
    const int pw = nx * scale, ph = np * scale;
    const int left = 48, right = 10, top = 8, bottom = 26;

    Canvas canvas(left + pw + right, top + ph + bottom);

    const double vmin = field.values.minCoeff();
    const double vmax_raw = field.values.maxCoeff();
    const double vmax = std::max(std::abs(vmin), std::abs(vmax_raw));
    const bool negative = style.colormap == "diverging" && vmin < -1e-12 * vmax;

    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < np; ++j) {
            const double v = field.values(i, j);
            Rgb c = kWhite;
            if (vmax > 0.0) {
                const double t = std::clamp(v / vmax, -1.0, 1.0);
                if (t >= 0.0)
                    c = blend(t, kWhite, kRed);
                else if (negative)
                    c = blend(-t, kWhite, kBlue);
            }
            for (int dy = 0; dy < scale; ++dy)
                for (int dxp = 0; dxp < scale; ++dxp)
                    canvas.set(left + i * scale + dxp,
                               top + (np - 1 - j) * scale + dy, c.r, c.g, c.b);
        }
    }

    // Frame and ticks.
    for (int i = -1; i <= pw; ++i) {
        canvas.set(left + i, top - 1, 60, 60, 60);
        canvas.set(left + i, top + ph, 60, 60, 60);
    }
    for (int j = -1; j <= ph; ++j) {
        canvas.set(left - 1, top + j, 60, 60, 60);
        canvas.set(left + pw, top + j, 60, 60, 60);
    }

    const std::string x_lo = format_tick(field.grid.gx.x_min);
    const std::string x_hi = format_tick(field.grid.gx.x_max);
    const std::string p_lo = format_tick(field.grid.gp.x_min);
    const std::string p_hi = format_tick(field.grid.gp.x_max);
    canvas.text(left, top + ph + 4, x_lo);
    canvas.text(left + pw - canvas.text_width(x_hi), top + ph + 4, x_hi);
    canvas.text(left - 2 - canvas.text_width(p_lo), top + ph - 7, p_lo);
    canvas.text(left - 2 - canvas.text_width(p_hi), top, p_hi);
    canvas.text(left + pw / 2 - 3, top + ph + 14, "x");
    canvas.text(2, top + ph / 2 - 3, "p");

    write_png_rgb(path, canvas.width, canvas.height, canvas.rgb);
}

}  // namespace psdec
