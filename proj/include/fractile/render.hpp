#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "fractile/geom.hpp"

namespace fractile::render {

struct Cell {
    Point pos;
    int color_class = 0;  // palette index
};

// Fixed palette; class 0 is the base structure, higher classes pick
// successive hues (fiber layers, provenance groups).
inline const char* palette_hex(int cls) {
    static const char* fixed[] = {"#444444", "#2b6cb8", "#e08b2d", "#3f9b4f",
                                  "#8e44ad", "#c0392b", "#16a085", "#a67c00", "#7f8c8d"};
    if (cls < 0) cls = 0;
    return fixed[cls % 9];
}

// Deterministic SVG: one unit rect per cell, origin bottom-left, y up.
inline std::string to_svg(const std::vector<Cell>& cells, const Rect& window, int scale = 8) {
    std::int64_t w = window.empty() ? 1 : window.width();
    std::int64_t h = window.empty() ? 1 : window.height();
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * scale << "\" height=\""
       << h * scale << "\" viewBox=\"0 0 " << w * scale << ' ' << h * scale << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    std::vector<Cell> order = cells;
    std::sort(order.begin(), order.end(),
              [](const Cell& a, const Cell& b) { return a.pos < b.pos; });
    for (const Cell& c : order) {
        if (!window.contains(c.pos)) continue;
        std::int64_t px = (c.pos.x - window.x0) * scale;
        std::int64_t py = (window.y1 - c.pos.y) * scale;
        os << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << scale << "\" height=\""
           << scale << "\" fill=\"" << palette_hex(c.color_class) << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

// Deterministic binary PGM (P5), one pixel per cell. Empty cells are white;
// color classes map to distinct gray levels.
inline std::string to_pgm(const std::vector<Cell>& cells, const Rect& window) {
    std::int64_t w = window.empty() ? 1 : window.width();
    std::int64_t h = window.empty() ? 1 : window.height();
    std::vector<unsigned char> pix(static_cast<std::size_t>(w * h), 255);
    for (const Cell& c : cells) {
        if (!window.contains(c.pos)) continue;
        std::int64_t col = c.pos.x - window.x0;
        std::int64_t row = window.y1 - c.pos.y;  // y increases upward
        int level = 40 + (c.color_class % 9) * 22;
        pix[static_cast<std::size_t>(row * w + col)] = static_cast<unsigned char>(level);
    }
    std::ostringstream os;
    os << "P5\n" << w << ' ' << h << "\n255\n";
    os.write(reinterpret_cast<const char*>(pix.data()), static_cast<std::streamsize>(pix.size()));
    return os.str();
}

}  // namespace fractile::render
