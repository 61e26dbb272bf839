#include "harmon/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace harmon {

Image::Image(int w, int h, float fill) : width(w), height(h) {
    if (w < 1 || h < 1) throw std::invalid_argument("Image: dimensions must be >= 1");
    data.assign(static_cast<std::size_t>(w) * h * 3, fill);
}

Mask::Mask(int w, int h, float fill) : width(w), height(h) {
    if (w < 1 || h < 1) throw std::invalid_argument("Mask: dimensions must be >= 1");
    data.assign(static_cast<std::size_t>(w) * h, fill);
}

bool rect_fits(const Rect& r, int width, int height) {
    return r.x >= 0 && r.y >= 0 && r.w >= 1 && r.h >= 1 &&
           r.x + r.w <= width && r.y + r.h <= height;
}

void require_rect(const Rect& r, int width, int height, const char* what) {
    if (!rect_fits(r, width, height)) {
        throw std::invalid_argument(std::string(what) + ": rect (" + std::to_string(r.x) + "," +
                                    std::to_string(r.y) + "," + std::to_string(r.w) + "," +
                                    std::to_string(r.h) + ") out of bounds for " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
}

Image crop(const Image& img, const Rect& r) {
    require_rect(r, img.width, img.height, "crop");
    Image out(r.w, r.h);
    for (int y = 0; y < r.h; ++y) {
        const float* src = &img.data[img.index(r.x, r.y + y, 0)];
        float* dst = &out.data[out.index(0, y, 0)];
        std::copy(src, src + static_cast<std::size_t>(r.w) * 3, dst);
    }
    return out;
}

Image resize_bilinear(const Image& img, int new_w, int new_h) {
    if (new_w < 1 || new_h < 1) throw std::invalid_argument("resize_bilinear: target dims must be >= 1");
    if (new_w == img.width && new_h == img.height) return img;

    Image out(new_w, new_h);
    const double sx = static_cast<double>(img.width) / new_w;
    const double sy = static_cast<double>(img.height) / new_h;
    for (int y = 0; y < new_h; ++y) {
        double fy = (y + 0.5) * sy - 0.5;
        fy = std::clamp(fy, 0.0, static_cast<double>(img.height - 1));
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double wy = fy - y0;
        for (int x = 0; x < new_w; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            fx = std::clamp(fx, 0.0, static_cast<double>(img.width - 1));
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double wx = fx - x0;
            for (int c = 0; c < 3; ++c) {
                const double top = (1.0 - wx) * img.at(x0, y0, c) + wx * img.at(x1, y0, c);
                const double bot = (1.0 - wx) * img.at(x0, y1, c) + wx * img.at(x1, y1, c);
                double v = (1.0 - wy) * top + wy * bot;
                out.at(x, y, c) = static_cast<float>(std::clamp(v, 0.0, 1.0));
            }
        }
    }
    return out;
}

Image composite(const Image& fg, const Image& bg, const Mask& mask, const Rect& placement) {
    if (fg.width != placement.w || fg.height != placement.h)
        throw std::invalid_argument("composite: foreground size must match placement extent");
    if (mask.width != fg.width || mask.height != fg.height)
        throw std::invalid_argument("composite: mask size must match foreground");
    require_rect(placement, bg.width, bg.height, "composite");

    Image out = bg;
    for (int y = 0; y < placement.h; ++y) {
        for (int x = 0; x < placement.w; ++x) {
            const float m = mask.at(x, y);
            for (int c = 0; c < 3; ++c) {
                const float b = bg.at(placement.x + x, placement.y + y, c);
                out.at(placement.x + x, placement.y + y, c) = m * fg.at(x, y, c) + (1.0f - m) * b;
            }
        }
    }
    return out;
}

}  // namespace harmon
