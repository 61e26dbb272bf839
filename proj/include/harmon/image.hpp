#pragma once

#include <cstddef>
#include <vector>

namespace harmon {

struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool operator==(const Rect&) const = default;
};

// Row-major float RGB raster, channel order R,G,B, values nominally in [0,1].
// Images are treated as immutable once built; every operation returns a copy.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<float> data;  // height * width * 3

    Image() = default;
    Image(int w, int h, float fill = 0.0f);

    std::size_t index(int x, int y, int c) const {
        return (static_cast<std::size_t>(y) * width + x) * 3 + c;
    }
    float at(int x, int y, int c) const { return data[index(x, y, c)]; }
    float& at(int x, int y, int c) { return data[index(x, y, c)]; }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    bool same_size(const Image& o) const { return width == o.width && height == o.height; }
};

// Single-channel soft alpha in [0,1], same layout conventions as Image.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<float> data;  // height * width

    Mask() = default;
    Mask(int w, int h, float fill = 0.0f);

    float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

bool rect_fits(const Rect& r, int width, int height);
void require_rect(const Rect& r, int width, int height, const char* what);

Image crop(const Image& img, const Rect& r);

// Half-pixel-centered bilinear: src = (dst + 0.5) * scale - 0.5, clamped.
// Resizing to the same dimensions is the identity.
Image resize_bilinear(const Image& img, int new_w, int new_h);

// bg with the placement region replaced by m*fg + (1-m)*bg per pixel/channel.
Image composite(const Image& fg, const Image& bg, const Mask& mask, const Rect& placement);

}  // namespace harmon
