#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "harmon/image.hpp"

namespace harmon {

enum class ImageFormat { png8, ppm };

// 8-bit decode; values become byte/255 exactly. Grayscale inputs are promoted
// to RGB by channel replication. Throws ParseError on malformed input.
Image decode_image(const std::vector<uint8_t>& bytes, ImageFormat format);

// Channels quantized as round-half-up of clamp(v,0,1)*255. PPM output is
// binary P6; decode(encode(x)) differs from x by at most 1/510 per channel.
std::vector<uint8_t> encode_image(const Image& img, ImageFormat format);

// Masks travel as 8-bit grayscale (PNG gray or PGM P5).
Mask decode_mask(const std::vector<uint8_t>& bytes, ImageFormat format);
std::vector<uint8_t> encode_mask(const Mask& mask, ImageFormat format);

// File helpers: format picked by magic bytes on load, by extension on save
// (.png, .ppm/.pgm/.pnm).
Image load_image(const std::filesystem::path& path);
void save_image(const Image& img, const std::filesystem::path& path);
Mask load_mask(const std::filesystem::path& path);
void save_mask(const Mask& mask, const std::filesystem::path& path);

std::vector<uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<uint8_t>& bytes);

}  // namespace harmon
