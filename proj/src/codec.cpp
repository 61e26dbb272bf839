#include "harmon/codec.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <string>

#include "harmon/error.hpp"

namespace harmon {

namespace {

uint8_t quantize(float v) {
    const float c = std::clamp(v, 0.0f, 1.0f);
    return static_cast<uint8_t>(std::floor(c * 255.0f + 0.5f));  // round half up
}

// ---------------------------------------------------------------- PPM / PGM

struct PnmReader {
    const std::vector<uint8_t>& bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }
    int peek() const { return eof() ? -1 : bytes[pos]; }
    int get() { return eof() ? -1 : bytes[pos++]; }

    void skip_space_and_comments() {
        while (!eof()) {
            const int c = peek();
            if (c == '#') {
                while (!eof() && get() != '\n') {
                }
            } else if (std::isspace(c)) {
                ++pos;
            } else {
                break;
            }
        }
    }

    int parse_uint(const char* field) {
        skip_space_and_comments();
        if (eof() || !std::isdigit(peek()))
            throw ParseError("PPM: expected " + std::string(field) + " at byte " + std::to_string(pos));
        long v = 0;
        while (!eof() && std::isdigit(peek())) {
            v = v * 10 + (get() - '0');
            if (v > 1 << 30) throw ParseError("PPM: " + std::string(field) + " out of range at byte " + std::to_string(pos));
        }
        return static_cast<int>(v);
    }
};

Image decode_pnm(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw ParseError("PPM: invalid magic at byte 0");
    const char kind = static_cast<char>(bytes[1]);
    if (kind != '3' && kind != '6' && kind != '2' && kind != '5')
        throw ParseError(std::string("PPM: unsupported magic P") + kind);
    const bool gray = (kind == '2' || kind == '5');
    const bool ascii = (kind == '3' || kind == '2');

    PnmReader r{bytes, 2};
    const int width = r.parse_uint("width");
    const int height = r.parse_uint("height");
    const int maxval = r.parse_uint("maxval");
    if (width < 1 || height < 1)
        throw ParseError("PPM: non-positive dimensions " + std::to_string(width) + "x" + std::to_string(height));
    if (maxval != 255)
        throw ParseError("PPM: unsupported bit depth (maxval " + std::to_string(maxval) + ", expected 255)");

    const int channels = gray ? 1 : 3;
    const std::size_t n = static_cast<std::size_t>(width) * height * channels;
    std::vector<uint8_t> raw(n);

    if (ascii) {
        for (std::size_t i = 0; i < n; ++i) {
            const int v = r.parse_uint("pixel value");
            if (v > maxval) throw ParseError("PPM: pixel value " + std::to_string(v) + " exceeds maxval at byte " + std::to_string(r.pos));
            raw[i] = static_cast<uint8_t>(v);
        }
    } else {
        // exactly one whitespace byte separates the header from binary data
        if (r.eof() || !std::isspace(r.peek()))
            throw ParseError("PPM: missing whitespace before pixel data at byte " + std::to_string(r.pos));
        ++r.pos;
        if (bytes.size() - r.pos < n)
            throw ParseError("PPM: truncated pixel data (expected " + std::to_string(n) + " bytes, got " +
                             std::to_string(bytes.size() - r.pos) + ")");
        std::memcpy(raw.data(), bytes.data() + r.pos, n);
    }

    Image img(width, height);
    for (std::size_t p = 0; p < static_cast<std::size_t>(width) * height; ++p) {
        for (int c = 0; c < 3; ++c) {
            const uint8_t b = gray ? raw[p] : raw[p * 3 + c];
            img.data[p * 3 + c] = static_cast<float>(b) / 255.0f;
        }
    }
    return img;
}

std::vector<uint8_t> encode_ppm(const Image& img) {
    const std::string header = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + img.data.size());
    for (float v : img.data) out.push_back(quantize(v));
    return out;
}

std::vector<uint8_t> encode_pgm(const Mask& mask) {
    const std::string header = "P5\n" + std::to_string(mask.width) + " " + std::to_string(mask.height) + "\n255\n";
    std::vector<uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + mask.data.size());
    for (float v : mask.data) out.push_back(quantize(v));
    return out;
}

// ----------------------------------------------------------------- PNG

struct PngError {
    std::string message = "PNG: decode failed";
};

void png_error_fn(png_structp png, png_const_charp msg) {
    auto* err = static_cast<PngError*>(png_get_error_ptr(png));
    if (err) err->message = std::string("PNG: ") + msg;
    longjmp(png_jmpbuf(png), 1);
}

void png_warn_fn(png_structp, png_const_charp) {}

struct PngSource {
    const uint8_t* data;
    std::size_t size;
    std::size_t pos;
};

void png_read_fn(png_structp png, png_bytep out, png_size_t len) {
    auto* src = static_cast<PngSource*>(png_get_io_ptr(png));
    if (src->pos + len > src->size) png_error(png, "unexpected end of data");
    std::memcpy(out, src->data + src->pos, len);
    src->pos += len;
}

void png_write_fn(png_structp png, png_bytep data, png_size_t len) {
    auto* out = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + len);
}

void png_flush_fn(png_structp) {}

Image decode_png(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0)
        throw ParseError("PNG: invalid signature at byte 0");

    PngError err;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, png_error_fn, png_warn_fn);
    if (!png) throw ParseError("PNG: failed to create read struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw ParseError("PNG: failed to create info struct");
    }

    std::vector<png_bytep> row_ptrs;
    Image img;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ParseError(err.message);
    }

    PngSource src{bytes.data(), bytes.size(), 0};
    png_set_read_fn(png, &src, png_read_fn);
    png_read_info(png, info);

    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    if (bit_depth == 16) png_error(png, "unsupported bit depth 16 (field bit_depth)");

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    if (png_get_channels(png, info) != 3 || png_get_bit_depth(png, info) != 8)
        png_error(png, "unsupported pixel layout after expansion");

    std::vector<uint8_t> raw(static_cast<std::size_t>(width) * height * 3);
    row_ptrs.resize(height);
    for (int y = 0; y < height; ++y)
        row_ptrs[y] = raw.data() + static_cast<std::size_t>(y) * width * 3;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    img = Image(width, height);
    for (std::size_t i = 0; i < raw.size(); ++i)
        img.data[i] = static_cast<float>(raw[i]) / 255.0f;
    return img;
}

std::vector<uint8_t> encode_png(const std::vector<uint8_t>& raw, int width, int height, bool gray) {
    PngError err;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, png_error_fn, png_warn_fn);
    if (!png) throw std::runtime_error("PNG: failed to create write struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("PNG: failed to create info struct");
    }

    std::vector<uint8_t> out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error(err.message);
    }

    png_set_write_fn(png, &out, png_write_fn, png_flush_fn);
    png_set_IHDR(png, info, width, height, 8, gray ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const int channels = gray ? 1 : 3;
    std::vector<png_bytep> row_ptrs(height);
    for (int y = 0; y < height; ++y)
        row_ptrs[y] = const_cast<png_bytep>(raw.data() + static_cast<std::size_t>(y) * width * channels);
    png_write_image(png, row_ptrs.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

bool has_png_magic(const std::vector<uint8_t>& bytes) {
    return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

}  // namespace

Image decode_image(const std::vector<uint8_t>& bytes, ImageFormat format) {
    return format == ImageFormat::png8 ? decode_png(bytes) : decode_pnm(bytes);
}

std::vector<uint8_t> encode_image(const Image& img, ImageFormat format) {
    if (img.width < 1 || img.height < 1 || img.data.size() != img.pixel_count() * 3)
        throw std::invalid_argument("encode_image: invalid image");
    if (format == ImageFormat::ppm) return encode_ppm(img);
    std::vector<uint8_t> raw(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i) raw[i] = quantize(img.data[i]);
    return encode_png(raw, img.width, img.height, /*gray=*/false);
}

Mask decode_mask(const std::vector<uint8_t>& bytes, ImageFormat format) {
    const Image img = decode_image(bytes, format);
    Mask m(img.width, img.height);
    for (std::size_t p = 0; p < img.pixel_count(); ++p)
        m.data[p] = (img.data[p * 3] + img.data[p * 3 + 1] + img.data[p * 3 + 2]) / 3.0f;
    return m;
}

std::vector<uint8_t> encode_mask(const Mask& mask, ImageFormat format) {
    if (mask.width < 1 || mask.height < 1 ||
        mask.data.size() != static_cast<std::size_t>(mask.width) * mask.height)
        throw std::invalid_argument("encode_mask: invalid mask");
    if (format == ImageFormat::ppm) return encode_pgm(mask);
    std::vector<uint8_t> raw(mask.data.size());
    for (std::size_t i = 0; i < mask.data.size(); ++i) raw[i] = quantize(mask.data[i]);
    return encode_png(raw, mask.width, mask.height, /*gray=*/true);
}

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::filesystem::path& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + path.string());
}

namespace {

ImageFormat sniff_format(const std::vector<uint8_t>& bytes, const std::filesystem::path& path) {
    if (has_png_magic(bytes)) return ImageFormat::png8;
    if (bytes.size() >= 2 && bytes[0] == 'P') return ImageFormat::ppm;
    throw ParseError("unrecognized image format: " + path.string());
}

ImageFormat format_for_extension(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".png") return ImageFormat::png8;
    if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") return ImageFormat::ppm;
    throw std::invalid_argument("unsupported image extension: " + path.string());
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return decode_image(bytes, sniff_format(bytes, path));
}

void save_image(const Image& img, const std::filesystem::path& path) {
    write_file(path, encode_image(img, format_for_extension(path)));
}

Mask load_mask(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return decode_mask(bytes, sniff_format(bytes, path));
}

void save_mask(const Mask& mask, const std::filesystem::path& path) {
    write_file(path, encode_mask(mask, format_for_extension(path)));
}

}  // namespace harmon
