#include "jfs/dataio/png.hpp"

#include <png.h>

#include <array>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

namespace jfs::dataio {
namespace {

struct ReadState {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos;
  char message[256];
};

struct WriteState {
  Bytes* out;
  char message[256];
};

void on_error(png_structp png, png_const_charp msg) {
  auto* message = static_cast<char*>(png_get_error_ptr(png));
  std::snprintf(message, 256, "%s", msg);
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

void read_bytes(png_structp png, png_bytep dst, png_size_t n) {
  auto* s = static_cast<ReadState*>(png_get_io_ptr(png));
  if (s->pos + n > s->size) png_error(png, "unexpected end of PNG data");
  std::memcpy(dst, s->data + s->pos, n);
  s->pos += n;
}

void write_bytes(png_structp png, png_bytep src, png_size_t n) {
  auto* s = static_cast<WriteState*>(png_get_io_ptr(png));
  s->out->insert(s->out->end(), src, src + n);
}

void flush_bytes(png_structp) {}

enum class Want { kGray8, kRgb8 };

struct Decoded {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;
};

// Kept free of objects with destructors between setjmp and any longjmp.
bool decode_impl(std::span<const std::uint8_t> png_bytes, Want want, Decoded& out,
                 std::string& error) {
  ReadState state{png_bytes.data(), png_bytes.size(), 0, {}};
  if (png_bytes.size() < 8 || png_sig_cmp(png_bytes.data(), 0, 8) != 0) {
    error = "not a PNG stream";
    return false;
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, state.message, on_error, on_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (png == nullptr || info == nullptr) {
    png_destroy_read_struct(&png, &info, nullptr);
    error = "libpng allocation failed";
    return false;
  }
  std::vector<png_bytep>* rows = new std::vector<png_bytep>();
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    delete rows;
    error = state.message;
    return false;
  }
  png_set_read_fn(png, &state, read_bytes);
  png_read_info(png, info);
  const auto width = png_get_image_width(png, info);
  const auto height = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int type = png_get_color_type(png, info);
  if (depth != 8) png_error(png, "only 8-bit PNGs are supported");
  if (want == Want::kGray8) {
    if (type != PNG_COLOR_TYPE_GRAY && type != PNG_COLOR_TYPE_PALETTE)
      png_error(png, "expected 8-bit grayscale or paletted PNG");
    out.channels = 1;
  } else {
    if (type == PNG_COLOR_TYPE_PALETTE)
      png_set_palette_to_rgb(png);
    else if (type == PNG_COLOR_TYPE_GRAY)
      png_set_gray_to_rgb(png);
    else if (type != PNG_COLOR_TYPE_RGB)
      png_error(png, "expected 8-bit RGB PNG");
    out.channels = 3;
  }
  if (width == 0 || height == 0 || width > (1u << 16) || height > (1u << 16))
    png_error(png, "unsupported PNG dimensions");
  png_read_update_info(png, info);
  if (png_get_rowbytes(png, info) != static_cast<png_size_t>(width) * out.channels)
    png_error(png, "unexpected row layout");
  out.width = static_cast<int>(width);
  out.height = static_cast<int>(height);
  out.pixels.resize(static_cast<std::size_t>(width) * height * out.channels);
  rows->resize(height);
  for (png_uint_32 y = 0; y < height; ++y)
    (*rows)[y] = out.pixels.data() + static_cast<std::size_t>(y) * width * out.channels;
  png_read_image(png, rows->data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  delete rows;
  return true;
}

// The VOC colour map: bit-interleaved RGB derived from the index.
std::array<png_color, 256> voc_palette() {
  std::array<png_color, 256> pal{};
  for (int i = 0; i < 256; ++i) {
    int r = 0, g = 0, b = 0, c = i;
    for (int j = 0; j < 8; ++j) {
      r |= ((c >> 0) & 1) << (7 - j);
      g |= ((c >> 1) & 1) << (7 - j);
      b |= ((c >> 2) & 1) << (7 - j);
      c >>= 3;
    }
    pal[i] = {static_cast<png_byte>(r), static_cast<png_byte>(g), static_cast<png_byte>(b)};
  }
  return pal;
}

bool encode_impl(int width, int height, int color_type, const std::uint8_t* pixels, int channels,
                 const png_color* palette, Bytes& out, std::string& error) {
  WriteState state{&out, {}};
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, state.message, on_error, on_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (png == nullptr || info == nullptr) {
    png_destroy_write_struct(&png, &info);
    error = "libpng allocation failed";
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    error = state.message;
    return false;
  }
  png_set_write_fn(png, &state, write_bytes, flush_bytes);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  if (palette != nullptr) png_set_PLTE(png, info, palette, 256);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y)
    png_write_row(png, pixels + static_cast<std::size_t>(y) * width * channels);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

Bytes encode_or_throw(int width, int height, int color_type, const std::uint8_t* pixels,
                      int channels, const png_color* palette) {
  Bytes out;
  std::string error;
  if (!encode_impl(width, height, color_type, pixels, channels, palette, out, error))
    throw FormatError("PNG encode failed: " + error);
  return out;
}

Decoded decode_or_throw(std::span<const std::uint8_t> png, Want want) {
  Decoded d;
  std::string error;
  if (!decode_impl(png, want, d, error)) throw FormatError("PNG decode failed: " + error);
  return d;
}

}  // namespace

Gray8 decode_gray8_png(std::span<const std::uint8_t> png) {
  auto d = decode_or_throw(png, Want::kGray8);
  return {{d.width, d.height}, std::move(d.pixels)};
}

RgbImage decode_rgb_png(std::span<const std::uint8_t> png) {
  auto d = decode_or_throw(png, Want::kRgb8);
  return RgbImage(d.width, d.height, std::move(d.pixels));
}

Bytes encode_rgb_png(const RgbImage& image) {
  return encode_or_throw(image.width(), image.height(), PNG_COLOR_TYPE_RGB, image.bytes().data(),
                         3, nullptr);
}

BinaryMask decode_mask_png(std::span<const std::uint8_t> png) {
  const auto g = decode_gray8_png(png);
  for (auto v : g.pixels)
    if (v != 0 && v != 255)
      throw FormatError("mask PNG contains gray value " + std::to_string(v) + " (expected 0/255)");
  return BinaryMask::from_bytes(g.dims.width, g.dims.height, g.pixels);
}

Bytes encode_gray8_png(const Gray8& image) {
  if (image.pixels.size() != image.dims.pixels()) throw DimensionError("gray buffer size mismatch");
  return encode_or_throw(image.dims.width, image.dims.height, PNG_COLOR_TYPE_GRAY, image.pixels.data(), 1,
                         nullptr);
}

Bytes encode_mask_png(const BinaryMask& mask) {
  auto pixels = mask.to_bytes();
  for (auto& p : pixels) p = p ? 255 : 0;
  return encode_or_throw(mask.width(), mask.height(), PNG_COLOR_TYPE_GRAY, pixels.data(), 1,
                         nullptr);
}

LabelMap decode_palette_png(std::span<const std::uint8_t> png) {
  auto g = decode_gray8_png(png);
  return LabelMap(g.dims.width, g.dims.height, std::move(g.pixels), LabelMap::kDefaultIgnore);
}

Bytes encode_label_png(const LabelMap& map) {
  static const auto palette = voc_palette();
  return encode_or_throw(map.width(), map.height(), PNG_COLOR_TYPE_PALETTE, map.labels().data(),
                         1, palette.data());
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return out;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

BinaryMask load_mask(const std::filesystem::path& p) {
  try {
    return decode_mask_png(read_file(p));
  } catch (const FormatError& e) {
    throw FormatError(p.string() + ": " + e.what());
  }
}

LabelMap load_labels(const std::filesystem::path& p) {
  try {
    return decode_palette_png(read_file(p));
  } catch (const FormatError& e) {
    throw FormatError(p.string() + ": " + e.what());
  }
}

}  // namespace jfs::dataio
