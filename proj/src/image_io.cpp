#include "shapecat/image_io.hpp"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "shapecat/error.hpp"
#include "shapecat/util.hpp"

namespace shapecat {
namespace {

bool is_pnm_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

// PNM token scanner; '#' starts a comment running to end of line.
struct PnmScanner {
  const std::vector<unsigned char>& bytes;
  std::size_t pos = 0;

  void skip_space_and_comments() {
    while (pos < bytes.size()) {
      if (is_pnm_space(bytes[pos])) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  int next_int(const std::string& what) {
    skip_space_and_comments();
    if (pos >= bytes.size()) fail(Err::CorruptImage, "truncated header: missing " + what);
    if (bytes[pos] < '0' || bytes[pos] > '9')
      fail(Err::CorruptImage, "malformed header: expected " + what);
    long value = 0;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
      value = value * 10 + (bytes[pos] - '0');
      if (value > 1'000'000'000) fail(Err::CorruptImage, what + " out of range");
      ++pos;
    }
    return static_cast<int>(value);
  }
};

GrayscaleImage decode_pgm(const std::vector<unsigned char>& bytes, const std::string& path) {
  const bool ascii = bytes[1] == '2';
  PnmScanner scan{bytes, 2};
  GrayscaleImage img;
  img.width = scan.next_int("width");
  img.height = scan.next_int("height");
  const int maxval = scan.next_int("maxval");
  if (img.width < 1 || img.height < 1) fail(Err::CorruptImage, "bad dimensions: " + path);
  if (maxval < 1 || maxval > 255)
    fail(Err::UnsupportedFormat, "PGM maxval must be <= 255: " + path);

  const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
  img.pixels.resize(count);
  if (ascii) {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = scan.next_int("pixel");
      if (v > maxval) fail(Err::CorruptImage, "pixel above maxval: " + path);
      img.pixels[i] = static_cast<std::uint8_t>(v);
    }
  } else {
    // Single whitespace byte separates maxval from the raster.
    if (scan.pos >= bytes.size() || !is_pnm_space(bytes[scan.pos]))
      fail(Err::CorruptImage, "missing raster separator: " + path);
    ++scan.pos;
    if (bytes.size() - scan.pos < count) fail(Err::CorruptImage, "truncated raster: " + path);
    std::memcpy(img.pixels.data(), bytes.data() + scan.pos, count);
  }
  return img;
}

struct PngMemoryReader {
  const unsigned char* data;
  std::size_t size;
  std::size_t pos;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t n) {
  auto* reader = static_cast<PngMemoryReader*>(png_get_io_ptr(png));
  if (reader->pos + n > reader->size) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, reader->data + reader->pos, n);
  reader->pos += n;
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  return static_cast<std::uint8_t>(std::lround(y));
}

GrayscaleImage decode_png(const std::vector<unsigned char>& bytes, const std::string& path) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(Err::IoError, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(Err::IoError, "libpng init failed");
  }

  std::vector<png_bytep> row_ptrs;
  GrayscaleImage img;
  PngMemoryReader reader{bytes.data(), bytes.size(), 0};

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Err::CorruptImage, "invalid PNG payload: " + path);
  }

  png_set_read_fn(png, &reader, png_read_from_memory);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);

  if (bit_depth != 8 ||
      (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB)) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Err::UnsupportedFormat, "only 8-bit grayscale or RGB PNG accepted: " + path);
  }

  const int channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
  std::vector<unsigned char> raster(static_cast<std::size_t>(width) * height * channels);
  row_ptrs.resize(height);
  for (png_uint_32 r = 0; r < height; ++r) {
    row_ptrs[r] = raster.data() + static_cast<std::size_t>(r) * width * channels;
  }
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.pixels.resize(static_cast<std::size_t>(width) * height);
  if (channels == 1) {
    std::memcpy(img.pixels.data(), raster.data(), img.pixels.size());
  } else {
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      img.pixels[i] = luma(raster[3 * i], raster[3 * i + 1], raster[3 * i + 2]);
    }
  }
  return img;
}

}  // namespace

GrayscaleImage load_grayscale(const std::string& path) {
  const std::vector<unsigned char> bytes = read_file_bytes(path);
  if (bytes.size() >= 8 && bytes[0] == 0x89 && bytes[1] == 'P' && bytes[2] == 'N' &&
      bytes[3] == 'G') {
    return decode_png(bytes, path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
    return decode_pgm(bytes, path);
  }
  fail(Err::UnsupportedFormat, "not a PGM (P2/P5) or PNG file: " + path);
}

void save_pgm(const std::string& path, const GrayscaleImage& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                    "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  write_file_bytes(path, out);
}

void save_pgm_mask(const std::string& path, const BinaryImage& img) {
  GrayscaleImage gray;
  gray.width = img.width;
  gray.height = img.height;
  gray.pixels.resize(img.pixels.size());
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    gray.pixels[i] = img.pixels[i] ? 255 : 0;
  }
  save_pgm(path, gray);
}

}  // namespace shapecat
