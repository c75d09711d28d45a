#pragma once

#include <cstdint>
#include <vector>

namespace shapecat {

struct GrayscaleImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, intensity 0..255

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
};

// Silhouette mask. Pixel values are exactly 0 or 1.
struct BinaryImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  std::uint8_t& at(int row, int col) {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  bool operator==(const BinaryImage&) const = default;
};

enum class Foreground { Bright, Dark };

// Bright: on iff intensity >= threshold. Dark: on iff intensity < threshold.
BinaryImage binarize(const GrayscaleImage& img, int threshold, Foreground foreground);

// Nearest-neighbor resample. Output pixel (r, c) reads source pixel
// (floor((r + 0.5) * src_h / dst_h), floor((c + 0.5) * src_w / dst_w)).
BinaryImage rescale(const BinaryImage& img, int target_w, int target_h);

BinaryImage transpose(const BinaryImage& img);
BinaryImage flip_horizontal(const BinaryImage& img);
BinaryImage flip_vertical(const BinaryImage& img);

long long on_pixel_count(const BinaryImage& img);

inline constexpr int kStandardSize = 100;  // working resolution for descriptors

}  // namespace shapecat
