#include "shapecat/image.hpp"

#include "shapecat/error.hpp"

namespace shapecat {

BinaryImage binarize(const GrayscaleImage& img, int threshold, Foreground foreground) {
  BinaryImage out;
  out.width = img.width;
  out.height = img.height;
  out.pixels.resize(img.pixels.size());
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const bool on = foreground == Foreground::Bright ? img.pixels[i] >= threshold
                                                     : img.pixels[i] < threshold;
    out.pixels[i] = on ? 1 : 0;
  }
  return out;
}

BinaryImage rescale(const BinaryImage& img, int target_w, int target_h) {
  if (target_w <= 0 || target_h <= 0) fail(Err::ZeroDimension, "rescale target must be >= 1");
  if (target_w == img.width && target_h == img.height) return img;

  BinaryImage out;
  out.width = target_w;
  out.height = target_h;
  out.pixels.resize(static_cast<std::size_t>(target_w) * target_h);
  for (int r = 0; r < target_h; ++r) {
    int src_r = static_cast<int>((r + 0.5) * img.height / target_h);
    if (src_r >= img.height) src_r = img.height - 1;
    for (int c = 0; c < target_w; ++c) {
      int src_c = static_cast<int>((c + 0.5) * img.width / target_w);
      if (src_c >= img.width) src_c = img.width - 1;
      out.at(r, c) = img.at(src_r, src_c);
    }
  }
  return out;
}

BinaryImage transpose(const BinaryImage& img) {
  BinaryImage out;
  out.width = img.height;
  out.height = img.width;
  out.pixels.resize(img.pixels.size());
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) out.at(c, r) = img.at(r, c);
  return out;
}

BinaryImage flip_horizontal(const BinaryImage& img) {
  BinaryImage out = img;
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) out.at(r, c) = img.at(r, img.width - 1 - c);
  return out;
}

BinaryImage flip_vertical(const BinaryImage& img) {
  BinaryImage out = img;
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) out.at(r, c) = img.at(img.height - 1 - r, c);
  return out;
}

long long on_pixel_count(const BinaryImage& img) {
  long long count = 0;
  for (std::uint8_t p : img.pixels) count += p;
  return count;
}

}  // namespace shapecat
