#pragma once

#include <string>

#include "shapecat/image.hpp"

namespace shapecat {

// Decodes PGM (P2/P5, maxval <= 255) or PNG (8-bit grayscale or RGB).
// Color input is converted with the 0.299/0.587/0.114 luma weights,
// rounded to nearest.
GrayscaleImage load_grayscale(const std::string& path);

// Binary PGM (P5) writers; used by fixture generation and the synth command.
void save_pgm(const std::string& path, const GrayscaleImage& img);
void save_pgm_mask(const std::string& path, const BinaryImage& img);

}  // namespace shapecat
