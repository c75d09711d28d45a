#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "shapecat/image.hpp"

namespace shapecat {

// Deterministic silhouette fixtures.
struct Ellipse {
  double cx, cy, rx, ry;
};
struct Blob {
  std::uint64_t seed = 0;
  double roughness = 0.3;
};
struct StickFigure {
  std::uint64_t seed = 0;
};
using ShapeSpec = std::variant<Ellipse, Blob, StickFigure>;

// Rasterizes the spec onto a size x size canvas. Pixel (row y, col x) is on
// when its integer center satisfies the shape inequality. Pure function of
// (spec, size); always leaves at least one foreground pixel.
BinaryImage synth_silhouette(const ShapeSpec& spec, int size);

struct SynthDatasetOptions {
  // "caltech": all 25 subcategory directories, class-balanced counts with
  // within-class shape variety. "simple": ellipses vs. stick figures, one
  // directory per class, linearly separable.
  std::string flavor = "caltech";
  int per_class = 1250;  // total images per class
  int size = 100;
  std::uint64_t seed = 7;
};

// Writes a silhouette dataset (P5 PGM files, white foreground) laid out as
// one directory per subcategory, ready for scan_dataset.
void write_synth_dataset(const std::string& out_dir, const SynthDatasetOptions& options);

}  // namespace shapecat
