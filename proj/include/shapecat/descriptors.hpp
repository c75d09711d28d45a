#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shapecat/image.hpp"

namespace shapecat {

enum class Atom : unsigned char { H, V, L, R, T, B };

// Either a single atomic descriptor or an ordered concatenation of atoms.
class DescriptorKind {
 public:
  static DescriptorKind atomic(Atom atom);
  static DescriptorKind concat(std::vector<Atom> atoms);  // throws EmptyVector on empty list

  bool is_concat() const { return concat_; }
  std::span<const Atom> atoms() const { return atoms_; }

  // "h", "v", "l", "r", "t", "b" or "[h,v,t,b]".
  std::string name() const;
  static DescriptorKind parse(std::string_view text);

  bool operator==(const DescriptorKind&) const = default;

 private:
  std::vector<Atom> atoms_;
  bool concat_ = false;
};

char atom_letter(Atom atom);

struct FeatureVector {
  DescriptorKind kind;
  std::vector<double> values;
  bool normalized = false;
};

// Per-row foreground counts; length = height.
FeatureVector horizontal_projection(const BinaryImage& img);
// Per-column foreground counts; length = width.
FeatureVector vertical_projection(const BinaryImage& img);

enum class Side { Left, Right, Top, Bottom };

// Distance from the given image boundary to the object's outer edge, per
// column (Top/Bottom) or per row (Left/Right). A line with no foreground
// pixel yields the full dimension.
FeatureVector profile(const BinaryImage& img, Side side);

// Divide every value by `scale`; requires all values within [0, scale].
FeatureVector normalize(FeatureVector vec, double scale);

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;  // population m2
  double skewness = 0.0;  // m3 / m2^(3/2), 0 when m2 = 0
  double kurtosis = 0.0;  // m4 / m2^2 (non-excess), 0 when m2 = 0
};

MomentSummary moments(const FeatureVector& vec);

// Appends the parts in order; all parts must agree on the normalized flag.
FeatureVector concat(std::span<const FeatureVector> parts);

// Full dispatcher for 100x100 images: computes the atomic descriptor(s),
// normalizes by 100, concatenates when the kind asks for it.
FeatureVector extract(const BinaryImage& img, const DescriptorKind& kind);

std::size_t descriptor_length(const DescriptorKind& kind);  // on 100x100 input

}  // namespace shapecat
