#include "shapecat/descriptors.hpp"

#include <cmath>

#include "shapecat/error.hpp"

namespace shapecat {

DescriptorKind DescriptorKind::atomic(Atom atom) {
  DescriptorKind kind;
  kind.atoms_ = {atom};
  kind.concat_ = false;
  return kind;
}

DescriptorKind DescriptorKind::concat(std::vector<Atom> atoms) {
  if (atoms.empty()) fail(Err::EmptyVector, "concat kind needs at least one atom");
  DescriptorKind kind;
  kind.atoms_ = std::move(atoms);
  kind.concat_ = true;
  return kind;
}

char atom_letter(Atom atom) {
  switch (atom) {
    case Atom::H: return 'h';
    case Atom::V: return 'v';
    case Atom::L: return 'l';
    case Atom::R: return 'r';
    case Atom::T: return 't';
    case Atom::B: return 'b';
  }
  return '?';
}

namespace {

Atom atom_from_letter(char c) {
  switch (c) {
    case 'h': return Atom::H;
    case 'v': return Atom::V;
    case 'l': return Atom::L;
    case 'r': return Atom::R;
    case 't': return Atom::T;
    case 'b': return Atom::B;
    default: fail(Err::InvalidArgument, std::string("unknown descriptor letter '") + c + "'");
  }
}

}  // namespace

std::string DescriptorKind::name() const {
  if (!concat_) return std::string(1, atom_letter(atoms_[0]));
  std::string out = "[";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) out += ',';
    out += atom_letter(atoms_[i]);
  }
  out += ']';
  return out;
}

DescriptorKind DescriptorKind::parse(std::string_view text) {
  if (text.size() == 1) return atomic(atom_from_letter(text[0]));
  if (text.size() >= 3 && text.front() == '[' && text.back() == ']') {
    std::vector<Atom> atoms;
    for (std::size_t i = 1; i + 1 < text.size(); ++i) {
      if (text[i] == ',' || text[i] == ' ') continue;
      atoms.push_back(atom_from_letter(text[i]));
    }
    return concat(std::move(atoms));
  }
  fail(Err::InvalidArgument, "cannot parse descriptor kind: " + std::string(text));
}

FeatureVector horizontal_projection(const BinaryImage& img) {
  FeatureVector out{DescriptorKind::atomic(Atom::H), std::vector<double>(img.height, 0.0),
                    false};
  for (int r = 0; r < img.height; ++r) {
    long long count = 0;
    for (int c = 0; c < img.width; ++c) count += img.at(r, c);
    out.values[r] = static_cast<double>(count);
  }
  return out;
}

FeatureVector vertical_projection(const BinaryImage& img) {
  FeatureVector out{DescriptorKind::atomic(Atom::V), std::vector<double>(img.width, 0.0),
                    false};
  for (int c = 0; c < img.width; ++c) {
    long long count = 0;
    for (int r = 0; r < img.height; ++r) count += img.at(r, c);
    out.values[c] = static_cast<double>(count);
  }
  return out;
}

FeatureVector profile(const BinaryImage& img, Side side) {
  const bool per_column = side == Side::Top || side == Side::Bottom;
  const int lines = per_column ? img.width : img.height;
  const int depth = per_column ? img.height : img.width;

  Atom atom = Atom::T;
  if (side == Side::Bottom) atom = Atom::B;
  if (side == Side::Left) atom = Atom::L;
  if (side == Side::Right) atom = Atom::R;

  FeatureVector out{DescriptorKind::atomic(atom), std::vector<double>(lines, 0.0), false};
  for (int line = 0; line < lines; ++line) {
    int distance = depth;  // stays at full depth when the line is empty
    for (int step = 0; step < depth; ++step) {
      int r, c;
      switch (side) {
        case Side::Top: r = step, c = line; break;
        case Side::Bottom: r = depth - 1 - step, c = line; break;
        case Side::Left: r = line, c = step; break;
        default: r = line, c = depth - 1 - step; break;
      }
      if (img.at(r, c)) {
        distance = step;
        break;
      }
    }
    out.values[line] = static_cast<double>(distance);
  }
  return out;
}

FeatureVector normalize(FeatureVector vec, double scale) {
  if (scale <= 0.0) fail(Err::InvalidArgument, "normalization scale must be positive");
  for (double& v : vec.values) {
    if (v < 0.0 || v > scale) fail(Err::OutOfRange, "value outside [0, scale]");
    v /= scale;
  }
  vec.normalized = true;
  return vec;
}

MomentSummary moments(const FeatureVector& vec) {
  if (vec.values.empty()) fail(Err::EmptyVector, "moments of an empty vector");
  const double n = static_cast<double>(vec.values.size());

  MomentSummary m;
  double sum = 0.0;
  for (double v : vec.values) sum += v;
  m.mean = sum / n;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : vec.values) {
    const double d = v - m.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  m.variance = m2;
  if (m2 > 0.0) {
    m.skewness = m3 / std::pow(m2, 1.5);
    m.kurtosis = m4 / (m2 * m2);
  }
  return m;
}

FeatureVector concat(std::span<const FeatureVector> parts) {
  if (parts.empty()) fail(Err::EmptyVector, "concat of zero parts");
  std::vector<Atom> atoms;
  std::vector<double> values;
  const bool normalized = parts.front().normalized;
  for (const FeatureVector& part : parts) {
    if (part.normalized != normalized)
      fail(Err::MixedNormalization, "cannot concatenate raw with normalized parts");
    if (part.kind.is_concat())
      fail(Err::InvalidArgument, "concat parts must be atomic descriptors");
    atoms.push_back(part.kind.atoms()[0]);
    values.insert(values.end(), part.values.begin(), part.values.end());
  }
  return {DescriptorKind::concat(std::move(atoms)), std::move(values), normalized};
}

namespace {

FeatureVector atomic_raw(const BinaryImage& img, Atom atom) {
  switch (atom) {
    case Atom::H: return horizontal_projection(img);
    case Atom::V: return vertical_projection(img);
    case Atom::L: return profile(img, Side::Left);
    case Atom::R: return profile(img, Side::Right);
    case Atom::T: return profile(img, Side::Top);
    case Atom::B: return profile(img, Side::Bottom);
  }
  fail(Err::InvalidArgument, "bad atom");
}

}  // namespace

FeatureVector extract(const BinaryImage& img, const DescriptorKind& kind) {
  if (img.width != kStandardSize || img.height != kStandardSize)
    fail(Err::WrongDimensions, "descriptors are defined on 100x100 images");
  std::vector<FeatureVector> parts;
  parts.reserve(kind.atoms().size());
  for (Atom atom : kind.atoms()) {
    parts.push_back(normalize(atomic_raw(img, atom), kStandardSize));
  }
  if (!kind.is_concat()) return std::move(parts[0]);
  return concat(parts);
}

std::size_t descriptor_length(const DescriptorKind& kind) {
  return kind.atoms().size() * kStandardSize;
}

}  // namespace shapecat
