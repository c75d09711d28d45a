#include "shapecat/kernels.hpp"

#include <cmath>
#include <cstring>

#include "shapecat/error.hpp"
#include "shapecat/parallel.hpp"

namespace shapecat::kernels {
namespace detail {

void extract_row(const BinaryImage& img, const DescriptorKind& kind, double* out) {
  const FeatureVector features = extract(img, kind);
  std::memcpy(out, features.values.data(), features.values.size() * sizeof(double));
}

int nearest_centroid(const double* point, const FeatureMatrix& centroids, double* best_dist) {
  int best = 0;
  double best_d = -1.0;
  for (std::size_t c = 0; c < centroids.rows; ++c) {
    const double* centroid = centroids.row(c);
    double d = 0.0;
    for (std::size_t j = 0; j < centroids.cols; ++j) {
      const double diff = point[j] - centroid[j];
      d += diff * diff;
    }
    if (best_d < 0.0 || d < best_d) {  // strict < keeps ties at the lowest index
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  *best_dist = best_d;
  return best;
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void sigmoid_row(const FeatureMatrix& in, std::span<const double> weights,
                 std::span<const double> bias, bool transposed, std::size_t sample,
                 FeatureMatrix& out) {
  const double* source = in.row(sample);
  double* target = out.row(sample);
  const std::size_t in_dim = in.cols;
  const std::size_t out_dim = out.cols;
  for (std::size_t j = 0; j < out_dim; ++j) target[j] = bias[j];
  if (!transposed) {
    // weights indexed [i * out_dim + j]
    for (std::size_t i = 0; i < in_dim; ++i) {
      const double v = source[i];
      if (v == 0.0) continue;
      const double* w = weights.data() + i * out_dim;
      for (std::size_t j = 0; j < out_dim; ++j) target[j] += v * w[j];
    }
  } else {
    // weights indexed [j * in_dim + i]
    for (std::size_t j = 0; j < out_dim; ++j) {
      const double* w = weights.data() + j * in_dim;
      double acc = 0.0;
      for (std::size_t i = 0; i < in_dim; ++i) acc += source[i] * w[i];
      target[j] += acc;
    }
  }
  for (std::size_t j = 0; j < out_dim; ++j) target[j] = sigmoid(target[j]);
}

void outer_row(const FeatureMatrix& a, const FeatureMatrix& b, double coeff, std::size_t i,
               std::span<double> grad) {
  double* g = grad.data() + i * b.cols;
  for (std::size_t s = 0; s < a.rows; ++s) {
    const double ai = a.at(s, i);
    if (ai == 0.0) continue;
    const double* brow = b.row(s);
    for (std::size_t j = 0; j < b.cols; ++j) g[j] += coeff * ai * brow[j];
  }
}

void check_affine_shapes(const FeatureMatrix& in, std::span<const double> weights,
                         std::span<const double> bias, const FeatureMatrix& out) {
  if (weights.size() != in.cols * out.cols || bias.size() != out.cols ||
      out.rows != in.rows) {
    fail(Err::DimensionMismatch, "affine_sigmoid_batch shape mismatch");
  }
}

}  // namespace detail

FeatureMatrix extract_batch(std::span<const BinaryImage> images, const DescriptorKind& kind) {
  FeatureMatrix out(images.size(), descriptor_length(kind));
  par::parallel_for(images.size(),
                    [&](std::size_t i) { detail::extract_row(images[i], kind, out.row(i)); });
  return out;
}

void assign_points(const FeatureMatrix& points, const FeatureMatrix& centroids,
                   std::vector<int>& assignments, std::vector<double>& sqdist) {
  if (points.cols != centroids.cols) fail(Err::DimensionMismatch, "assign_points dimensions");
  assignments.assign(points.rows, 0);
  sqdist.assign(points.rows, 0.0);
  par::parallel_for(points.rows, [&](std::size_t i) {
    assignments[i] = detail::nearest_centroid(points.row(i), centroids, &sqdist[i]);
  });
}

void affine_sigmoid_batch(const FeatureMatrix& in, std::span<const double> weights,
                          std::span<const double> bias, bool transposed, FeatureMatrix& out) {
  detail::check_affine_shapes(in, weights, bias, out);
  par::parallel_for(in.rows, [&](std::size_t s) {
    detail::sigmoid_row(in, weights, bias, transposed, s, out);
  });
}

void accumulate_outer(const FeatureMatrix& a, const FeatureMatrix& b, double coeff,
                      std::span<double> grad) {
  if (a.rows != b.rows || grad.size() != a.cols * b.cols)
    fail(Err::DimensionMismatch, "accumulate_outer shapes");
  par::parallel_for(a.cols, [&](std::size_t i) { detail::outer_row(a, b, coeff, i, grad); });
}

namespace ref {

FeatureMatrix extract_batch(std::span<const BinaryImage> images, const DescriptorKind& kind) {
  FeatureMatrix out(images.size(), descriptor_length(kind));
  for (std::size_t i = 0; i < images.size(); ++i) {
    detail::extract_row(images[i], kind, out.row(i));
  }
  return out;
}

void assign_points(const FeatureMatrix& points, const FeatureMatrix& centroids,
                   std::vector<int>& assignments, std::vector<double>& sqdist) {
  if (points.cols != centroids.cols) fail(Err::DimensionMismatch, "assign_points dimensions");
  assignments.assign(points.rows, 0);
  sqdist.assign(points.rows, 0.0);
  for (std::size_t i = 0; i < points.rows; ++i) {
    assignments[i] = detail::nearest_centroid(points.row(i), centroids, &sqdist[i]);
  }
}

void affine_sigmoid_batch(const FeatureMatrix& in, std::span<const double> weights,
                          std::span<const double> bias, bool transposed, FeatureMatrix& out) {
  detail::check_affine_shapes(in, weights, bias, out);
  for (std::size_t s = 0; s < in.rows; ++s) {
    detail::sigmoid_row(in, weights, bias, transposed, s, out);
  }
}

void accumulate_outer(const FeatureMatrix& a, const FeatureMatrix& b, double coeff,
                      std::span<double> grad) {
  if (a.rows != b.rows || grad.size() != a.cols * b.cols)
    fail(Err::DimensionMismatch, "accumulate_outer shapes");
  for (std::size_t i = 0; i < a.cols; ++i) {
    detail::outer_row(a, b, coeff, i, grad);
  }
}

}  // namespace ref
}  // namespace shapecat::kernels
