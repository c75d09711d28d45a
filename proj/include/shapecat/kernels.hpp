#pragma once

#include <span>
#include <vector>

#include "shapecat/descriptors.hpp"
#include "shapecat/image.hpp"
#include "shapecat/matrix.hpp"

namespace shapecat::kernels {

// Data-parallel inner loops of the pipeline. Each function has a serial
// reference twin in kernels::ref with the identical contract; the unit tests
// assert bitwise equality and the bench tool compares timings. Every parallel
// loop writes disjoint output slots and keeps a fixed per-slot summation
// order, so the OpenMP versions are bit-identical to the reference at any
// thread count.

// One descriptor row per image.
FeatureMatrix extract_batch(std::span<const BinaryImage> images, const DescriptorKind& kind);

// Nearest centroid per point by squared Euclidean distance; ties go to the
// lowest centroid index. sqdist[i] is the distance to the chosen centroid.
void assign_points(const FeatureMatrix& points, const FeatureMatrix& centroids,
                   std::vector<int>& assignments, std::vector<double>& sqdist);

// out(s, j) = sigmoid(bias[j] + sum_i in(s, i) * W[i * cols + j]).
// `transposed` swaps the weight indexing to W[j * in.cols + ...]: with the
// row-major visible-by-hidden weight matrix, transposed=false maps visible
// activity to hidden probabilities and transposed=true maps hidden activity
// back to visible probabilities.
void affine_sigmoid_batch(const FeatureMatrix& in, std::span<const double> weights,
                          std::span<const double> bias, bool transposed, FeatureMatrix& out);

// grad[i * b.cols + j] += coeff * sum_s a(s, i) * b(s, j), accumulated in
// sample order.
void accumulate_outer(const FeatureMatrix& a, const FeatureMatrix& b, double coeff,
                      std::span<double> grad);

namespace ref {
FeatureMatrix extract_batch(std::span<const BinaryImage> images, const DescriptorKind& kind);
void assign_points(const FeatureMatrix& points, const FeatureMatrix& centroids,
                   std::vector<int>& assignments, std::vector<double>& sqdist);
void affine_sigmoid_batch(const FeatureMatrix& in, std::span<const double> weights,
                          std::span<const double> bias, bool transposed, FeatureMatrix& out);
void accumulate_outer(const FeatureMatrix& a, const FeatureMatrix& b, double coeff,
                      std::span<double> grad);
}  // namespace ref

}  // namespace shapecat::kernels
