// Times each parallel kernel against its serial reference and checks that
// the outputs match bit for bit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "shapecat/image.hpp"
#include "shapecat/kernels.hpp"
#include "shapecat/parallel.hpp"
#include "shapecat/rbm.hpp"
#include "shapecat/rng.hpp"
#include "shapecat/synth.hpp"

using namespace shapecat;
using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
  fn();  // warm-up
  const auto start = clock_type::now();
  for (int i = 0; i < repeats; ++i) fn();
  const auto stop = clock_type::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / repeats;
}

double max_abs_diff(const FeatureMatrix& a, const FeatureMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = std::abs(a.data[i] - b.data[i]);
    if (d > worst) worst = d;
  }
  return worst;
}

void report(const char* name, double serial_ms, double parallel_ms, double diff) {
  std::printf("%-28s %10.2f ms %10.2f ms %8.2fx %12g\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, diff);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", par::thread_cap());
  std::printf("%-28s %13s %13s %9s %12s\n", "kernel", "serial", "openmp", "speedup",
              "max|diff|");

  // batch descriptor extraction over 600 silhouettes
  std::vector<BinaryImage> images;
  for (int i = 0; i < 600; ++i) {
    images.push_back(synth_silhouette(Blob{static_cast<std::uint64_t>(i), 0.3}, 100));
  }
  const DescriptorKind hvtb =
      DescriptorKind::concat({Atom::H, Atom::V, Atom::T, Atom::B});
  FeatureMatrix serial_feats, parallel_feats;
  const double t1s = time_ms([&] { serial_feats = kernels::ref::extract_batch(images, hvtb); }, 5);
  const double t1p = time_ms([&] { parallel_feats = kernels::extract_batch(images, hvtb); }, 5);
  report("extract_batch [h,v,t,b]", t1s, t1p, max_abs_diff(serial_feats, parallel_feats));

  // centroid assignment, 600 points x 400 dims x 16 centroids
  Rng rng(11);
  FeatureMatrix centroids(16, serial_feats.cols);
  for (double& v : centroids.data) v = rng.uniform01();
  std::vector<int> assign_s, assign_p;
  std::vector<double> dist_s, dist_p;
  const double t2s =
      time_ms([&] { kernels::ref::assign_points(serial_feats, centroids, assign_s, dist_s); }, 20);
  const double t2p =
      time_ms([&] { kernels::assign_points(serial_feats, centroids, assign_p, dist_p); }, 20);
  double assign_diff = assign_s == assign_p ? 0.0 : 1.0;
  for (std::size_t i = 0; i < dist_s.size(); ++i) {
    assign_diff = std::max(assign_diff, std::abs(dist_s[i] - dist_p[i]));
  }
  report("assign_points 600x400 k16", t2s, t2p, assign_diff);

  // RBM batch conditionals, 400 visible -> 256 hidden on 600 samples
  const RbmModel model = rbm_init(serial_feats.cols, 256, 3);
  FeatureMatrix hidden_s(serial_feats.rows, 256), hidden_p(serial_feats.rows, 256);
  const double t3s = time_ms(
      [&] {
        kernels::ref::affine_sigmoid_batch(serial_feats, model.weights, model.hidden_bias,
                                           false, hidden_s);
      },
      5);
  const double t3p = time_ms(
      [&] {
        kernels::affine_sigmoid_batch(serial_feats, model.weights, model.hidden_bias, false,
                                      hidden_p);
      },
      5);
  report("affine_sigmoid 400->256", t3s, t3p, max_abs_diff(hidden_s, hidden_p));

  // gradient accumulation for the same batch
  std::vector<double> grad_s(model.weights.size(), 0.0), grad_p(model.weights.size(), 0.0);
  const double t4s = time_ms(
      [&] {
        std::fill(grad_s.begin(), grad_s.end(), 0.0);
        kernels::ref::accumulate_outer(serial_feats, hidden_s, 0.002, grad_s);
      },
      5);
  const double t4p = time_ms(
      [&] {
        std::fill(grad_p.begin(), grad_p.end(), 0.0);
        kernels::accumulate_outer(serial_feats, hidden_p, 0.002, grad_p);
      },
      5);
  double grad_diff = 0.0;
  for (std::size_t i = 0; i < grad_s.size(); ++i) {
    grad_diff = std::max(grad_diff, std::abs(grad_s[i] - grad_p[i]));
  }
  report("accumulate_outer 400x256", t4s, t4p, grad_diff);

  return 0;
}
