#include <cmath>
#include <vector>

#include "doctest.h"
#include "shapecat/descriptors.hpp"
#include "shapecat/error.hpp"
#include "shapecat/rng.hpp"
#include "shapecat/synth.hpp"

using namespace shapecat;

namespace {

BinaryImage from_rows(const std::vector<std::string>& rows) {
  BinaryImage img;
  img.height = static_cast<int>(rows.size());
  img.width = static_cast<int>(rows[0].size());
  for (const std::string& row : rows) {
    for (char c : row) img.pixels.push_back(c == '1' ? 1 : 0);
  }
  return img;
}

BinaryImage random_image(Rng& rng, int max_side = 40) {
  BinaryImage img;
  img.width = 1 + static_cast<int>(rng.uniform_index(max_side));
  img.height = 1 + static_cast<int>(rng.uniform_index(max_side));
  const double density = rng.uniform01();
  for (int i = 0; i < img.width * img.height; ++i) {
    img.pixels.push_back(rng.bernoulli(density) ? 1 : 0);
  }
  return img;
}

// Independent extended-precision moment computation.
struct OracleMoments {
  double mean, variance, skewness, kurtosis;
};

OracleMoments brute_force_moments(const std::vector<double>& values) {
  const long double n = static_cast<long double>(values.size());
  long double sum = 0.0L;
  for (double v : values) sum += v;
  const long double mean = sum / n;
  long double m2 = 0.0L, m3 = 0.0L, m4 = 0.0L;
  for (double v : values) {
    const long double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  OracleMoments out{static_cast<double>(mean), static_cast<double>(m2), 0.0, 0.0};
  if (m2 > 0.0L) {
    out.skewness = static_cast<double>(m3 / std::pow(m2, 1.5L));
    out.kurtosis = static_cast<double>(m4 / (m2 * m2));
  }
  return out;
}

}  // namespace

TEST_CASE("projections count per line") {
  const BinaryImage img = from_rows({"0110", "1111", "0010"});

  const FeatureVector h = horizontal_projection(img);
  CHECK(h.values == std::vector<double>{2, 4, 1});
  CHECK(h.kind == DescriptorKind::atomic(Atom::H));
  CHECK_FALSE(h.normalized);

  const FeatureVector v = vertical_projection(img);
  CHECK(v.values == std::vector<double>{1, 2, 3, 1});

  const BinaryImage ones = from_rows({"111", "111", "111"});
  CHECK(horizontal_projection(ones).values == std::vector<double>{3, 3, 3});
  CHECK(vertical_projection(ones).values == std::vector<double>{3, 3, 3});

  const BinaryImage zeros = from_rows({"000", "000"});
  CHECK(horizontal_projection(zeros).values == std::vector<double>{0, 0});

  BinaryImage one_hot = from_rows({"0000", "0000", "0000"});
  one_hot.at(0, 2) = 1;
  CHECK(vertical_projection(one_hot).values == std::vector<double>{0, 0, 1, 0});
}

TEST_CASE("profiles measure boundary distance with empty-line convention") {
  const BinaryImage img = from_rows({"0110", "1111", "0010"});
  CHECK(profile(img, Side::Top).values == std::vector<double>{1, 0, 0, 1});
  CHECK(profile(img, Side::Left).values == std::vector<double>{1, 0, 2});
  CHECK(profile(img, Side::Bottom).values == std::vector<double>{1, 1, 0, 1});
  CHECK(profile(img, Side::Right).values == std::vector<double>{1, 0, 1});

  const BinaryImage zeros = from_rows({"0000", "0000", "0000"});
  CHECK(profile(zeros, Side::Top).values == std::vector<double>{3, 3, 3, 3});
  CHECK(profile(zeros, Side::Left).values == std::vector<double>{4, 4, 4});
}

TEST_CASE("projection and profile identities on random images") {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const BinaryImage img = random_image(rng);

    const FeatureVector h = horizontal_projection(img);
    const FeatureVector v = vertical_projection(img);
    double h_sum = 0, v_sum = 0;
    for (double x : h.values) h_sum += x;
    for (double x : v.values) v_sum += x;
    const double on = static_cast<double>(on_pixel_count(img));
    CHECK(h_sum == on);
    CHECK(v_sum == on);

    // transpose swaps the projections
    const BinaryImage tr = transpose(img);
    CHECK(horizontal_projection(tr).values == v.values);
    CHECK(vertical_projection(tr).values == h.values);

    // flips swap opposing profiles
    CHECK(profile(img, Side::Top).values == profile(flip_vertical(img), Side::Bottom).values);
    CHECK(profile(img, Side::Left).values ==
          profile(flip_horizontal(img), Side::Right).values);

    // top + bottom + column mass never exceeds the height; equality iff the
    // column's pixels form one contiguous run
    const FeatureVector top = profile(img, Side::Top);
    const FeatureVector bottom = profile(img, Side::Bottom);
    for (int c = 0; c < img.width; ++c) {
      int mass = 0;
      int runs = 0;
      bool inside = false;
      for (int r = 0; r < img.height; ++r) {
        if (img.at(r, c)) {
          ++mass;
          if (!inside) ++runs;
          inside = true;
        } else {
          inside = false;
        }
      }
      if (mass == 0) continue;  // empty columns report full height on both sides
      const double slack = img.height - (top.values[c] + bottom.values[c] + mass);
      CHECK(slack >= 0);
      CHECK((slack == 0) == (runs == 1));
    }

    // range bounds
    for (double x : h.values) CHECK((0 <= x && x <= img.width));
    for (double x : top.values) CHECK((0 <= x && x <= img.height));
  }
}

TEST_CASE("normalize divides and validates") {
  FeatureVector vec{DescriptorKind::atomic(Atom::H), {2, 4, 1}, false};
  const FeatureVector scaled = normalize(vec, 4);
  CHECK(scaled.values == std::vector<double>{0.5, 1.0, 0.25});
  CHECK(scaled.normalized);

  FeatureVector zeros{DescriptorKind::atomic(Atom::V), {0, 0, 0}, false};
  CHECK(normalize(zeros, 77).values == std::vector<double>{0, 0, 0});

  FeatureVector bad{DescriptorKind::atomic(Atom::H), {5}, false};
  CHECK_THROWS_AS(normalize(bad, 4), Error);
}

TEST_CASE("moments against hand-derived values") {
  const FeatureVector vec{DescriptorKind::atomic(Atom::H), {2, 4, 1}, false};
  const MomentSummary m = moments(vec);
  CHECK(m.mean == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
  CHECK(m.variance == doctest::Approx(14.0 / 9.0).epsilon(1e-12));
  CHECK(m.skewness == doctest::Approx(10.0 / (7.0 * std::sqrt(14.0))).epsilon(1e-12));
  CHECK(m.kurtosis == doctest::Approx(1.5).epsilon(1e-12));

  const FeatureVector flat{DescriptorKind::atomic(Atom::H), {5, 5, 5, 5}, false};
  const MomentSummary mc = moments(flat);
  CHECK(mc.mean == 5.0);
  CHECK(mc.variance == 0.0);
  CHECK(mc.skewness == 0.0);
  CHECK(mc.kurtosis == 0.0);

  const FeatureVector pair{DescriptorKind::atomic(Atom::H), {-1, 1}, false};
  const MomentSummary mp = moments(pair);
  CHECK(mp.mean == 0.0);
  CHECK(mp.variance == 1.0);
  CHECK(mp.skewness == 0.0);
  CHECK(mp.kurtosis == 1.0);

  const FeatureVector empty{DescriptorKind::atomic(Atom::H), {}, false};
  CHECK_THROWS_AS(moments(empty), Error);
}

TEST_CASE("moments match brute-force oracle on random vectors") {
  Rng rng(20240817);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> values(100);
    for (double& v : values) v = rng.uniform01();
    const FeatureVector vec{DescriptorKind::atomic(Atom::V), values, true};
    const MomentSummary m = moments(vec);
    const OracleMoments oracle = brute_force_moments(values);
    CHECK(m.mean == doctest::Approx(oracle.mean).epsilon(1e-9));
    CHECK(m.variance == doctest::Approx(oracle.variance).epsilon(1e-9));
    CHECK(m.skewness == doctest::Approx(oracle.skewness).epsilon(1e-9));
    CHECK(m.kurtosis == doctest::Approx(oracle.kurtosis).epsilon(1e-9));
  }
}

TEST_CASE("concat appends in order and checks flags") {
  const FeatureVector a{DescriptorKind::atomic(Atom::H), {1, 2}, true};
  const FeatureVector b{DescriptorKind::atomic(Atom::V), {3}, true};
  const std::vector<FeatureVector> parts{a, b};
  const FeatureVector joined = concat(parts);
  CHECK(joined.values == std::vector<double>{1, 2, 3});
  CHECK(joined.kind.is_concat());
  CHECK(joined.kind.name() == "[h,v]");

  const std::vector<FeatureVector> single{a};
  const FeatureVector unit = concat(single);
  CHECK(unit.values == a.values);
  CHECK(unit.kind.is_concat());

  const FeatureVector raw{DescriptorKind::atomic(Atom::T), {0.5}, false};
  const std::vector<FeatureVector> mixed{a, raw};
  CHECK_THROWS_WITH_AS(concat(mixed), doctest::Contains("MixedNormalization"), Error);
}

TEST_CASE("extract dispatches, normalizes, and stays pure") {
  BinaryImage ones;
  ones.width = ones.height = 100;
  ones.pixels.assign(100 * 100, 1);
  const FeatureVector h = extract(ones, DescriptorKind::atomic(Atom::H));
  REQUIRE(h.values.size() == 100);
  for (double v : h.values) CHECK(v == 1.0);

  BinaryImage zeros;
  zeros.width = zeros.height = 100;
  zeros.pixels.assign(100 * 100, 0);
  const FeatureVector t = extract(zeros, DescriptorKind::atomic(Atom::T));
  for (double v : t.values) CHECK(v == 1.0);  // empty-column convention, 100/100

  // ellipse fixture: vertical projection is symmetric and peaks at center
  const BinaryImage ell = synth_silhouette(Ellipse{50, 50, 30, 20}, 100);
  const FeatureVector v = extract(ell, DescriptorKind::atomic(Atom::V));
  for (int j = 1; j <= 49; ++j) {  // columns mirror around x = 50
    CHECK(v.values[j] == v.values[100 - j]);
  }
  double best = -1;
  int best_idx = -1;
  for (int j = 0; j < 100; ++j) {
    if (v.values[j] > best) {
      best = v.values[j];
      best_idx = j;
    }
  }
  CHECK(best_idx == 50);
  CHECK(best == doctest::Approx(0.41).epsilon(1e-12));  // rows 30..70 inclusive

  const DescriptorKind hvtb = DescriptorKind::concat({Atom::H, Atom::V, Atom::T, Atom::B});
  const FeatureVector joined = extract(ell, hvtb);
  REQUIRE(joined.values.size() == 400);
  CHECK(joined.kind.name() == "[h,v,t,b]");
  // purity
  CHECK(extract(ell, hvtb).values == joined.values);

  BinaryImage wrong;
  wrong.width = wrong.height = 50;
  wrong.pixels.assign(50 * 50, 0);
  CHECK_THROWS_WITH_AS(extract(wrong, hvtb), doctest::Contains("WrongDimensions"), Error);
}

TEST_CASE("descriptor kind parsing") {
  CHECK(DescriptorKind::parse("v") == DescriptorKind::atomic(Atom::V));
  CHECK(DescriptorKind::parse("[h,v,t,b]").name() == "[h,v,t,b]");
  CHECK(DescriptorKind::parse("[h, v]").name() == "[h,v]");
  CHECK_THROWS_AS(DescriptorKind::parse("x"), Error);
  CHECK_THROWS_AS(DescriptorKind::parse(""), Error);
}
