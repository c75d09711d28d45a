#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "shapecat/error.hpp"
#include "shapecat/image.hpp"
#include "shapecat/image_io.hpp"
#include "shapecat/rng.hpp"
#include "shapecat/util.hpp"

using namespace shapecat;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "shapecat_image_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_temp(const std::string& name, std::string_view bytes) {
  const fs::path path = temp_dir() / name;
  write_file_bytes(path.string(), bytes);
  return path.string();
}

BinaryImage from_rows(const std::vector<std::string>& rows) {
  BinaryImage img;
  img.height = static_cast<int>(rows.size());
  img.width = static_cast<int>(rows[0].size());
  for (const std::string& row : rows) {
    for (char c : row) img.pixels.push_back(c == '1' ? 1 : 0);
  }
  return img;
}

}  // namespace

TEST_CASE("binarize thresholds and polarity") {
  const GrayscaleImage img{2, 2, {0, 255, 128, 7}};

  const BinaryImage bright = binarize(img, 128, Foreground::Bright);
  CHECK(bright.pixels == std::vector<std::uint8_t>{0, 1, 1, 0});

  // threshold 0 in bright mode turns every pixel on
  const BinaryImage all = binarize(img, 0, Foreground::Bright);
  CHECK(all.pixels == std::vector<std::uint8_t>{1, 1, 1, 1});

  const GrayscaleImage strip{3, 1, {100, 128, 200}};
  const BinaryImage dark = binarize(strip, 128, Foreground::Dark);
  CHECK(dark.pixels == std::vector<std::uint8_t>{1, 0, 0});
}

TEST_CASE("binarize is idempotent on mask range") {
  const GrayscaleImage img{2, 2, {0, 255, 128, 7}};
  const BinaryImage once = binarize(img, 128, Foreground::Bright);
  GrayscaleImage as_gray{once.width, once.height, once.pixels};
  const BinaryImage twice = binarize(as_gray, 1, Foreground::Bright);
  CHECK(twice.pixels == once.pixels);
}

TEST_CASE("rescale identity and integer upscale") {
  Rng rng(42);
  BinaryImage img;
  img.width = img.height = 100;
  for (int i = 0; i < 100 * 100; ++i) img.pixels.push_back(rng.bernoulli(0.4) ? 1 : 0);
  CHECK(rescale(img, 100, 100) == img);

  const BinaryImage small = from_rows({"10", "01"});
  const BinaryImage big = rescale(small, 4, 4);
  const BinaryImage expected = from_rows({"1100", "1100", "0011", "0011"});
  CHECK(big == expected);
}

TEST_CASE("rescale samples pixel centers") {
  // 200x200 checkerboard down to 100x100: (r+0.5)*2 and (c+0.5)*2 both floor
  // to odd indices, so every sampled parity is (odd+odd) % 2 = 0.
  BinaryImage board;
  board.width = board.height = 200;
  board.pixels.resize(200 * 200);
  for (int r = 0; r < 200; ++r)
    for (int c = 0; c < 200; ++c) board.at(r, c) = static_cast<std::uint8_t>((r + c) % 2);

  const BinaryImage down = rescale(board, 100, 100);
  for (std::uint8_t p : down.pixels) CHECK(p == 0);

  CHECK_THROWS_AS(rescale(board, 0, 100), Error);
}

TEST_CASE("rescale emits only mask values") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    BinaryImage img;
    img.width = 1 + static_cast<int>(rng.uniform_index(40));
    img.height = 1 + static_cast<int>(rng.uniform_index(40));
    for (int i = 0; i < img.width * img.height; ++i)
      img.pixels.push_back(rng.bernoulli(0.5) ? 1 : 0);
    const int tw = 1 + static_cast<int>(rng.uniform_index(50));
    const int th = 1 + static_cast<int>(rng.uniform_index(50));
    const BinaryImage out = rescale(img, tw, th);
    REQUIRE(out.pixels.size() == static_cast<std::size_t>(tw) * th);
    for (std::uint8_t p : out.pixels) CHECK((p == 0 || p == 1));
  }
}

TEST_CASE("PGM decoding: P5, P2, comments, errors") {
  const std::string p5 = std::string("P5\n2 2\n255\n") + '\0' + '\xff' + '\x80' + '\x07';
  const GrayscaleImage img = load_grayscale(write_temp("a.pgm", p5));
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.pixels == std::vector<std::uint8_t>{0, 255, 128, 7});

  const GrayscaleImage ascii =
      load_grayscale(write_temp("b.pgm", "P2\n# comment\n3 1\n255\n12 0 255\n"));
  CHECK(ascii.pixels == std::vector<std::uint8_t>{12, 0, 255});

  CHECK_THROWS_WITH_AS(load_grayscale((temp_dir() / "missing.pgm").string()),
                       doctest::Contains("FileNotFound"), Error);

  // truncated raster
  const std::string bad = "P5\n4 4\n255\nxy";
  CHECK_THROWS_WITH_AS(load_grayscale(write_temp("c.pgm", bad)),
                       doctest::Contains("CorruptImage"), Error);

  // 16-bit maxval is out of contract
  const std::string wide = "P2\n1 1\n65535\n1000\n";
  CHECK_THROWS_WITH_AS(load_grayscale(write_temp("d.pgm", wide)),
                       doctest::Contains("UnsupportedFormat"), Error);

  const std::string junk = "GIF89a...";
  CHECK_THROWS_WITH_AS(load_grayscale(write_temp("e.bin", junk)),
                       doctest::Contains("UnsupportedFormat"), Error);
}

TEST_CASE("PNG decoding matches reference encoder output") {
  // 1x1 all-white grayscale PNG, bytes produced by a reference encoder.
  static const unsigned char white[] = {
      0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48,
      0x44, 0x52, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x00, 0x00, 0x00,
      0x00, 0x3a, 0x7e, 0x9b, 0x55, 0x00, 0x00, 0x00, 0x0a, 0x49, 0x44, 0x41, 0x54, 0x78,
      0x9c, 0x63, 0xf8, 0x0f, 0x00, 0x01, 0x01, 0x01, 0x00, 0xb1, 0x38, 0xf6, 0x14, 0x00,
      0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
  const std::string path = write_temp(
      "white.png", std::string_view(reinterpret_cast<const char*>(white), sizeof(white)));
  const GrayscaleImage img = load_grayscale(path);
  CHECK(img.width == 1);
  CHECK(img.height == 1);
  CHECK(img.pixels == std::vector<std::uint8_t>{255});

  // 2x2 RGB PNG: (255,0,0), (0,255,0) / (0,0,255), (100,150,200).
  // Rounded luma: 76, 150, 29, 141.
  static const unsigned char rgb[] = {
      0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48,
      0x44, 0x52, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02, 0x08, 0x02, 0x00, 0x00,
      0x00, 0xfd, 0xd4, 0x9a, 0x73, 0x00, 0x00, 0x00, 0x16, 0x49, 0x44, 0x41, 0x54, 0x78,
      0x9c, 0x63, 0xf8, 0xcf, 0xc0, 0xc0, 0xf0, 0x9f, 0x81, 0x91, 0x81, 0xe1, 0x7f, 0xca,
      0xb4, 0x93, 0x00, 0x1d, 0x1c, 0x04, 0xc2, 0x08, 0x0f, 0x3b, 0xd8, 0x00, 0x00, 0x00,
      0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
  const GrayscaleImage color = load_grayscale(write_temp(
      "rgb.png", std::string_view(reinterpret_cast<const char*>(rgb), sizeof(rgb))));
  CHECK(color.pixels == std::vector<std::uint8_t>{76, 150, 29, 141});

  // corrupt payload: flip a byte inside IDAT
  std::string broken(reinterpret_cast<const char*>(white), sizeof(white));
  broken[45] ^= 0x5a;
  CHECK_THROWS_AS(load_grayscale(write_temp("broken.png", broken)), Error);
}

TEST_CASE("PGM round-trip through save_pgm") {
  GrayscaleImage img{3, 2, {0, 50, 100, 150, 200, 255}};
  const fs::path path = temp_dir() / "roundtrip.pgm";
  save_pgm(path.string(), img);
  const GrayscaleImage back = load_grayscale(path.string());
  CHECK(back.width == img.width);
  CHECK(back.height == img.height);
  CHECK(back.pixels == img.pixels);
}
