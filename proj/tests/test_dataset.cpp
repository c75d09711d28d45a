#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "shapecat/dataset.hpp"
#include "shapecat/error.hpp"
#include "shapecat/image_io.hpp"
#include "shapecat/synth.hpp"
#include "shapecat/taxonomy.hpp"
#include "shapecat/util.hpp"

using namespace shapecat;
namespace fs = std::filesystem;

namespace {

struct TempTree {
  fs::path root;
  explicit TempTree(const std::string& name) {
    root = fs::temp_directory_path() / name;
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~TempTree() { fs::remove_all(root); }

  void add_image(const std::string& rel) {
    const fs::path path = root / rel;
    fs::create_directories(path.parent_path());
    GrayscaleImage img{4, 4, std::vector<std::uint8_t>(16, 200)};
    img.pixels[5] = 10;
    save_pgm(path.string(), img);
  }
};

}  // namespace

TEST_CASE("taxonomy covers the 25 subcategories") {
  CHECK(animal_subcategories().size() == 18);
  CHECK(plant_subcategories().size() == 7);
  CHECK(subcategory_class("elephant") == ClassLabel::Animal);
  CHECK(subcategory_class("sunflower") == ClassLabel::Plant);
  CHECK(subcategory_class("nautilus") == ClassLabel::Plant);  // as distributed
  CHECK(subcategory_class("horse") == std::nullopt);
  CHECK(label_name(ClassLabel::Animal) == "animal");
  CHECK(label_from_name("Plants") == ClassLabel::Plant);
}

TEST_CASE("scan_dataset labels by directory and sorts by path") {
  TempTree tree("shapecat_scan_basic");
  tree.add_image("elephant/a.pgm");
  tree.add_image("sunflower/b.pgm");

  const DatasetManifest manifest = scan_dataset(tree.root.string());
  REQUIRE(manifest.samples.size() == 2);
  CHECK(manifest.samples[0].subcategory == "elephant");
  CHECK(manifest.samples[0].label == ClassLabel::Animal);
  CHECK(manifest.samples[1].subcategory == "sunflower");
  CHECK(manifest.samples[1].label == ClassLabel::Plant);

  std::ostringstream csv;
  write_manifest_csv(manifest, csv);
  const std::string text = csv.str();
  CHECK(text.starts_with("path,subcategory,label\n"));
  CHECK(text.find(",elephant,animal\n") != std::string::npos);
  CHECK(text.find(",sunflower,plant\n") != std::string::npos);
}

TEST_CASE("scan_dataset skips unknown directories and reports them") {
  TempTree tree("shapecat_scan_skip");
  tree.add_image("unknown_cat/x.pgm");

  CHECK_THROWS_WITH_AS(scan_dataset(tree.root.string()), doctest::Contains("unknown_cat"),
                       Error);

  tree.add_image("lotus/p.pgm");
  const DatasetManifest manifest = scan_dataset(tree.root.string());
  CHECK(manifest.samples.size() == 1);
  REQUIRE(manifest.skipped_dirs.size() == 1);
  CHECK(manifest.skipped_dirs[0] == "unknown_cat");
}

TEST_CASE("scan_dataset flags stray files and honors overrides") {
  TempTree tree("shapecat_scan_stray");
  tree.add_image("lotus/p.pgm");
  tree.add_image("stray.pgm");
  CHECK_THROWS_WITH_AS(scan_dataset(tree.root.string()), doctest::Contains("AmbiguousLayout"),
                       Error);

  TempTree tree2("shapecat_scan_override");
  tree2.add_image("nautilus/n.pgm");
  const std::map<std::string, ClassLabel> overrides{{"nautilus", ClassLabel::Animal}};
  const DatasetManifest manifest = scan_dataset(tree2.root.string(), overrides);
  CHECK(manifest.samples[0].label == ClassLabel::Animal);
}

TEST_CASE("duplicate content under two names stays two samples") {
  TempTree tree("shapecat_scan_dup");
  tree.add_image("lotus/p.pgm");
  tree.add_image("lotus/copy/p.pgm");
  const DatasetManifest manifest = scan_dataset(tree.root.string());
  CHECK(manifest.samples.size() == 2);
  CHECK(manifest.samples[0].path != manifest.samples[1].path);
}

TEST_CASE("empty root raises EmptyDataset") {
  TempTree tree("shapecat_scan_empty");
  fs::create_directories(tree.root / "elephant");
  CHECK_THROWS_WITH_AS(scan_dataset(tree.root.string()), doctest::Contains("EmptyDataset"),
                       Error);
}

TEST_CASE("load_samples binarizes and rescales to the working size") {
  TempTree tree("shapecat_load");
  tree.add_image("elephant/a.pgm");  // 4x4, bright except one dark pixel
  const DatasetManifest manifest = scan_dataset(tree.root.string());
  const std::vector<LabeledSample> samples =
      load_samples(manifest, 128, Foreground::Bright);
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].image.width == 100);
  CHECK(samples[0].image.height == 100);
  CHECK(samples[0].label == ClassLabel::Animal);
  long long on = on_pixel_count(samples[0].image);
  CHECK(on > 100 * 100 / 2);  // mostly bright
  CHECK(on < 100 * 100);      // the dark pixel survives rescale
}

TEST_CASE("manifest sample count matches files under recognized directories") {
  TempTree tree("shapecat_count");
  int expected = 0;
  for (const char* sub : {"beaver", "lotus", "rhino"}) {
    for (int i = 0; i < 4; ++i) {
      tree.add_image(std::string(sub) + "/img" + std::to_string(i) + ".pgm");
      ++expected;
    }
  }
  tree.add_image("notes/readme.pgm");  // unrecognized, skipped
  const DatasetManifest manifest = scan_dataset(tree.root.string());
  CHECK(static_cast<int>(manifest.samples.size()) == expected);
}
