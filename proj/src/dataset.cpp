#include "shapecat/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>

#include "shapecat/error.hpp"
#include "shapecat/image_io.hpp"
#include "shapecat/util.hpp"

namespace fs = std::filesystem;

namespace shapecat {
namespace {

bool has_image_extension(const fs::path& p) {
  const std::string ext = to_lower(p.extension().string());
  return ext == ".pgm" || ext == ".png";
}

}  // namespace

DatasetManifest scan_dataset(const std::string& root,
                             const std::map<std::string, ClassLabel>& overrides) {
  if (!fs::is_directory(root)) fail(Err::FileNotFound, "dataset root: " + root);

  DatasetManifest manifest;
  manifest.root = root;

  std::vector<fs::path> subdirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) {
      subdirs.push_back(entry.path());
    } else if (entry.is_regular_file() && has_image_extension(entry.path())) {
      fail(Err::AmbiguousLayout,
           "image file directly under dataset root: " + entry.path().string());
    }
  }
  std::sort(subdirs.begin(), subdirs.end());

  for (const fs::path& dir : subdirs) {
    const std::string subcategory = dir.filename().string();
    std::optional<ClassLabel> label = subcategory_class(subcategory);
    if (auto it = overrides.find(subcategory); it != overrides.end()) label = it->second;
    if (!label) {
      manifest.skipped_dirs.push_back(subcategory);
      continue;
    }
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (entry.is_regular_file() && has_image_extension(entry.path())) {
        manifest.samples.push_back({entry.path().string(), subcategory, *label});
      }
    }
  }

  std::sort(manifest.samples.begin(), manifest.samples.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });

  if (manifest.samples.empty()) {
    std::string detail = "no images under recognized subcategory directories in " + root;
    if (!manifest.skipped_dirs.empty()) {
      detail += "; skipped:";
      for (const std::string& name : manifest.skipped_dirs) detail += " " + name;
    }
    fail(Err::EmptyDataset, detail);
  }
  return manifest;
}

void write_manifest_csv(const DatasetManifest& manifest, std::ostream& out) {
  out << "path,subcategory,label\n";
  for (const ManifestEntry& entry : manifest.samples) {
    out << entry.path << ',' << entry.subcategory << ',' << label_name(entry.label) << '\n';
  }
}

std::vector<LabeledSample> load_samples(const DatasetManifest& manifest, int threshold,
                                        Foreground polarity) {
  std::vector<LabeledSample> samples;
  samples.reserve(manifest.samples.size());
  for (const ManifestEntry& entry : manifest.samples) {
    const GrayscaleImage gray = load_grayscale(entry.path);
    BinaryImage mask = binarize(gray, threshold, polarity);
    mask = rescale(mask, kStandardSize, kStandardSize);
    samples.push_back({std::move(mask), entry.label, entry.subcategory, entry.path});
  }
  return samples;
}

}  // namespace shapecat
