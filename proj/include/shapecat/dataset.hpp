#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "shapecat/image.hpp"
#include "shapecat/taxonomy.hpp"

namespace shapecat {

struct ManifestEntry {
  std::string path;  // absolute or root-relative file path
  std::string subcategory;
  ClassLabel label = ClassLabel::Animal;
};

struct DatasetManifest {
  std::string root;
  std::vector<ManifestEntry> samples;        // sorted by path
  std::vector<std::string> skipped_dirs;     // unrecognized directory names
};

// Walks root, expecting one directory per recognized subcategory. Image files
// (.pgm/.png) under recognized directories are listed with their class.
// `overrides` reassigns the class of individual subcategories.
DatasetManifest scan_dataset(const std::string& root,
                             const std::map<std::string, ClassLabel>& overrides = {});

// CSV with header `path,subcategory,label`, LF line endings.
void write_manifest_csv(const DatasetManifest& manifest, std::ostream& out);

struct LabeledSample {
  BinaryImage image;
  ClassLabel label = ClassLabel::Animal;
  std::string subcategory;
  std::string source_path;
};

// Loads every manifest entry: decode, binarize, rescale to 100x100.
std::vector<LabeledSample> load_samples(const DatasetManifest& manifest, int threshold,
                                        Foreground polarity);

}  // namespace shapecat
