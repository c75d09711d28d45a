#include "shapecat/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "shapecat/error.hpp"
#include "shapecat/kernels.hpp"
#include "shapecat/util.hpp"

#include "json.hpp"

namespace fs = std::filesystem;

namespace shapecat {

ExperimentConfig::ExperimentConfig() {
  for (Atom atom : {Atom::H, Atom::V, Atom::L, Atom::R, Atom::T, Atom::B}) {
    descriptors.push_back(DescriptorKind::atomic(atom));
  }
}

namespace {

Foreground polarity_from_string(const std::string& text) {
  const std::string lower = to_lower(text);
  if (lower == "bright") return Foreground::Bright;
  if (lower == "dark") return Foreground::Dark;
  fail(Err::InvalidArgument, "polarity must be 'bright' or 'dark'");
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Err::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
  }

  ExperimentConfig config;
  if (parsed.contains("dataset_root")) config.dataset_root = parsed["dataset_root"];
  if (parsed.contains("threshold")) config.threshold = parsed["threshold"];
  if (parsed.contains("polarity")) config.polarity = polarity_from_string(parsed["polarity"]);
  if (parsed.contains("output_dir")) config.output_dir = parsed["output_dir"];

  if (parsed.contains("descriptors")) {
    config.descriptors.clear();
    for (const auto& item : parsed["descriptors"]) {
      const DescriptorKind kind = DescriptorKind::parse(item.get<std::string>());
      if (kind.is_concat())
        fail(Err::InvalidArgument, "descriptor list takes atomic kinds; see concat.parts");
      config.descriptors.push_back(kind);
    }
    if (config.descriptors.empty())
      fail(Err::InvalidArgument, "descriptor list must be non-empty");
  }

  if (parsed.contains("concat")) {
    const auto& c = parsed["concat"];
    if (c.contains("parts")) {
      const DescriptorKind kind = DescriptorKind::parse(c["parts"].get<std::string>());
      config.concat_parts.assign(kind.atoms().begin(), kind.atoms().end());
    }
    if (c.contains("auto_top4")) config.concat_auto_top4 = c["auto_top4"];
  }

  if (parsed.contains("kmeans")) {
    const auto& k = parsed["kmeans"];
    if (k.contains("n_init")) config.kmeans.n_init = k["n_init"];
    if (k.contains("base_seed")) config.kmeans.base_seed = k["base_seed"];
  }
  if (parsed.contains("svm")) {
    const auto& s = parsed["svm"];
    if (s.contains("c")) config.svm.c = s["c"];
    if (s.contains("epochs")) config.svm.epochs = s["epochs"];
    if (s.contains("n_runs")) config.svm.n_runs = s["n_runs"];
    if (s.contains("base_seed")) config.svm.base_seed = s["base_seed"];
  }
  if (parsed.contains("rbm")) {
    const auto& r = parsed["rbm"];
    if (r.contains("hidden_sweep"))
      config.rbm.hidden_sweep = r["hidden_sweep"].get<std::vector<int>>();
    if (r.contains("learning_rate")) config.rbm.learning_rate = r["learning_rate"];
    if (r.contains("batch_size")) config.rbm.batch_size = r["batch_size"];
    if (r.contains("epochs")) config.rbm.epochs = r["epochs"];
    if (r.contains("seed")) config.rbm.seed = r["seed"];
  }
  if (parsed.contains("label_overrides")) {
    for (const auto& [key, value] : parsed["label_overrides"].items()) {
      const auto label = label_from_name(value.get<std::string>());
      if (!label) fail(Err::InvalidArgument, "label override must be animal or plant");
      config.label_overrides[key] = *label;
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::FileNotFound, "config file: " + path);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return config_from_json(text);
}

std::string config_to_json(const ExperimentConfig& config) {
  std::string out = "{\n";
  out += "  \"dataset_root\": \"" + config.dataset_root + "\",\n";
  out += "  \"threshold\": " + std::to_string(config.threshold) + ",\n";
  out += std::string("  \"polarity\": \"") +
         (config.polarity == Foreground::Bright ? "bright" : "dark") + "\",\n";
  out += "  \"descriptors\": [";
  for (std::size_t i = 0; i < config.descriptors.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + config.descriptors[i].name() + "\"";
  }
  out += "],\n";
  out += "  \"concat\": {\"parts\": \"" +
         DescriptorKind::concat(config.concat_parts).name() + "\", \"auto_top4\": " +
         (config.concat_auto_top4 ? "true" : "false") + "},\n";
  out += "  \"kmeans\": {\"n_init\": " + std::to_string(config.kmeans.n_init) +
         ", \"base_seed\": " + std::to_string(config.kmeans.base_seed) + "},\n";
  out += "  \"svm\": {\"c\": " + fmt_sig(config.svm.c, 17) +
         ", \"epochs\": " + std::to_string(config.svm.epochs) +
         ", \"n_runs\": " + std::to_string(config.svm.n_runs) +
         ", \"base_seed\": " + std::to_string(config.svm.base_seed) + "},\n";
  out += "  \"rbm\": {\"hidden_sweep\": [";
  for (std::size_t i = 0; i < config.rbm.hidden_sweep.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(config.rbm.hidden_sweep[i]);
  }
  out += "], \"learning_rate\": " + fmt_sig(config.rbm.learning_rate, 17) +
         ", \"batch_size\": " + std::to_string(config.rbm.batch_size) +
         ", \"epochs\": " + std::to_string(config.rbm.epochs) +
         ", \"seed\": " + std::to_string(config.rbm.seed) + "},\n";
  out += "  \"label_overrides\": {";
  bool first = true;
  for (const auto& [key, value] : config.label_overrides) {
    if (!first) out += ", ";
    first = false;
    out += "\"" + key + "\": \"" + std::string(label_name(value)) + "\"";
  }
  out += "},\n";
  out += "  \"output_dir\": \"" + config.output_dir + "\"\n";
  out += "}\n";
  return out;
}

namespace {

std::string dataset_checksum(const DatasetManifest& manifest) {
  std::uint64_t state = 0xcbf29ce484222325ull;
  for (const ManifestEntry& entry : manifest.samples) {
    const std::string rel =
        fs::relative(entry.path, manifest.root).generic_string();
    state = fnv1a64(rel, state);
    state = fnv1a64(read_file_bytes(entry.path), state);
  }
  return hex64(state);
}

}  // namespace

PreparedData prepare_data(const ExperimentConfig& config) {
  if (config.dataset_root.empty()) fail(Err::InvalidArgument, "dataset_root is not set");

  PreparedData data;
  data.manifest = scan_dataset(config.dataset_root, config.label_overrides);
  data.dataset_checksum = dataset_checksum(data.manifest);

  const std::vector<LabeledSample> samples =
      load_samples(data.manifest, config.threshold, config.polarity);
  data.labels.reserve(samples.size());
  data.paths.reserve(samples.size());
  std::vector<BinaryImage> images;
  images.reserve(samples.size());
  for (const LabeledSample& sample : samples) {
    data.labels.push_back(sample.label);
    data.paths.push_back(sample.source_path);
    images.push_back(sample.image);
  }

  for (Atom atom : {Atom::H, Atom::V, Atom::L, Atom::R, Atom::T, Atom::B}) {
    data.atomic_features[atom_letter(atom)] =
        kernels::extract_batch(images, DescriptorKind::atomic(atom));
  }
  return data;
}

FeatureMatrix features_for(const PreparedData& data, const DescriptorKind& kind) {
  const std::size_t n = data.labels.size();
  FeatureMatrix out(n, descriptor_length(kind));
  std::size_t offset = 0;
  for (Atom atom : kind.atoms()) {
    const FeatureMatrix& part = data.atomic_features.at(atom_letter(atom));
    for (std::size_t i = 0; i < n; ++i) {
      std::copy(part.row(i), part.row(i) + part.cols, out.row(i) + offset);
    }
    offset += part.cols;
  }
  return out;
}

std::vector<DescriptorKind> table_kinds(const ExperimentConfig& config,
                                        const std::vector<ClusteringRow>* clustering_rows) {
  std::vector<DescriptorKind> kinds = config.descriptors;

  std::vector<Atom> parts = config.concat_parts;
  if (config.concat_auto_top4 && clustering_rows) {
    // Top four configured atoms by clustering f1, kept in canonical order.
    std::vector<std::pair<double, Atom>> ranked;
    for (const DescriptorKind& kind : config.descriptors) {
      for (const ClusteringRow& row : *clustering_rows) {
        if (row.descriptor == kind.name()) {
          ranked.emplace_back(row.scores.f1, kind.atoms()[0]);
          break;
        }
      }
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    if (ranked.size() > 4) ranked.resize(4);
    parts.clear();
    for (Atom atom : {Atom::H, Atom::V, Atom::L, Atom::R, Atom::T, Atom::B}) {
      for (const auto& [f1, chosen] : ranked) {
        if (chosen == atom) parts.push_back(atom);
      }
    }
  }
  if (parts.size() >= 2) kinds.push_back(DescriptorKind::concat(parts));
  return kinds;
}

std::vector<ClusteringRow> clustering_stage(const ExperimentConfig& config,
                                            const PreparedData& data,
                                            const std::vector<DescriptorKind>& kinds) {
  std::vector<ClusteringRow> rows;
  rows.reserve(kinds.size());
  for (const DescriptorKind& kind : kinds) {
    const FeatureMatrix features = features_for(data, kind);
    const BestClustering best = kmeans_best_of(features, data.labels, 2, config.kmeans.n_init,
                                               config.kmeans.base_seed);
    rows.push_back({kind.name(), best.report});
  }
  return rows;
}

std::vector<SvmRow> svm_stage(const ExperimentConfig& config, const PreparedData& data,
                              const std::vector<DescriptorKind>& kinds) {
  std::vector<SvmRow> rows;
  rows.reserve(kinds.size());
  for (const DescriptorKind& kind : kinds) {
    const FeatureMatrix features = features_for(data, kind);
    const RepeatedEvalReport report =
        repeated_eval(features, data.labels, ClassLabel::Animal, config.svm.n_runs,
                      config.svm.base_seed, config.svm.c, config.svm.epochs);
    rows.push_back({kind.name(), report.mean, report.stddev});
  }
  return rows;
}

std::vector<RbmCurve> rbm_stage(const ExperimentConfig& config, const PreparedData& data,
                                const std::vector<DescriptorKind>& kinds,
                                const std::vector<SvmRow>& raw_rows) {
  std::vector<RbmCurve> curves;
  if (config.rbm.hidden_sweep.empty()) return curves;
  curves.reserve(kinds.size());
  for (const DescriptorKind& kind : kinds) {
    RbmCurve curve;
    curve.descriptor = kind.name();
    for (const SvmRow& row : raw_rows) {
      if (row.descriptor == curve.descriptor) {
        curve.raw_mean = row.mean;
        break;
      }
    }

    const FeatureMatrix features = features_for(data, kind);
    for (int hidden : config.rbm.hidden_sweep) {
      if (hidden < 1) fail(Err::ZeroUnits, "hidden counts must be >= 1");
      const SplitTransform learn_features =
          [&](int run, const FeatureMatrix& train_x, const FeatureMatrix& test_x) {
            RbmHyper hyper;
            hyper.learning_rate = config.rbm.learning_rate;
            hyper.batch_size = config.rbm.batch_size;
            hyper.epochs = config.rbm.epochs;
            hyper.seed = mix_seed(config.rbm.seed,
                                  mix_seed(static_cast<std::uint64_t>(hidden),
                                           static_cast<std::uint64_t>(run)));
            auto [model, trace] =
                rbm_train(train_x, static_cast<std::size_t>(hidden), hyper);
            return std::make_pair(rbm_transform_batch(model, train_x),
                                  rbm_transform_batch(model, test_x));
          };
      const RepeatedEvalReport report =
          repeated_eval(features, data.labels, ClassLabel::Animal, config.svm.n_runs,
                        config.svm.base_seed, config.svm.c, config.svm.epochs,
                        learn_features);
      curve.points.push_back({hidden, report.mean, report.stddev});
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const PreparedData data = prepare_data(config);

  ExperimentReport report;
  // Atomic clustering rows come first so an auto-selected concatenation can
  // rank them; the concatenated row is then appended to both tables.
  std::vector<ClusteringRow> atomic_rows = clustering_stage(config, data, config.descriptors);
  const std::vector<DescriptorKind> kinds = table_kinds(config, &atomic_rows);

  report.clustering_table = std::move(atomic_rows);
  if (kinds.size() > config.descriptors.size()) {
    const std::vector<DescriptorKind> concat_only(kinds.begin() + config.descriptors.size(),
                                                  kinds.end());
    const std::vector<ClusteringRow> concat_rows =
        clustering_stage(config, data, concat_only);
    report.clustering_table.insert(report.clustering_table.end(), concat_rows.begin(),
                                   concat_rows.end());
  }

  report.svm_table = svm_stage(config, data, kinds);
  // Learned-feature curves cover the configured descriptors; the concatenated
  // row stays a raw-table entry.
  report.rbm_curves = rbm_stage(config, data, config.descriptors, report.svm_table);

  report.provenance.tool_version = kToolVersion;
  report.provenance.config_hash = hex64(fnv1a64(config_to_json(config)));
  report.provenance.dataset_checksum = data.dataset_checksum;
  for (const std::string& dir : data.manifest.skipped_dirs) {
    report.provenance.notes.push_back("skipped unrecognized directory: " + dir);
  }
  return report;
}

}  // namespace shapecat
