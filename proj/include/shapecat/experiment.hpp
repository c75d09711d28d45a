#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shapecat/dataset.hpp"
#include "shapecat/descriptors.hpp"
#include "shapecat/kmeans.hpp"
#include "shapecat/matrix.hpp"
#include "shapecat/rbm.hpp"
#include "shapecat/svm.hpp"

namespace shapecat {

struct KmeansConfig {
  int n_init = 10;
  std::uint64_t base_seed = 1;
};

struct SvmConfig {
  double c = 1.0;
  int epochs = 200;
  int n_runs = 10;
  std::uint64_t base_seed = 1;
};

struct RbmSweepConfig {
  std::vector<int> hidden_sweep = {16, 32, 64, 128, 256, 512};
  double learning_rate = 0.1;
  int batch_size = 50;
  int epochs = 100;
  std::uint64_t seed = 1;
};

struct ExperimentConfig {
  std::string dataset_root;
  int threshold = 128;
  Foreground polarity = Foreground::Bright;
  std::vector<DescriptorKind> descriptors;  // atomic kinds; default h,v,l,r,t,b
  // The concatenated table row. Fixed parts by default; when auto_top4 is set
  // the four atoms with the best clustering f1 are concatenated instead.
  std::vector<Atom> concat_parts = {Atom::H, Atom::V, Atom::T, Atom::B};
  bool concat_auto_top4 = false;
  KmeansConfig kmeans;
  SvmConfig svm;
  RbmSweepConfig rbm;
  std::map<std::string, ClassLabel> label_overrides;
  std::string output_dir = "out";

  ExperimentConfig();
};

ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);  // canonical form

struct ClusteringRow {
  std::string descriptor;
  ScoreReport scores;
};

struct SvmRow {
  std::string descriptor;
  double mean = 0.0;
  double stddev = 0.0;
};

struct RbmPoint {
  int hidden = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct RbmCurve {
  std::string descriptor;
  double raw_mean = 0.0;  // accuracy without feature learning
  std::vector<RbmPoint> points;
};

struct Provenance {
  std::string tool_version;
  std::string config_hash;
  std::string dataset_checksum;
  std::vector<std::string> notes;
};

struct ExperimentReport {
  std::vector<ClusteringRow> clustering_table;
  std::vector<SvmRow> svm_table;
  std::vector<RbmCurve> rbm_curves;
  Provenance provenance;
};

// Dataset after preprocessing plus one feature matrix per atomic descriptor.
struct PreparedData {
  DatasetManifest manifest;
  std::vector<ClassLabel> labels;
  std::vector<std::string> paths;
  std::map<char, FeatureMatrix> atomic_features;  // keyed by atom letter
  std::string dataset_checksum;
};

PreparedData prepare_data(const ExperimentConfig& config);

FeatureMatrix features_for(const PreparedData& data, const DescriptorKind& kind);

std::vector<ClusteringRow> clustering_stage(const ExperimentConfig& config,
                                            const PreparedData& data,
                                            const std::vector<DescriptorKind>& kinds);
std::vector<SvmRow> svm_stage(const ExperimentConfig& config, const PreparedData& data,
                              const std::vector<DescriptorKind>& kinds);
std::vector<RbmCurve> rbm_stage(const ExperimentConfig& config, const PreparedData& data,
                                const std::vector<DescriptorKind>& kinds,
                                const std::vector<SvmRow>& raw_rows);

// Table row order: configured descriptors, then the concatenation row when
// all of its parts are configured.
std::vector<DescriptorKind> table_kinds(const ExperimentConfig& config,
                                        const std::vector<ClusteringRow>* clustering_rows);

ExperimentReport run_experiment(const ExperimentConfig& config);

// clustering.csv, svm.csv, rbm_sweep.csv, rbm_sweep.svg, provenance.json.
// Re-emitting an identical report writes identical bytes.
void emit_report(const ExperimentReport& report, const std::string& output_dir);

// Individual renderers behind emit_report. Score tables print one decimal;
// fields containing commas are CSV-quoted.
std::string render_clustering_csv(const std::vector<ClusteringRow>& rows);
std::string render_svm_csv(const std::vector<SvmRow>& rows);
std::string render_rbm_sweep_csv(const std::vector<RbmCurve>& curves);
std::string render_rbm_sweep_svg(const std::vector<RbmCurve>& curves);
std::string render_provenance_json(const Provenance& provenance, bool rbm_omitted);

// Feature export, one row per sample: path,label,kind,v0,...,v{d-1} with
// 9 significant digits.
std::string features_csv(const PreparedData& data, const DescriptorKind& kind);
// Moment export: path,label,kind,mean,variance,skewness,kurtosis.
std::string moments_csv(const PreparedData& data, const std::vector<DescriptorKind>& kinds);

}  // namespace shapecat
