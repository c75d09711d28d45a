#include "shapecat/cli.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "shapecat/error.hpp"
#include "shapecat/experiment.hpp"
#include "shapecat/synth.hpp"
#include "shapecat/util.hpp"

#include "CLI11.hpp"

namespace fs = std::filesystem;

namespace shapecat {
namespace {

struct CommonOpts {
  std::string config_path;
  std::string dataset;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON experiment configuration");
  cmd->add_option("--dataset", opts.dataset, "dataset root (overrides config)");
  cmd->add_option("--out", opts.out, "output directory (overrides config)");
}

ExperimentConfig resolve_config(const CommonOpts& opts) {
  ExperimentConfig config;
  if (!opts.config_path.empty()) config = load_config(opts.config_path);
  if (!opts.dataset.empty()) config.dataset_root = opts.dataset;
  if (!opts.out.empty()) config.output_dir = opts.out;
  return config;
}

void write_out(const ExperimentConfig& config, const std::string& name,
               const std::string& content) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) fail(Err::IoError, "cannot create output directory: " + config.output_dir);
  const std::string path = (fs::path(config.output_dir) / name).string();
  write_file_bytes(path, content);
  std::cout << "wrote " << path << "\n";
}

int usage_exit_code(Err code) {
  // Bad flags or config values are usage errors; everything else concerns
  // the data itself.
  return code == Err::InvalidArgument ? 1 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Silhouette categorization with global shape descriptors"};
  app.require_subcommand(1);

  CommonOpts prepare_opts, extract_opts, cluster_opts, svm_opts, rbm_opts, experiment_opts;
  bool svm_save_models = false;

  CLI::App* prepare = app.add_subcommand("prepare", "scan the dataset and write manifest.csv");
  add_common(prepare, prepare_opts);

  CLI::App* extract =
      app.add_subcommand("extract", "write per-descriptor feature and moment CSVs");
  add_common(extract, extract_opts);

  CLI::App* cluster = app.add_subcommand("cluster", "k-means evaluation (clustering.csv)");
  add_common(cluster, cluster_opts);

  CLI::App* train_svm = app.add_subcommand("train-svm", "repeated SVM evaluation (svm.csv)");
  add_common(train_svm, svm_opts);
  train_svm->add_flag("--save-models", svm_save_models,
                      "also export full-data models as JSON");

  CLI::App* rbm_sweep =
      app.add_subcommand("rbm-sweep", "hidden-unit sweep (rbm_sweep.csv + .svg)");
  add_common(rbm_sweep, rbm_opts);

  CLI::App* experiment =
      app.add_subcommand("experiment", "full pipeline with all reports and provenance");
  add_common(experiment, experiment_opts);

  const SynthDatasetOptions synth_defaults;
  std::string synth_out = "synth_data";
  std::string synth_flavor = synth_defaults.flavor;
  int synth_per_class = synth_defaults.per_class;
  int synth_size = synth_defaults.size;
  std::uint64_t synth_seed = synth_defaults.seed;
  CLI::App* synth = app.add_subcommand("synth", "generate a deterministic silhouette dataset");
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--flavor", synth_flavor, "caltech | simple");
  synth->add_option("--per-class", synth_per_class, "images per class");
  synth->add_option("--size", synth_size, "canvas size in pixels");
  synth->add_option("--seed", synth_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (synth->parsed()) {
      SynthDatasetOptions options;
      options.flavor = synth_flavor;
      options.per_class = synth_per_class;
      options.size = synth_size;
      options.seed = synth_seed;
      write_synth_dataset(synth_out, options);
      std::cout << "wrote dataset under " << synth_out << "\n";
      return 0;
    }

    if (prepare->parsed()) {
      const ExperimentConfig config = resolve_config(prepare_opts);
      if (config.dataset_root.empty())
        fail(Err::InvalidArgument, "prepare needs --dataset or a config with dataset_root");
      const DatasetManifest manifest =
          scan_dataset(config.dataset_root, config.label_overrides);
      std::ostringstream csv;
      write_manifest_csv(manifest, csv);
      write_out(config, "manifest.csv", csv.str());
      std::cout << manifest.samples.size() << " samples";
      if (!manifest.skipped_dirs.empty()) {
        std::cout << "; skipped:";
        for (const std::string& dir : manifest.skipped_dirs) std::cout << ' ' << dir;
      }
      std::cout << "\n";
      return 0;
    }

    if (extract->parsed()) {
      const ExperimentConfig config = resolve_config(extract_opts);
      const PreparedData data = prepare_data(config);
      const std::vector<DescriptorKind> kinds = table_kinds(config, nullptr);
      for (const DescriptorKind& kind : kinds) {
        std::string tag;
        for (Atom atom : kind.atoms()) tag += atom_letter(atom);
        write_out(config, "features_" + tag + ".csv", features_csv(data, kind));
      }
      write_out(config, "moments.csv", moments_csv(data, kinds));
      return 0;
    }

    if (cluster->parsed()) {
      const ExperimentConfig config = resolve_config(cluster_opts);
      const PreparedData data = prepare_data(config);
      ExperimentReport report;
      std::vector<ClusteringRow> atomic_rows =
          clustering_stage(config, data, config.descriptors);
      const std::vector<DescriptorKind> kinds = table_kinds(config, &atomic_rows);
      report.clustering_table = std::move(atomic_rows);
      if (kinds.size() > config.descriptors.size()) {
        const std::vector<DescriptorKind> extra(kinds.begin() + config.descriptors.size(),
                                                kinds.end());
        for (const ClusteringRow& row : clustering_stage(config, data, extra)) {
          report.clustering_table.push_back(row);
        }
      }
      write_out(config, "clustering.csv", render_clustering_csv(report.clustering_table));
      return 0;
    }

    if (train_svm->parsed()) {
      const ExperimentConfig config = resolve_config(svm_opts);
      const PreparedData data = prepare_data(config);
      const std::vector<DescriptorKind> kinds = table_kinds(config, nullptr);
      const std::vector<SvmRow> rows = svm_stage(config, data, kinds);
      write_out(config, "svm.csv", render_svm_csv(rows));
      if (svm_save_models) {
        for (const DescriptorKind& kind : kinds) {
          const FeatureMatrix features = features_for(data, kind);
          std::vector<int> y(data.labels.size());
          for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] = data.labels[i] == ClassLabel::Animal ? 1 : -1;
          }
          const SvmModel model =
              svm_train(features, y, config.svm.c, config.svm.epochs, config.svm.base_seed);
          std::string tag;
          for (Atom atom : kind.atoms()) tag += atom_letter(atom);
          write_out(config, "svm_model_" + tag + ".json", svm_to_json(model));
        }
      }
      return 0;
    }

    if (rbm_sweep->parsed()) {
      const ExperimentConfig config = resolve_config(rbm_opts);
      const PreparedData data = prepare_data(config);
      const std::vector<SvmRow> raw_rows = svm_stage(config, data, config.descriptors);
      const std::vector<RbmCurve> curves =
          rbm_stage(config, data, config.descriptors, raw_rows);
      if (curves.empty()) fail(Err::InvalidArgument, "rbm.hidden_sweep is empty");
      write_out(config, "rbm_sweep.csv", render_rbm_sweep_csv(curves));
      write_out(config, "rbm_sweep.svg", render_rbm_sweep_svg(curves));
      return 0;
    }

    if (experiment->parsed()) {
      const ExperimentConfig config = resolve_config(experiment_opts);
      const ExperimentReport report = run_experiment(config);
      emit_report(report, config.output_dir);
      std::cout << "wrote reports under " << config.output_dir << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace shapecat
