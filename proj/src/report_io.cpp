#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

#include "shapecat/error.hpp"
#include "shapecat/experiment.hpp"
#include "shapecat/util.hpp"

namespace fs = std::filesystem;

namespace shapecat {
namespace {

std::string csv_field(const std::string& text) {
  if (text.find(',') == std::string::npos && text.find('"') == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string render_clustering_csv(const std::vector<ClusteringRow>& rows) {
  std::string out = "descriptor,precision,recall,f1,accuracy\n";
  for (const ClusteringRow& row : rows) {
    out += csv_field(row.descriptor) + ',' + fmt_fixed(row.scores.precision, 1) + ',' +
           fmt_fixed(row.scores.recall, 1) + ',' + fmt_fixed(row.scores.f1, 1) + ',' +
           fmt_fixed(row.scores.accuracy, 1) + '\n';
  }
  return out;
}

std::string render_svm_csv(const std::vector<SvmRow>& rows) {
  std::string out = "descriptor,mean_accuracy,std\n";
  for (const SvmRow& row : rows) {
    out += csv_field(row.descriptor) + ',' + fmt_fixed(row.mean, 1) + ',' +
           fmt_fixed(row.stddev, 1) + '\n';
  }
  return out;
}

std::string render_rbm_sweep_csv(const std::vector<RbmCurve>& curves) {
  std::string out = "descriptor,hidden_units,mean_accuracy,std\n";
  for (const RbmCurve& curve : curves) {
    for (const RbmPoint& point : curve.points) {
      out += csv_field(curve.descriptor) + ',' + std::to_string(point.hidden) + ',' +
             fmt_fixed(point.mean, 1) + ',' + fmt_fixed(point.stddev, 1) + '\n';
    }
  }
  return out;
}

namespace {
constexpr const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
}  // namespace

// Static SVG 1.1 line chart: accuracy against hidden-unit count (log2 x),
// one solid series per descriptor plus its dashed no-feature-learning
// baseline.
std::string render_rbm_sweep_svg(const std::vector<RbmCurve>& curves) {
  const double width = 880, height = 560;
  const double left = 70, right = 180, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_min = 1e300, x_max = -1e300;
  for (const RbmCurve& curve : curves) {
    for (const RbmPoint& point : curve.points) {
      x_min = std::min(x_min, static_cast<double>(point.hidden));
      x_max = std::max(x_max, static_cast<double>(point.hidden));
    }
  }
  const double lx_min = std::log2(x_min);
  const double lx_max = x_max > x_min ? std::log2(x_max) : lx_min + 1.0;
  const double y_min = 40.0, y_max = 100.0;

  auto px = [&](double hidden) {
    return left + (std::log2(hidden) - lx_min) / (lx_max - lx_min) * plot_w;
  };
  auto py = [&](double acc) {
    const double clamped = std::clamp(acc, y_min, y_max);
    return top + (y_max - clamped) / (y_max - y_min) * plot_h;
  };

  std::string svg =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"880\" "
      "height=\"560\" viewBox=\"0 0 880 560\">\n"
      "<rect width=\"880\" height=\"560\" fill=\"white\"/>\n"
      "<text x=\"440\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
      "text-anchor=\"middle\">Classification accuracy of learned features</text>\n";

  // gridlines + y labels
  for (int acc = 40; acc <= 100; acc += 10) {
    const double y = py(acc);
    svg += "<line x1=\"" + fmt_fixed(left, 2) + "\" y1=\"" + fmt_fixed(y, 2) + "\" x2=\"" +
           fmt_fixed(left + plot_w, 2) + "\" y2=\"" + fmt_fixed(y, 2) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt_fixed(left - 8, 2) + "\" y=\"" + fmt_fixed(y + 4, 2) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" +
           std::to_string(acc) + "</text>\n";
  }
  // x ticks at each hidden count present in the first curve
  if (!curves.empty()) {
    for (const RbmPoint& point : curves.front().points) {
      const double x = px(point.hidden);
      svg += "<line x1=\"" + fmt_fixed(x, 2) + "\" y1=\"" + fmt_fixed(top + plot_h, 2) +
             "\" x2=\"" + fmt_fixed(x, 2) + "\" y2=\"" + fmt_fixed(top + plot_h + 6, 2) +
             "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
      svg += "<text x=\"" + fmt_fixed(x, 2) + "\" y=\"" + fmt_fixed(top + plot_h + 22, 2) +
             "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
             std::to_string(point.hidden) + "</text>\n";
    }
  }
  svg += "<text x=\"" + fmt_fixed(left + plot_w / 2, 2) + "\" y=\"" +
         fmt_fixed(height - 14, 2) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">hidden "
         "units</text>\n";
  svg += "<text x=\"20\" y=\"" + fmt_fixed(top + plot_h / 2, 2) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 20 " +
         fmt_fixed(top + plot_h / 2, 2) + ")\">accuracy (%)</text>\n";
  // axes
  svg += "<line x1=\"" + fmt_fixed(left, 2) + "\" y1=\"" + fmt_fixed(top, 2) + "\" x2=\"" +
         fmt_fixed(left, 2) + "\" y2=\"" + fmt_fixed(top + plot_h, 2) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt_fixed(left, 2) + "\" y1=\"" + fmt_fixed(top + plot_h, 2) +
         "\" x2=\"" + fmt_fixed(left + plot_w, 2) + "\" y2=\"" + fmt_fixed(top + plot_h, 2) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  for (std::size_t s = 0; s < curves.size(); ++s) {
    const RbmCurve& curve = curves[s];
    const char* color = kSeriesColors[s % 8];

    std::string points;
    for (const RbmPoint& point : curve.points) {
      if (!points.empty()) points += ' ';
      points += fmt_fixed(px(point.hidden), 2) + ',' + fmt_fixed(py(point.mean), 2);
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    for (const RbmPoint& point : curve.points) {
      svg += "<circle cx=\"" + fmt_fixed(px(point.hidden), 2) + "\" cy=\"" +
             fmt_fixed(py(point.mean), 2) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    // dashed raw baseline
    svg += "<line x1=\"" + fmt_fixed(left, 2) + "\" y1=\"" + fmt_fixed(py(curve.raw_mean), 2) +
           "\" x2=\"" + fmt_fixed(left + plot_w, 2) + "\" y2=\"" +
           fmt_fixed(py(curve.raw_mean), 2) + "\" stroke=\"" + color +
           "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";

    const double ly = top + 18 + 36 * static_cast<double>(s);
    svg += "<line x1=\"" + fmt_fixed(width - right + 14, 2) + "\" y1=\"" + fmt_fixed(ly, 2) +
           "\" x2=\"" + fmt_fixed(width - right + 44, 2) + "\" y2=\"" + fmt_fixed(ly, 2) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt_fixed(width - right + 50, 2) + "\" y=\"" + fmt_fixed(ly + 4, 2) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + curve.descriptor + "</text>\n";
    svg += "<line x1=\"" + fmt_fixed(width - right + 14, 2) + "\" y1=\"" +
           fmt_fixed(ly + 16, 2) + "\" x2=\"" + fmt_fixed(width - right + 44, 2) + "\" y2=\"" +
           fmt_fixed(ly + 16, 2) + "\" stroke=\"" + color +
           "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
    svg += "<text x=\"" + fmt_fixed(width - right + 50, 2) + "\" y=\"" +
           fmt_fixed(ly + 20, 2) + "\" font-family=\"sans-serif\" font-size=\"12\">" +
           curve.descriptor + " raw</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_provenance_json(const Provenance& provenance, bool rbm_omitted) {
  std::string out = "{\n";
  out += "  \"tool_version\": \"" + provenance.tool_version + "\",\n";
  out += "  \"config_hash\": \"" + provenance.config_hash + "\",\n";
  out += "  \"dataset_checksum\": \"" + provenance.dataset_checksum + "\",\n";
  out += "  \"notes\": [";
  std::vector<std::string> notes = provenance.notes;
  if (rbm_omitted) notes.push_back("rbm sweep empty; rbm_sweep files omitted");
  for (std::size_t i = 0; i < notes.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + notes[i] + "\"";
  }
  out += "]\n}\n";
  return out;
}

void emit_report(const ExperimentReport& report, const std::string& output_dir) {
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) fail(Err::IoError, "cannot create output directory: " + output_dir);

  const fs::path dir(output_dir);
  write_file_bytes((dir / "clustering.csv").string(), render_clustering_csv(report.clustering_table));
  write_file_bytes((dir / "svm.csv").string(), render_svm_csv(report.svm_table));

  bool has_points = false;
  for (const RbmCurve& curve : report.rbm_curves) {
    if (!curve.points.empty()) has_points = true;
  }
  if (has_points) {
    write_file_bytes((dir / "rbm_sweep.csv").string(), render_rbm_sweep_csv(report.rbm_curves));
    write_file_bytes((dir / "rbm_sweep.svg").string(), render_rbm_sweep_svg(report.rbm_curves));
  }
  write_file_bytes((dir / "provenance.json").string(),
                   render_provenance_json(report.provenance, !has_points));
}

std::string features_csv(const PreparedData& data, const DescriptorKind& kind) {
  const std::size_t dim = descriptor_length(kind);
  std::string out = "path,label,kind";
  for (std::size_t j = 0; j < dim; ++j) out += ",v" + std::to_string(j);
  out += '\n';

  const FeatureMatrix features = features_for(data, kind);
  for (std::size_t i = 0; i < features.rows; ++i) {
    out += csv_field(data.paths[i]) + ',' + std::string(label_name(data.labels[i])) + ',' +
           csv_field(kind.name());
    for (std::size_t j = 0; j < features.cols; ++j) {
      out += ',' + fmt_sig(features.at(i, j), 9);
    }
    out += '\n';
  }
  return out;
}

std::string moments_csv(const PreparedData& data, const std::vector<DescriptorKind>& kinds) {
  std::string out = "path,label,kind,mean,variance,skewness,kurtosis\n";
  for (const DescriptorKind& kind : kinds) {
    const FeatureMatrix features = features_for(data, kind);
    for (std::size_t i = 0; i < features.rows; ++i) {
      FeatureVector vec{kind, {features.row(i), features.row(i) + features.cols}, true};
      const MomentSummary m = moments(vec);
      out += csv_field(data.paths[i]) + ',' + std::string(label_name(data.labels[i])) + ',' +
             csv_field(kind.name()) + ',' + fmt_sig(m.mean, 9) + ',' +
             fmt_sig(m.variance, 9) + ',' + fmt_sig(m.skewness, 9) + ',' +
             fmt_sig(m.kurtosis, 9) + '\n';
    }
  }
  return out;
}

}  // namespace shapecat
