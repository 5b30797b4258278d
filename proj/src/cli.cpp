#include "focal/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "focal/complement.hpp"
#include "focal/dispersion.hpp"
#include "focal/errors.hpp"
#include "focal/extensions.hpp"
#include "focal/geometry.hpp"
#include "focal/ingest.hpp"
#include "focal/mds.hpp"
#include "focal/report.hpp"
#include "focal/types.hpp"
#include "focal/version.hpp"

namespace focal {

namespace {

struct CommonOptions {
  std::string data_path;
  std::string format = "csv";
  bool header = false;
  std::string delimiter = ",";
  std::int64_t label_column = -1;
  std::string group_label;
  std::string group_indices;
  std::string group_weights_path;
  std::string weights_path;
  std::string float_format = "shortest";
};

void add_data_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--data", opt.data_path, "Input file, or - for standard input")
      ->required();
  cmd->add_option("--format", opt.format, "Input format")
      ->check(CLI::IsMember({"csv", "uci-votes"}))
      ->capture_default_str();
  cmd->add_flag("--header", opt.header, "First CSV row is a header");
  cmd->add_option("--delimiter", opt.delimiter, "CSV field delimiter")
      ->capture_default_str();
  cmd->add_option("--label-column", opt.label_column,
                  "0-based CSV column holding labels, excluded from the features");
  cmd->add_option("--float-format", opt.float_format, "Float rendering in outputs")
      ->check(CLI::IsMember({"shortest", "fixed17"}))
      ->capture_default_str();
}

void add_group_options(CLI::App* cmd, CommonOptions& opt) {
  auto* by_label =
      cmd->add_option("--group-label", opt.group_label, "Group = rows with this label");
  auto* by_indices = cmd->add_option("--group-indices", opt.group_indices,
                                     "Group = comma-separated 0-based row indices");
  auto* by_weights = cmd->add_option("--group-weights", opt.group_weights_path,
                                     "Group = weight file, one value per row");
  by_label->excludes(by_indices)->excludes(by_weights);
  by_indices->excludes(by_weights);
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

std::vector<std::string> split(const std::string& text, char delimiter) {
  std::vector<std::string> tokens;
  std::string::size_type start = 0;
  while (true) {
    const std::string::size_type end = text.find(delimiter, start);
    if (end == std::string::npos) {
      tokens.push_back(text.substr(start));
      return tokens;
    }
    tokens.push_back(text.substr(start, end - start));
    start = end + 1;
  }
}

double parse_real(const std::string& token, const std::string& what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
    throw ValidationError(what + ": '" + token + "' is not a finite number");
  }
  return value;
}

Eigen::VectorXd parse_weight_file(const std::string& bytes) {
  std::vector<double> values;
  std::istringstream in(bytes);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    values.push_back(parse_real(line, "weight file entry"));
  }
  if (values.empty()) throw ValidationError("weight file is empty");
  return Eigen::Map<Eigen::VectorXd>(values.data(),
                                     static_cast<Eigen::Index>(values.size()));
}

std::vector<Eigen::Index> parse_index_list(const std::string& text) {
  std::vector<Eigen::Index> indices;
  for (const std::string& token : split(text, ',')) {
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ValidationError("group index '" + token + "' is not an integer");
    }
    indices.push_back(static_cast<Eigen::Index>(value));
  }
  return indices;
}

struct Dataset {
  FeatureMatrix features;
  std::vector<std::string> labels;
  JsonValue::Object checksums;
};

Dataset load_dataset(const CommonOptions& opt) {
  const std::string bytes = read_input(opt.data_path);
  JsonValue::Object checksums;
  checksums["data"] = checksum_hex(bytes);
  std::istringstream in(bytes);

  if (opt.format == "uci-votes") {
    const VotingDataset imputed = impute_group_mean(parse_votes(in));
    std::vector<std::string> labels;
    labels.reserve(imputed.labels.size());
    for (const Party party : imputed.labels) labels.push_back(to_string(party));
    return Dataset{FeatureMatrix(imputed.imputed), std::move(labels),
                   std::move(checksums)};
  }

  if (opt.delimiter.size() != 1) {
    throw ValidationError("delimiter must be a single character");
  }
  CsvSchema schema;
  schema.delimiter = opt.delimiter[0];
  schema.has_header = opt.header;
  if (opt.label_column >= 0) schema.label_column = opt.label_column;
  CsvData data = load_csv(in, schema);
  return Dataset{std::move(data.features), std::move(data.labels), std::move(checksums)};
}

WeightDistribution load_context(const CommonOptions& opt, Eigen::Index n,
                                JsonValue::Object& checksums) {
  if (opt.weights_path.empty()) return WeightDistribution::uniform(n);
  const std::string bytes = read_input(opt.weights_path);
  checksums["weights"] = checksum_hex(bytes);
  const Eigen::VectorXd raw = parse_weight_file(bytes);
  if (raw.size() != n) {
    throw ValidationError("context weight count does not match dataset size");
  }
  return WeightDistribution::normalized(raw);
}

std::optional<WeightDistribution> load_group(const CommonOptions& opt,
                                             const Dataset& dataset,
                                             JsonValue::Object& checksums) {
  const Eigen::Index n = dataset.features.rows();
  if (!opt.group_label.empty()) {
    return resolve_group(GroupSpec::by_label(opt.group_label), n, dataset.labels);
  }
  if (!opt.group_indices.empty()) {
    return resolve_group(GroupSpec::by_indices(parse_index_list(opt.group_indices)), n,
                         dataset.labels);
  }
  if (!opt.group_weights_path.empty()) {
    const std::string bytes = read_input(opt.group_weights_path);
    checksums["group_weights"] = checksum_hex(bytes);
    return resolve_group(GroupSpec::by_weights(parse_weight_file(bytes)), n,
                         dataset.labels);
  }
  return std::nullopt;
}

WeightDistribution require_group(const CommonOptions& opt, const Dataset& dataset,
                                 JsonValue::Object& checksums) {
  std::optional<WeightDistribution> group = load_group(opt, dataset, checksums);
  if (!group) {
    throw ValidationError(
        "one of --group-label, --group-indices, --group-weights is required");
  }
  return *std::move(group);
}

FloatStyle float_style(const CommonOptions& opt) {
  return opt.float_format == "fixed17" ? FloatStyle::Fixed17 : FloatStyle::Shortest;
}

JsonValue vector_json(const Eigen::VectorXd& v) {
  JsonValue::Array array;
  array.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) array.emplace_back(v(i));
  return JsonValue(std::move(array));
}

JsonValue::Object root_json(const CommonOptions& opt, const Dataset& dataset,
                            const std::optional<WeightDistribution>& group,
                            JsonValue::Object checksums) {
  JsonValue::Object input;
  input["path"] = opt.data_path;
  input["format"] = opt.format;
  input["n"] = static_cast<std::int64_t>(dataset.features.rows());
  input["p"] = static_cast<std::int64_t>(dataset.features.cols());
  if (group) input["group_size"] = static_cast<std::int64_t>(group->support_size());
  input["checksums"] = JsonValue(std::move(checksums));

  JsonValue::Object root;
  root["schema_version"] = kReportSchemaVersion;
  root["tool_version"] = kVersion;
  root["input"] = JsonValue(std::move(input));
  return root;
}

JsonValue analysis_json(const FocalAnalysis& analysis) {
  JsonValue::Object object;
  object["a_minus"] = vector_json(analysis.a_minus);
  object["a_plus"] = vector_json(analysis.a_plus);
  object["b_fg"] = analysis.b_fg;
  object["centroid_f"] = vector_json(analysis.centroid_f);
  object["centroid_g"] = vector_json(analysis.centroid_g);
  object["d_fg"] = analysis.d_fg;
  object["delta_at_minus"] = analysis.delta_at_minus;
  object["delta_at_plus"] = analysis.delta_at_plus;
  object["delta_f"] = analysis.delta_f;
  object["delta_g"] = analysis.delta_g;
  object["eps_minus"] = analysis.eps_minus;
  object["eps_plus"] = analysis.eps_plus;
  object["polarization_ratio"] = analysis.polarization_ratio;
  return JsonValue(std::move(object));
}

JsonValue::Object embedding_json(const MdsEmbedding& embedding, bool with_coordinates) {
  JsonValue::Object object;
  object["eigenvalues"] = vector_json(embedding.eigenvalues);
  object["explained_fraction"] = embedding.explained_fraction;
  object["explained_fractions"] = vector_json(embedding.explained_fractions);
  object["total_dispersion"] = embedding.total_dispersion;
  object["padded"] = embedding.padded;
  if (with_coordinates) {
    JsonValue::Array rows;
    rows.reserve(static_cast<std::size_t>(embedding.coordinates.rows()));
    for (Eigen::Index i = 0; i < embedding.coordinates.rows(); ++i) {
      rows.push_back(vector_json(embedding.coordinates.row(i).transpose()));
    }
    object["coordinates"] = JsonValue(std::move(rows));
  }
  return object;
}

// Projections of the four analysis landmarks onto the embedding plane.
void add_projections(JsonValue::Object& object, const MdsEmbedding& embedding,
                     const FeatureMatrix& features, const FocalAnalysis& analysis) {
  const WeightDistribution uniform = WeightDistribution::uniform(features.rows());
  JsonValue::Object projections;
  projections["a_minus"] =
      vector_json(project_point(embedding, features, uniform, analysis.a_minus));
  projections["a_plus"] =
      vector_json(project_point(embedding, features, uniform, analysis.a_plus));
  projections["centroid_f"] =
      vector_json(project_point(embedding, features, uniform, analysis.centroid_f));
  projections["centroid_g"] =
      vector_json(project_point(embedding, features, uniform, analysis.centroid_g));
  object["projections"] = JsonValue(std::move(projections));
}

struct AnalyzeOptions {
  CommonOptions common;
  bool with_complement = false;
  std::optional<double> rho;
  std::optional<Eigen::Index> mds_dims;
};

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out) {
  const Dataset dataset = load_dataset(opt.common);
  JsonValue::Object checksums = dataset.checksums;
  const WeightDistribution context =
      load_context(opt.common, dataset.features.rows(), checksums);
  const WeightDistribution group = require_group(opt.common, dataset, checksums);

  const FocalAnalysis analysis = focal_points(dataset.features, context, group);
  JsonValue::Object root = root_json(opt.common, dataset, group, std::move(checksums));
  root["analysis"] = analysis_json(analysis);

  if (opt.with_complement) {
    const ComplementResult complement = complement_of(context, group, opt.rho);
    const FocalAnalysis dual = focal_points(dataset.features, context, complement.gbar);
    JsonValue::Object block;
    block["analysis"] = analysis_json(dual);
    block["duality_residual"] = (analysis.a_plus - dual.a_minus).norm();
    block["rho"] = complement.rho;
    block["rho_max"] = complement.rho_max;
    root["complement"] = JsonValue(std::move(block));
  }

  if (opt.mds_dims) {
    const MdsEmbedding embedding =
        embed(squared_distances(dataset.features), *opt.mds_dims);
    JsonValue::Object block = embedding_json(embedding, true);
    add_projections(block, embedding, dataset.features, analysis);
    root["mds"] = JsonValue(std::move(block));
  }

  out << JsonValue(std::move(root)).dump(float_style(opt.common));
  return 0;
}

struct MdsOptions {
  CommonOptions common;
  Eigen::Index dims = 2;
  std::string output = "tsv";
};

int cmd_mds(const MdsOptions& opt, std::ostream& out) {
  const Dataset dataset = load_dataset(opt.common);
  JsonValue::Object checksums = dataset.checksums;
  const std::optional<WeightDistribution> group =
      load_group(opt.common, dataset, checksums);
  const MdsEmbedding embedding = embed(squared_distances(dataset.features), opt.dims);
  const FloatStyle style = float_style(opt.common);

  if (opt.output == "tsv") {
    for (Eigen::Index i = 0; i < embedding.coordinates.rows(); ++i) {
      out << i;
      for (Eigen::Index k = 0; k < embedding.coordinates.cols(); ++k) {
        out << '\t' << format_double(embedding.coordinates(i, k), style);
      }
      out << '\t';
      if (!dataset.labels.empty()) {
        out << dataset.labels[static_cast<std::size_t>(i)];
      } else if (group) {
        out << ((*group)[i] > 0.0 ? "in" : "out");
      }
      out << '\n';
    }
    return 0;
  }

  JsonValue::Object root = root_json(opt.common, dataset, group, std::move(checksums));
  JsonValue::Object block = embedding_json(embedding, false);
  if (group) {
    const WeightDistribution uniform =
        WeightDistribution::uniform(dataset.features.rows());
    const FocalAnalysis analysis = focal_points(dataset.features, uniform, *group);
    add_projections(block, embedding, dataset.features, analysis);
  }
  for (auto& [key, value] : block) root["mds_" + key] = std::move(value);
  out << JsonValue(std::move(root)).dump(style);
  return 0;
}

struct ProfileOptions {
  CommonOptions common;
  double eps_min = -5.0;
  double eps_max = 5.0;
  int steps = 101;
};

int cmd_profile(const ProfileOptions& opt, std::ostream& out) {
  const Dataset dataset = load_dataset(opt.common);
  JsonValue::Object checksums = dataset.checksums;
  const WeightDistribution context =
      load_context(opt.common, dataset.features.rows(), checksums);
  const WeightDistribution group = require_group(opt.common, dataset, checksums);

  const FocalAnalysis analysis = focal_points(dataset.features, context, group);
  const std::vector<ProfileSample> samples = dispersion_profile(
      dataset.features, context, group, opt.eps_min, opt.eps_max, opt.steps);
  const FloatStyle style = float_style(opt.common);

  for (const ProfileSample& sample : samples) {
    out << format_double(sample.eps, style) << '\t'
        << format_double(sample.delta, style) << "\tsample\n";
  }
  out << format_double(analysis.eps_minus, style) << '\t'
      << format_double(analysis.delta_at_minus, style) << "\teps_minus\n";
  out << format_double(analysis.eps_plus, style) << '\t'
      << format_double(analysis.delta_at_plus, style) << "\teps_plus\n";
  return 0;
}

struct MetaOptions {
  CommonOptions common;
  double lambda = 0.08;
  double beta = 7.7;
  std::string domain = "0,1";
  int grid_points = 1001;
};

int cmd_metacontrast(const MetaOptions& opt, std::ostream& out) {
  const Dataset dataset = load_dataset(opt.common);
  const std::vector<std::string> bounds = split(opt.domain, ',');
  if (bounds.size() != 2) {
    throw ValidationError("--domain expects 'lo,hi'");
  }
  const double lo = parse_real(bounds[0], "domain bound");
  const double hi = parse_real(bounds[1], "domain bound");

  const MetaContrastParams params{opt.lambda, opt.beta};
  const std::vector<PrototypicalPoint> minima =
      metacontrast_minimize(dataset.features, params, lo, hi, opt.grid_points);

  JsonValue::Object root =
      root_json(opt.common, dataset, std::nullopt, dataset.checksums);
  root["beta"] = opt.beta;
  root["domain"] = JsonValue(JsonValue::Array{JsonValue(lo), JsonValue(hi)});
  root["grid_points"] = static_cast<std::int64_t>(std::max(opt.grid_points, 1001));
  root["lambda"] = opt.lambda;
  JsonValue::Array list;
  for (const PrototypicalPoint& minimum : minima) {
    JsonValue::Object entry;
    entry["position"] = minimum.position;
    entry["value"] = minimum.value;
    list.push_back(JsonValue(std::move(entry)));
  }
  root["minima"] = JsonValue(std::move(list));
  out << JsonValue(std::move(root)).dump(float_style(opt.common));
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"In-focus/out-focus analysis of weighted multivariate samples"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  AnalyzeOptions analyze_opt;
  double rho_value = 0.0;
  std::int64_t analyze_dims = 0;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Focal points, dispersions and polarization of a group");
  add_data_options(analyze, analyze_opt.common);
  add_group_options(analyze, analyze_opt.common);
  analyze->add_option("--weights", analyze_opt.common.weights_path,
                      "Context weight file, one value per row (default uniform)");
  CLI::Option* complement_flag = analyze->add_flag(
      "--complement", analyze_opt.with_complement, "Add the complementary-group analysis");
  CLI::Option* rho_opt =
      analyze->add_option("--rho", rho_value, "Mixing weight for the complement")
          ->needs(complement_flag);
  CLI::Option* dims_opt = analyze->add_option(
      "--mds-dims", analyze_dims, "Attach an MDS block with this many dimensions");

  MdsOptions mds_opt;
  CLI::App* mds_cmd =
      app.add_subcommand("mds", "Classical-scaling coordinates of the individuals");
  add_data_options(mds_cmd, mds_opt.common);
  add_group_options(mds_cmd, mds_opt.common);
  mds_cmd->add_option("--dims", mds_opt.dims, "Retained dimensions")
      ->capture_default_str();
  mds_cmd->add_option("--output", mds_opt.output, "Output form")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();

  ProfileOptions profile_opt;
  CLI::App* profile = app.add_subcommand(
      "profile", "Relative dispersion sampled along the centroid line");
  add_data_options(profile, profile_opt.common);
  add_group_options(profile, profile_opt.common);
  profile->add_option("--weights", profile_opt.common.weights_path,
                      "Context weight file, one value per row (default uniform)");
  profile->add_option("--eps-min", profile_opt.eps_min, "Lower line coordinate")
      ->capture_default_str();
  profile->add_option("--eps-max", profile_opt.eps_max, "Upper line coordinate")
      ->capture_default_str();
  profile->add_option("--steps", profile_opt.steps, "Number of samples")
      ->capture_default_str();

  MetaOptions meta_opt;
  CLI::App* metacontrast = app.add_subcommand(
      "metacontrast", "Prototypical positions of one-dimensional data");
  add_data_options(metacontrast, meta_opt.common);
  metacontrast->add_option("--lambda", meta_opt.lambda, "Contrast weight in [0,1]")
      ->capture_default_str();
  metacontrast->add_option("--beta", meta_opt.beta, "Membership decay rate")
      ->capture_default_str();
  metacontrast->add_option("--domain", meta_opt.domain, "Scan interval 'lo,hi'")
      ->capture_default_str();
  metacontrast->add_option("--grid", meta_opt.grid_points, "Scan grid size")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) {
      if (rho_opt->count() > 0) analyze_opt.rho = rho_value;
      if (dims_opt->count() > 0) analyze_opt.mds_dims = analyze_dims;
      return cmd_analyze(analyze_opt, std::cout);
    }
    if (*mds_cmd) return cmd_mds(mds_opt, std::cout);
    if (*profile) return cmd_profile(profile_opt, std::cout);
    if (*metacontrast) return cmd_metacontrast(meta_opt, std::cout);
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace focal
