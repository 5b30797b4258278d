#include "focal/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "focal/errors.hpp"
#include "focal/report.hpp"

namespace focal {

namespace {

constexpr Eigen::Index kVoteCount = 16;
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const std::string::size_type end = line.find(delimiter, start);
    if (end == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

double parse_cell(const std::string& raw, std::size_t line, Eigen::Index column) {
  std::string::size_type begin = raw.find_first_not_of(" \t");
  if (begin == std::string::npos) {
    throw ParseError(line, "empty cell in column " + std::to_string(column + 1));
  }
  const std::string::size_type end = raw.find_last_not_of(" \t") + 1;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(raw.data() + begin, raw.data() + end, value);
  if (ec != std::errc{} || ptr != raw.data() + end || !std::isfinite(value)) {
    throw ParseError(line, "cell '" + raw + "' in column " + std::to_string(column + 1) +
                               " is not a finite number");
  }
  return value;
}

}  // namespace

std::string to_string(Party party) {
  return party == Party::Republican ? "republican" : "democrat";
}

Eigen::Index VotingDataset::count(Party party) const noexcept {
  return static_cast<Eigen::Index>(std::count(labels.begin(), labels.end(), party));
}

VotingDataset parse_votes(std::istream& in) {
  std::vector<Party> labels;
  std::vector<std::array<double, kVoteCount>> rows;

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != kVoteCount + 1) {
      throw ParseError(line_number, "expected 17 fields, found " +
                                        std::to_string(fields.size()));
    }
    if (fields[0] == "republican") {
      labels.push_back(Party::Republican);
    } else if (fields[0] == "democrat") {
      labels.push_back(Party::Democrat);
    } else {
      throw ParseError(line_number, "unknown party '" + fields[0] + "'");
    }
    std::array<double, kVoteCount> row;
    for (Eigen::Index k = 0; k < kVoteCount; ++k) {
      const std::string& token = fields[static_cast<std::size_t>(k) + 1];
      if (token == "y") {
        row[k] = 1.0;
      } else if (token == "n") {
        row[k] = 0.0;
      } else if (token == "?") {
        row[k] = kMissing;
      } else {
        throw ParseError(line_number, "unknown vote token '" + token + "' in field " +
                                          std::to_string(k + 2));
      }
    }
    rows.push_back(row);
  }

  VotingDataset dataset;
  dataset.labels = std::move(labels);
  dataset.votes.resize(static_cast<Eigen::Index>(rows.size()), kVoteCount);
  for (Eigen::Index i = 0; i < dataset.votes.rows(); ++i) {
    for (Eigen::Index k = 0; k < kVoteCount; ++k) {
      dataset.votes(i, k) = rows[static_cast<std::size_t>(i)][k];
    }
  }
  return dataset;
}

VotingDataset impute_group_mean(const VotingDataset& dataset) {
  const Eigen::Index n = dataset.n_records();
  if (n < 1) throw ValidationError("dataset has no records");

  // Column means per party over observed votes only.  Votes are 0/1, so
  // each mean is an exactly rounded ratio of two integers.
  double means[2][kVoteCount];
  for (const Party party : {Party::Republican, Party::Democrat}) {
    const std::size_t p = party == Party::Republican ? 0 : 1;
    for (Eigen::Index k = 0; k < kVoteCount; ++k) {
      double yeas = 0.0;
      double observed = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (dataset.labels[static_cast<std::size_t>(i)] != party) continue;
        const double vote = dataset.votes(i, k);
        if (std::isnan(vote)) continue;
        yeas += vote;
        observed += 1.0;
      }
      means[p][k] = observed > 0.0 ? yeas / observed : kMissing;
    }
  }

  VotingDataset imputed = dataset;
  imputed.imputed = dataset.votes;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Party party = dataset.labels[static_cast<std::size_t>(i)];
    const std::size_t p = party == Party::Republican ? 0 : 1;
    for (Eigen::Index k = 0; k < kVoteCount; ++k) {
      if (!std::isnan(imputed.imputed(i, k))) continue;
      if (std::isnan(means[p][k])) {
        throw ValidationError("no observed " + to_string(party) + " vote in column " +
                              std::to_string(k + 1));
      }
      imputed.imputed(i, k) = means[p][k];
    }
  }
  return imputed;
}

CsvData load_csv(std::istream& in, const CsvSchema& schema) {
  // RFC-4180 state machine: quoted fields may contain the delimiter,
  // doubled quotes and line breaks.
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> record_lines;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line_number = 1;
  std::size_t record_start_line = 1;

  const std::string content(std::istreambuf_iterator<char>(in), {});
  const auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  const auto end_record = [&] {
    end_field();
    if (fields.size() > 1 || !fields.front().empty()) {
      records.push_back(std::move(fields));
      record_lines.push_back(record_start_line);
    }
    fields.clear();
    record_start_line = line_number;
  };

  for (std::size_t pos = 0; pos < content.size(); ++pos) {
    const char c = content[pos];
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < content.size() && content[pos + 1] == '"') {
          field += '"';
          ++pos;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line_number;
        field += c;
      }
    } else if (c == '"' && field.empty() && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == schema.delimiter) {
      end_field();
    } else if (c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      ++line_number;
      end_record();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) {
    throw ParseError(record_start_line, "unterminated quoted field");
  }
  if (field_started || !fields.empty()) end_record();

  std::size_t first_row = 0;
  if (schema.has_header) {
    if (records.empty()) throw ValidationError("no header row");
    first_row = 1;
  }
  if (first_row >= records.size()) throw ValidationError("no data rows");

  const std::size_t width = records[first_row].size();
  const bool has_label = schema.label_column.has_value();
  if (has_label &&
      (*schema.label_column < 0 || static_cast<std::size_t>(*schema.label_column) >= width)) {
    throw ValidationError("label column out of range");
  }
  const Eigen::Index p = static_cast<Eigen::Index>(width) - (has_label ? 1 : 0);
  if (p < 1) throw ValidationError("no feature columns");

  const Eigen::Index rows = static_cast<Eigen::Index>(records.size() - first_row);
  Eigen::MatrixXd values(rows, p);
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::vector<std::string>& record = records[first_row + static_cast<std::size_t>(i)];
    const std::size_t line = record_lines[first_row + static_cast<std::size_t>(i)];
    if (record.size() != width) {
      throw ParseError(line, "row has " + std::to_string(record.size()) +
                                 " fields, expected " + std::to_string(width));
    }
    Eigen::Index k = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (has_label && static_cast<std::size_t>(*schema.label_column) == c) {
        labels.push_back(record[c]);
        continue;
      }
      values(i, k++) = parse_cell(record[c], line, static_cast<Eigen::Index>(c));
    }
  }
  return CsvData{FeatureMatrix(std::move(values)), std::move(labels)};
}

void write_csv(std::ostream& out, const Eigen::MatrixXd& values) {
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index k = 0; k < values.cols(); ++k) {
      if (k > 0) out << ',';
      out << format_double(values(i, k), FloatStyle::Shortest);
    }
    out << '\n';
  }
}

GroupSpec GroupSpec::by_label(std::string label) {
  return GroupSpec{std::move(label)};
}

GroupSpec GroupSpec::by_indices(std::vector<Eigen::Index> indices) {
  return GroupSpec{std::move(indices)};
}

GroupSpec GroupSpec::by_weights(Eigen::VectorXd weights) {
  return GroupSpec{std::move(weights)};
}

WeightDistribution resolve_group(const GroupSpec& spec, Eigen::Index n,
                                 const std::vector<std::string>& labels) {
  if (const std::string* label = std::get_if<std::string>(&spec.selector)) {
    if (static_cast<Eigen::Index>(labels.size()) != n) {
      throw ValidationError("dataset has no labels to match against");
    }
    Eigen::VectorXd indicator = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (labels[static_cast<std::size_t>(i)] == *label) indicator(i) = 1.0;
    }
    if (indicator.sum() <= 0.0) {
      throw ValidationError("label '" + *label + "' matches no individuals");
    }
    return WeightDistribution::normalized(std::move(indicator));
  }
  if (const auto* indices = std::get_if<std::vector<Eigen::Index>>(&spec.selector)) {
    if (indices->empty()) throw ValidationError("group index list is empty");
    std::set<Eigen::Index> unique;
    Eigen::VectorXd indicator = Eigen::VectorXd::Zero(n);
    for (const Eigen::Index i : *indices) {
      if (i < 0 || i >= n) {
        throw ValidationError("group index " + std::to_string(i) + " out of range");
      }
      if (!unique.insert(i).second) {
        throw ValidationError("group index " + std::to_string(i) + " repeated");
      }
      indicator(i) = 1.0;
    }
    return WeightDistribution::normalized(std::move(indicator));
  }
  const Eigen::VectorXd& weights = std::get<Eigen::VectorXd>(spec.selector);
  if (weights.size() != n) {
    throw ValidationError("group weight count does not match dataset size");
  }
  return WeightDistribution::normalized(weights);
}

}  // namespace focal
