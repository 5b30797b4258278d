#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "focal/types.hpp"

namespace focal {

enum class Party { Republican, Democrat };

std::string to_string(Party party);

/// Parsed 1984 congressional voting records: 16 key votes per member,
/// yea = 1, nay = 0, NaN while missing.
struct VotingDataset {
  std::vector<Party> labels;
  Eigen::MatrixXd votes;    // n x 16, NaN marks a missing vote
  Eigen::MatrixXd imputed;  // empty until impute_group_mean fills it

  Eigen::Index n_records() const noexcept { return votes.rows(); }
  Eigen::Index count(Party party) const noexcept;
};

/// Reads `<party>,<v1>,...,<v16>` lines with tokens in {y, n, ?}.
/// LF and CRLF both accepted.  Malformed lines raise ParseError carrying
/// the 1-based line number.
VotingDataset parse_votes(std::istream& in);

/// Replaces each missing vote by the mean of the non-missing entries in the
/// same column among members of the same party.  Non-missing entries are
/// untouched; a party/column pair with no observed vote is an error.
VotingDataset impute_group_mean(const VotingDataset& dataset);

/// Generic numeric CSV: RFC-4180 quoting, configurable delimiter, optional
/// header row, optional label column excluded from the features.
struct CsvSchema {
  char delimiter = ',';
  bool has_header = false;
  std::optional<Eigen::Index> label_column;
};

struct CsvData {
  FeatureMatrix features;
  std::vector<std::string> labels;  // empty unless a label column was configured
};

CsvData load_csv(std::istream& in, const CsvSchema& schema = {});

/// Writes a matrix as CSV with shortest round-trip float formatting, so a
/// reload reproduces every entry bit for bit.
void write_csv(std::ostream& out, const Eigen::MatrixXd& values);

/// Group selector: members matching a label, an explicit index list, or a
/// raw nonnegative weight vector.
struct GroupSpec {
  std::variant<std::string, std::vector<Eigen::Index>, Eigen::VectorXd> selector;

  static GroupSpec by_label(std::string label);
  static GroupSpec by_indices(std::vector<Eigen::Index> indices);
  static GroupSpec by_weights(Eigen::VectorXd weights);
};

/// Uniform distribution over the selected members, or the normalized custom
/// weights.  The selection must be non-empty and in range.
WeightDistribution resolve_group(const GroupSpec& spec, Eigen::Index n,
                                 const std::vector<std::string>& labels);

}  // namespace focal
