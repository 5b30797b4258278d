#include "focal/types.hpp"

#include <cmath>
#include <string>

#include "focal/numeric.hpp"

namespace focal {

namespace {

// Sums within this distance of one are treated as file round-off and
// renormalized silently; anything larger is a user error.
constexpr double kSumSlack = 1e-9;

}  // namespace

FeatureMatrix::FeatureMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw ValidationError("feature matrix must have at least one row and one column");
  }
  if (!values_.allFinite()) {
    throw ValidationError("feature matrix contains a non-finite entry");
  }
}

WeightDistribution::WeightDistribution(Eigen::VectorXd weights)
    : weights_(std::move(weights)) {
  if (weights_.size() < 1) {
    throw ValidationError("weight vector is empty");
  }
  if (!weights_.allFinite()) {
    throw ValidationError("weight vector contains a non-finite entry");
  }
  if ((weights_.array() < 0.0).any()) {
    throw ValidationError("weights must be nonnegative");
  }
  KahanSum total;
  for (Eigen::Index i = 0; i < weights_.size(); ++i) total.add(weights_(i));
  const double sum = total.value();
  if (std::abs(sum - 1.0) > kSumSlack) {
    throw ValidationError("weights sum to " + std::to_string(sum) + ", expected 1");
  }
  if (sum != 1.0) weights_ /= sum;
}

WeightDistribution WeightDistribution::uniform(Eigen::Index n) {
  if (n < 1) throw ValidationError("uniform distribution needs n >= 1");
  return WeightDistribution(Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

WeightDistribution WeightDistribution::point_mass(Eigen::Index n, Eigen::Index at) {
  if (n < 1) throw ValidationError("point mass needs n >= 1");
  if (at < 0 || at >= n) throw ValidationError("point-mass index out of range");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  w(at) = 1.0;
  return WeightDistribution(std::move(w));
}

WeightDistribution WeightDistribution::normalized(Eigen::VectorXd raw) {
  if (raw.size() < 1) throw ValidationError("weight vector is empty");
  if (!raw.allFinite()) throw ValidationError("weight vector contains a non-finite entry");
  if ((raw.array() < 0.0).any()) throw ValidationError("weights must be nonnegative");
  const double sum = raw.sum();
  if (sum <= 0.0) throw ValidationError("weights sum to zero");
  return WeightDistribution(raw / sum);
}

Eigen::Index WeightDistribution::support_size() const noexcept {
  return (weights_.array() > 0.0).count();
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw ValidationError("distance matrix must be square and non-empty");
  }
  if (!entries_.allFinite()) {
    throw ValidationError("distance matrix contains a non-finite entry");
  }
  if ((entries_.array() < 0.0).any()) {
    throw ValidationError("distance matrix contains a negative entry");
  }
  if ((entries_.diagonal().array() != 0.0).any()) {
    throw ValidationError("distance matrix diagonal must be zero");
  }
  if (entries_ != entries_.transpose().eval()) {
    throw ValidationError("distance matrix must be symmetric");
  }
}

}  // namespace focal
