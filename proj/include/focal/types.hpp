#pragma once

#include <Eigen/Dense>

#include "focal/errors.hpp"

namespace focal {

/// n individuals x p real features. Entries are validated finite on construction.
class FeatureMatrix {
 public:
  explicit FeatureMatrix(Eigen::MatrixXd values);

  Eigen::Index rows() const noexcept { return values_.rows(); }
  Eigen::Index cols() const noexcept { return values_.cols(); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }

 private:
  Eigen::MatrixXd values_;
};

/// Nonnegative weights summing to one. Sums within 1e-9 of one are
/// renormalized silently (file round-off); larger deviations are rejected.
class WeightDistribution {
 public:
  explicit WeightDistribution(Eigen::VectorXd weights);

  static WeightDistribution uniform(Eigen::Index n);
  static WeightDistribution point_mass(Eigen::Index n, Eigen::Index at);
  /// Scales an arbitrary nonnegative vector with positive total to sum one.
  static WeightDistribution normalized(Eigen::VectorXd raw);

  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  double operator[](Eigen::Index i) const { return weights_(i); }
  Eigen::Index size() const noexcept { return weights_.size(); }
  /// Number of strictly positive entries.
  Eigen::Index support_size() const noexcept;

 private:
  Eigen::VectorXd weights_;
};

/// Symmetric matrix of squared Euclidean distances, zero diagonal.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(Eigen::MatrixXd entries);

  Eigen::Index size() const noexcept { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  Eigen::MatrixXd entries_;
};

}  // namespace focal
