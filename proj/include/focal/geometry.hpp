#pragma once

#include <Eigen/Dense>

#include "focal/types.hpp"

namespace focal {

/// Pairwise squared Euclidean distances between the rows of x.
DistanceMatrix squared_distances(const FeatureMatrix& x);

/// Weighted mean of the rows of x.
Eigen::VectorXd centroid(const FeatureMatrix& x, const WeightDistribution& w);

/// Weighted inertia about an arbitrary point:  sum_i w_i |x_i - a|^2.
double inertia_about(const FeatureMatrix& x, const WeightDistribution& w,
                     const Eigen::VectorXd& a);

/// Inertia about the weighted mean, feature route.
double centroid_inertia(const FeatureMatrix& x, const WeightDistribution& w);

/// Inertia about the weighted mean from squared distances alone:
///   (1/2) sum_ij w_i w_j d_ij.
double centroid_inertia(const DistanceMatrix& d, const WeightDistribution& w);

/// Distance-only cross terms for a context/group pair:
///   d_fg = -(1/2) sum_ij (f_i - g_i)(f_j - g_j) d_ij   (squared centroid gap)
///   b_fg =        sum_ij f_i (f_j - g_j) d_ij          (inertia offset)
/// Tiny negative d_fg from cancellation is clamped to zero.
struct CrossTerms {
  double d_fg;
  double b_fg;
};

CrossTerms cross_terms(const DistanceMatrix& d, const WeightDistribution& f,
                       const WeightDistribution& g);

}  // namespace focal
