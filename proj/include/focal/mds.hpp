#pragma once

#include <Eigen/Dense>

#include "focal/types.hpp"

namespace focal {

/// Classical (Torgerson) scaling of a squared-distance matrix under uniform
/// weighting.
struct MdsEmbedding {
  Eigen::VectorXd eigenvalues;          // full spectrum of the centered matrix, non-increasing
  Eigen::MatrixXd coordinates;          // n x dims factorial coordinates, column means zero
  double explained_fraction;            // retained share of the positive spectrum
  Eigen::VectorXd explained_fractions;  // cumulative share after 1..dims dimensions
  double total_dispersion;              // inertia of the embedded cloud, sum of retained positive eigenvalues / n
  bool padded;                          // dims exceeded the positive rank; zero columns appended
};

/// Torgerson double centering:  B = -1/2 J D J with J = I - (1/n) 1 1^T.
Eigen::MatrixXd double_center(const DistanceMatrix& d);

/// Top-dims factorial coordinates (eigenvectors of B scaled by sqrt of the
/// eigenvalue).  Each column's largest-magnitude entry is made positive so
/// the output is deterministic.
MdsEmbedding embed(const DistanceMatrix& d, Eigen::Index dims);

/// Orthogonal projection of a feature-space point onto the retained axes,
/// consistent with the coordinates of the data rows.  Requires the uniform
/// weighting the embedding was built under.
Eigen::VectorXd project_point(const MdsEmbedding& embedding, const FeatureMatrix& x,
                              const WeightDistribution& f, const Eigen::VectorXd& point);

}  // namespace focal
