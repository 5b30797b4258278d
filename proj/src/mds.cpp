#include "focal/mds.hpp"

#include <cmath>

#include "focal/errors.hpp"
#include "focal/geometry.hpp"

namespace focal {

namespace {

// Spectrum entries below this share of the largest magnitude are numerical
// noise, not genuine positive dispersion directions.
double positivity_threshold(const Eigen::VectorXd& eigenvalues) {
  const double largest = eigenvalues.array().abs().maxCoeff();
  return 1e-12 * std::max(largest, 1.0);
}

}  // namespace

Eigen::MatrixXd double_center(const DistanceMatrix& d) {
  const Eigen::Index n = d.size();
  const Eigen::MatrixXd& m = d.entries();
  const Eigen::VectorXd row_means = m.rowwise().mean();
  const double grand_mean = row_means.mean();
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      b(i, j) = -0.5 * (m(i, j) - row_means(i) - row_means(j) + grand_mean);
    }
  }
  return 0.5 * (b + b.transpose());
}

MdsEmbedding embed(const DistanceMatrix& d, Eigen::Index dims) {
  if (dims < 1) throw ValidationError("embedding needs at least one dimension");
  const Eigen::Index n = d.size();

  const Eigen::MatrixXd b = double_center(d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) {
    throw Error("eigendecomposition failed to converge");
  }

  // Solver order is ascending; the embedding wants the spectrum descending.
  const Eigen::VectorXd eigenvalues = solver.eigenvalues().reverse();
  const Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

  const double threshold = positivity_threshold(eigenvalues);
  Eigen::Index positive = 0;
  while (positive < n && eigenvalues(positive) > threshold) ++positive;

  const Eigen::Index retained = std::min(dims, n);
  MdsEmbedding embedding;
  embedding.eigenvalues = eigenvalues;
  embedding.coordinates = Eigen::MatrixXd::Zero(n, dims);
  embedding.padded = dims > positive;

  double retained_mass = 0.0;
  for (Eigen::Index k = 0; k < retained && k < positive; ++k) {
    Eigen::VectorXd column = vectors.col(k) * std::sqrt(eigenvalues(k));
    // Canonical sign: the entry of largest magnitude is positive, ties
    // resolved toward the lowest index.
    Eigen::Index anchor = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(column(i)) > std::abs(column(anchor))) anchor = i;
    }
    if (column(anchor) < 0.0) column = -column;
    embedding.coordinates.col(k) = column;
    retained_mass += eigenvalues(k);
  }

  double positive_mass = 0.0;
  for (Eigen::Index k = 0; k < positive; ++k) positive_mass += eigenvalues(k);
  embedding.explained_fraction = positive_mass > 0.0 ? retained_mass / positive_mass : 0.0;
  embedding.explained_fractions = Eigen::VectorXd::Zero(dims);
  double running = 0.0;
  for (Eigen::Index k = 0; k < dims; ++k) {
    if (k < positive && k < n) running += eigenvalues(k);
    embedding.explained_fractions(k) = positive_mass > 0.0 ? running / positive_mass : 0.0;
  }
  embedding.total_dispersion = retained_mass / static_cast<double>(n);
  return embedding;
}

Eigen::VectorXd project_point(const MdsEmbedding& embedding, const FeatureMatrix& x,
                              const WeightDistribution& f, const Eigen::VectorXd& point) {
  const Eigen::Index n = x.rows();
  if (f.size() != n || embedding.coordinates.rows() != n) {
    throw DimensionMismatchError("embedding, features and weights must cover the same individuals");
  }
  if (point.size() != x.cols()) {
    throw DimensionMismatchError("point has wrong dimension");
  }
  const double uniform = 1.0 / static_cast<double>(n);
  if ((f.weights().array() - uniform).abs().maxCoeff() > 1e-12) {
    throw ValidationError("projection requires the uniform weighting the embedding was built under");
  }

  const Eigen::VectorXd mean = centroid(x, f);
  const Eigen::MatrixXd centered = x.values().rowwise() - mean.transpose();
  const Eigen::VectorXd against_rows = centered * (point - mean);

  const Eigen::Index dims = embedding.coordinates.cols();
  const double threshold = positivity_threshold(embedding.eigenvalues);
  Eigen::VectorXd projected = Eigen::VectorXd::Zero(dims);
  for (Eigen::Index k = 0; k < dims && k < embedding.eigenvalues.size(); ++k) {
    const double lambda = embedding.eigenvalues(k);
    if (lambda <= threshold) break;
    projected(k) = embedding.coordinates.col(k).dot(against_rows) / lambda;
  }
  return projected;
}

}  // namespace focal
