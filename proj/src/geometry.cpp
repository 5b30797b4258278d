#include "focal/geometry.hpp"

#include "focal/errors.hpp"
#include "focal/numeric.hpp"

namespace focal {

namespace {

void require_same_size(const FeatureMatrix& x, const WeightDistribution& w) {
  if (w.size() != x.rows()) {
    throw DimensionMismatchError("weight count does not match row count");
  }
}

void require_same_size(const DistanceMatrix& d, const WeightDistribution& w) {
  if (w.size() != d.size()) {
    throw DimensionMismatchError("weight count does not match distance-matrix size");
  }
}

}  // namespace

DistanceMatrix squared_distances(const FeatureMatrix& x) {
  const Eigen::Index n = x.rows();
  const Eigen::MatrixXd& v = x.values();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dist = (v.row(i) - v.row(j)).squaredNorm();
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return DistanceMatrix(std::move(d));
}

Eigen::VectorXd centroid(const FeatureMatrix& x, const WeightDistribution& w) {
  require_same_size(x, w);
  const Eigen::MatrixXd& v = x.values();
  Eigen::VectorXd mean(x.cols());
  for (Eigen::Index k = 0; k < x.cols(); ++k) {
    KahanSum coordinate;
    for (Eigen::Index i = 0; i < x.rows(); ++i) coordinate.add(w[i] * v(i, k));
    mean(k) = coordinate.value();
  }
  return mean;
}

double inertia_about(const FeatureMatrix& x, const WeightDistribution& w,
                     const Eigen::VectorXd& a) {
  require_same_size(x, w);
  if (a.size() != x.cols()) {
    throw DimensionMismatchError("reference point has wrong dimension");
  }
  KahanSum total;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    total.add(w[i] * (x.values().row(i).transpose() - a).squaredNorm());
  }
  return clamp_roundoff(total.value());
}

double centroid_inertia(const FeatureMatrix& x, const WeightDistribution& w) {
  return inertia_about(x, w, centroid(x, w));
}

double centroid_inertia(const DistanceMatrix& d, const WeightDistribution& w) {
  require_same_size(d, w);
  KahanSum total;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    for (Eigen::Index j = i + 1; j < d.size(); ++j) {
      total.add(w[i] * w[j] * d(i, j));
    }
  }
  return clamp_roundoff(total.value());
}

CrossTerms cross_terms(const DistanceMatrix& d, const WeightDistribution& f,
                       const WeightDistribution& g) {
  require_same_size(d, f);
  require_same_size(d, g);
  const Eigen::Index n = d.size();
  KahanSum gap;     // -1/2 sum_ij (f_i - g_i)(f_j - g_j) d_ij
  KahanSum offset;  // sum_ij f_i (f_j - g_j) d_ij
  for (Eigen::Index i = 0; i < n; ++i) {
    const double hi = f[i] - g[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double hj = f[j] - g[j];
      gap.add(-0.5 * hi * hj * d(i, j));
      offset.add(f[i] * hj * d(i, j));
    }
  }
  return CrossTerms{clamp_roundoff(gap.value()), offset.value()};
}

}  // namespace focal
