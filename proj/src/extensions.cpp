#include "focal/extensions.hpp"

#include <algorithm>
#include <cmath>

#include "focal/errors.hpp"
#include "focal/geometry.hpp"
#include "focal/numeric.hpp"

namespace focal {

namespace {

void validate_params(const MetaContrastParams& params) {
  if (!(params.lambda >= 0.0 && params.lambda <= 1.0)) {
    throw ValidationError("lambda must lie in [0, 1]");
  }
  if (!(params.beta > 0.0)) {
    throw ValidationError("beta must be positive");
  }
}

Eigen::VectorXd squared_distances_to(const FeatureMatrix& x, const Eigen::VectorXd& a) {
  if (a.size() != x.cols()) {
    throw DimensionMismatchError("point has wrong dimension");
  }
  Eigen::VectorXd d(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    d(i) = (x.values().row(i).transpose() - a).squaredNorm();
  }
  return d;
}

// Exponential memberships around a.  s_i = 1 - e^{-beta d_ia} is computed
// through expm1 so a small beta keeps full precision.
struct MembershipParts {
  Eigen::VectorXd distances;  // d_ia
  Eigen::VectorXd g;          // e^{-beta d_ia} / Z
  Eigen::VectorXd gbar;       // s_i / sum_j s_j
  double rho;                 // Z / n
};

MembershipParts membership_parts(const FeatureMatrix& x, const Eigen::VectorXd& a,
                                 double beta) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive");
  const Eigen::Index n = x.rows();

  MembershipParts parts;
  parts.distances = squared_distances_to(x, a);
  Eigen::VectorXd s(n);
  KahanSum s_total;
  for (Eigen::Index i = 0; i < n; ++i) {
    s(i) = -std::expm1(-beta * parts.distances(i));
    s_total.add(s(i));
  }
  const double away_mass = s_total.value();
  if (away_mass <= 0.0) {
    throw DegenerateContextError("viewpoint coincides with every individual; complement undefined");
  }
  const double z = static_cast<double>(n) - away_mass;
  if (z <= 0.0) {
    throw DegenerateContextError("membership vanishes: viewpoint infinitely far from all individuals");
  }
  parts.g = (1.0 - s.array()) / z;
  parts.gbar = s.array() / away_mass;
  parts.rho = z / static_cast<double>(n);
  return parts;
}

double weighted_distance_sum(const Eigen::VectorXd& weights,
                             const Eigen::VectorXd& distances) {
  KahanSum total;
  for (Eigen::Index i = 0; i < weights.size(); ++i) total.add(weights(i) * distances(i));
  return total.value();
}

// Golden-section minimization over [lo, hi], assuming a bracketed minimum.
template <typename Fn>
double golden_minimize(Fn&& fn, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double decision_ratio(const FeatureMatrix& x, const WeightDistribution& f,
                      const WeightDistribution& g, const Eigen::VectorXd& a,
                      double beta) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive");
  if (f.size() != x.rows() || g.size() != x.rows()) {
    throw DimensionMismatchError("weight count does not match row count");
  }
  const Eigen::VectorXd distances = squared_distances_to(x, a);
  KahanSum numerator;
  KahanSum denominator;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double miss = -std::expm1(-beta * distances(i));
    numerator.add(g[i] * miss);
    denominator.add(f[i] * miss);
  }
  if (denominator.value() <= 0.0) {
    throw DegenerateContextError("context support coincides with the viewpoint");
  }
  return numerator.value() / denominator.value();
}

SubtractiveExtremum subtractive_extremum(const FeatureMatrix& x,
                                         const WeightDistribution& f,
                                         const WeightDistribution& g, double A,
                                         double B) {
  if (A == 0.0 && B == 0.0) {
    throw ValidationError("combination is identically zero");
  }
  const Eigen::VectorXd mean_f = centroid(x, f);
  const Eigen::VectorXd mean_g = centroid(x, g);
  const double d_fg = (mean_f - mean_g).squaredNorm();
  if (d_fg <= 1e-12 * (centroid_inertia(x, f) + 1.0)) {
    throw CoincidentCentroidsError("group centroid coincides with the context centroid");
  }
  if (A == B) {
    return SubtractiveExtremum{ExtremumKind::Unbounded, std::nullopt, std::nullopt};
  }
  const double eps = A / (B - A);
  SubtractiveExtremum extremum;
  extremum.kind = A > B ? ExtremumKind::Minimum : ExtremumKind::Maximum;
  extremum.eps = eps;
  extremum.a = mean_f + eps * (mean_f - mean_g);
  return extremum;
}

Membership metacontrast_membership(const FeatureMatrix& x, const Eigen::VectorXd& a,
                                   double beta) {
  const MembershipParts parts = membership_parts(x, a, beta);
  return Membership{WeightDistribution(parts.g), parts.rho};
}

double metacontrast_value(const FeatureMatrix& x, const Eigen::VectorXd& a,
                          const MetaContrastParams& params) {
  validate_params(params);
  const MembershipParts parts = membership_parts(x, a, params.beta);
  const double within = weighted_distance_sum(parts.g, parts.distances);
  const double against = weighted_distance_sum(parts.gbar, parts.distances);
  return (1.0 - params.lambda) * within - params.lambda * against;
}

std::vector<PrototypicalPoint> metacontrast_minimize(const FeatureMatrix& x,
                                                     const MetaContrastParams& params,
                                                     double lo, double hi,
                                                     int grid_points) {
  validate_params(params);
  if (x.cols() != 1) {
    throw ValidationError("prototypicality scan requires one-dimensional data");
  }
  if (x.rows() < 2) {
    throw ValidationError("complement undefined for a single individual");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ValidationError("scan domain must be a finite non-empty interval");
  }

  const int points = std::max(grid_points, 1001);
  const auto value_at = [&](double t) {
    return metacontrast_value(x, Eigen::VectorXd::Constant(1, t), params);
  };

  std::vector<double> grid(static_cast<std::size_t>(points));
  std::vector<double> values(static_cast<std::size_t>(points));
  const double span = static_cast<double>(points - 1);
  for (int t = 0; t < points; ++t) {
    grid[t] = (static_cast<double>(points - 1 - t) * lo + static_cast<double>(t) * hi) / span;
    values[t] = value_at(grid[t]);
  }

  std::vector<PrototypicalPoint> minima;
  const double tol = 1e-10 * std::max({1.0, std::abs(lo), std::abs(hi)});
  for (int t = 1; t + 1 < points; ++t) {
    if (!(values[t] < values[t - 1] && values[t] < values[t + 1])) continue;
    const double position = golden_minimize(value_at, grid[t - 1], grid[t + 1], tol);
    const PrototypicalPoint candidate{position, value_at(position)};
    // Refinement from adjacent brackets can land in one basin twice.
    if (!minima.empty() && std::abs(minima.back().position - position) < 1e-6) {
      if (candidate.value < minima.back().value) minima.back() = candidate;
      continue;
    }
    minima.push_back(candidate);
  }
  return minima;
}

}  // namespace focal
