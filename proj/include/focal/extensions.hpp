#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "focal/types.hpp"

namespace focal {

/// Contrast weight and membership decay rate for the prototypicality
/// function.  Defaults fit conversational group data.
struct MetaContrastParams {
  double lambda = 0.08;  // complement-dispersion weight, in [0, 1]
  double beta = 7.7;     // membership decay rate, > 0
};

enum class ExtremumKind { Minimum, Maximum, Unbounded };

/// Unique bounded extremum of gamma(a) = A inertia_g(a) - B inertia_f(a),
/// when one exists (A != B).  eps and a are absent for the unbounded case.
struct SubtractiveExtremum {
  ExtremumKind kind;
  std::optional<double> eps;
  std::optional<Eigen::VectorXd> a;
};

/// Miss-to-false-alarm style ratio of exponential-membership assignments:
///   (sum_i g_i (1 - e^{-beta d_ia})) / (sum_i f_i (1 - e^{-beta d_ia})).
/// Tends to the relative dispersion as beta -> 0.
double decision_ratio(const FeatureMatrix& x, const WeightDistribution& f,
                      const WeightDistribution& g, const Eigen::VectorXd& a,
                      double beta);

/// Extremum of the subtractive combination.  Its position depends only on
/// the two centroids, never on the dispersions.
SubtractiveExtremum subtractive_extremum(const FeatureMatrix& x,
                                         const WeightDistribution& f,
                                         const WeightDistribution& g, double A,
                                         double B);

/// Self-determined membership around a under a uniform context:
///   g_i(a) = e^{-beta d_ia} / Z(a),  rho(a) = Z(a) / n.
struct Membership {
  WeightDistribution g_of_a;
  double rho;
};

Membership metacontrast_membership(const FeatureMatrix& x, const Eigen::VectorXd& a,
                                   double beta);

/// Prototypicality value
///   Gamma(a) = (1 - lambda) inertia_{g(a)}(a) - lambda inertia_{gbar(a)}(a)
/// with g(a) from metacontrast_membership and gbar(a) its complement at
/// rho(a).
double metacontrast_value(const FeatureMatrix& x, const Eigen::VectorXd& a,
                          const MetaContrastParams& params);

struct PrototypicalPoint {
  double position;
  double value;
};

/// All interior local minima of Gamma over [lo, hi] for one-dimensional
/// data: dense grid scan (grid_points >= 1001) plus golden-section
/// refinement of each bracketed minimum, deduplicated and sorted by
/// position.
std::vector<PrototypicalPoint> metacontrast_minimize(const FeatureMatrix& x,
                                                     const MetaContrastParams& params,
                                                     double lo, double hi,
                                                     int grid_points = 1001);

}  // namespace focal
