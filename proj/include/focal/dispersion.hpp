#pragma once

#include <vector>

#include <Eigen/Dense>

#include "focal/types.hpp"

namespace focal {

/// Everything the in/out-focus solution determines for a context f and
/// group g: centroids, the scalar geometry, both focal points and their
/// dispersion values.
struct FocalAnalysis {
  Eigen::VectorXd centroid_f;
  Eigen::VectorXd centroid_g;
  double delta_f = 0.0;             // inertia of f about its centroid
  double delta_g = 0.0;             // inertia of g about its centroid
  double d_fg = 0.0;                // squared centroid gap, > 0
  double b_fg = 0.0;                // delta_f - delta_g - d_fg
  double eps_minus = 0.0;           // in-focus line coordinate, <= -1
  double eps_plus = 0.0;            // out-focus line coordinate, in (0, delta_f/d_fg]
  Eigen::VectorXd a_minus;          // in-focus point
  Eigen::VectorXd a_plus;           // out-focus point
  double delta_at_minus = 0.0;      // global minimum of the relative dispersion
  double delta_at_plus = 0.0;       // global maximum of the relative dispersion
  double polarization_ratio = 0.0;  // |eps_plus - eps_minus|, >= 1
};

/// Mixture coefficients alpha_i(eps) = (1+eps) f_i - eps g_i.  They sum to
/// one but may be negative outside eps in [-1, 0].
class SignedDistribution {
 public:
  explicit SignedDistribution(Eigen::VectorXd coefficients);

  const Eigen::VectorXd& coefficients() const noexcept { return coefficients_; }
  double operator[](Eigen::Index i) const { return coefficients_(i); }
  Eigen::Index size() const noexcept { return coefficients_.size(); }

 private:
  Eigen::VectorXd coefficients_;
};

/// Relative dispersion of group g within context f, seen from a:
///   delta(a) = (delta_g + |mean_g - a|^2) / (delta_f + |mean_f - a|^2).
/// Throws DegenerateContextError when the denominator vanishes (all f-mass
/// concentrated exactly at a).
double relative_dispersion(const FeatureMatrix& x, const WeightDistribution& f,
                           const WeightDistribution& g, const Eigen::VectorXd& a);

/// Unique minimizer/maximizer of the relative dispersion.  Requires the
/// centroids to differ (else CoincidentCentroidsError) and a dispersed
/// context (delta_f > 0, else DegenerateContextError).
FocalAnalysis focal_points(const FeatureMatrix& x, const WeightDistribution& f,
                           const WeightDistribution& g);

/// Point on the centroid line:  a(eps) = mean_f + eps (mean_f - mean_g).
Eigen::VectorXd line_point(const FeatureMatrix& x, const WeightDistribution& f,
                           const WeightDistribution& g, double eps);

/// Coefficients expressing line_point(eps) as a signed combination of the
/// individuals.
SignedDistribution signed_coefficients(const WeightDistribution& f,
                                       const WeightDistribution& g, double eps);

/// Relative dispersion along the centroid line in closed form:
///   (delta_g + d_fg (1+eps)^2) / (delta_f + d_fg eps^2).
double line_dispersion(double delta_f, double delta_g, double d_fg, double eps);

struct ProfileSample {
  double eps;
  double delta;
};

/// Evenly spaced samples of the dispersion along the centroid line,
/// endpoints included.  steps >= 2.
std::vector<ProfileSample> dispersion_profile(const FeatureMatrix& x,
                                              const WeightDistribution& f,
                                              const WeightDistribution& g,
                                              double eps_min, double eps_max,
                                              int steps);

/// First-order approximations of the focal coordinates for small delta_g:
///   eps_minus ~ -1 - delta_g / (delta_f + d_fg)
///   eps_plus  ~ delta_f/d_fg - delta_f delta_g / (d_fg (delta_f + d_fg)).
struct ExpansionEstimate {
  double eps_minus;
  double eps_plus;
};

ExpansionEstimate expansion_check(const FeatureMatrix& x, const WeightDistribution& f,
                                  const WeightDistribution& g);

}  // namespace focal
