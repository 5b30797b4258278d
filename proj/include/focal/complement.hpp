#pragma once

#include <optional>

#include <Eigen/Dense>

#include "focal/types.hpp"

namespace focal {

/// A distribution gbar that mixes with g at weight rho to reconstitute the
/// context:  rho g + (1 - rho) gbar = f.
struct ComplementResult {
  double rho;
  double rho_max;
  WeightDistribution gbar;
};

/// Largest admissible mixing weight:  min over {i : g_i > 0} of f_i / g_i.
/// Throws ValidationError when g puts mass where f has none.
double rho_max(const WeightDistribution& f, const WeightDistribution& g);

/// Complement of g inside f at mixing weight rho (defaults to rho_max):
///   gbar_i = (f_i - rho g_i) / (1 - rho).
ComplementResult complement_of(const WeightDistribution& f, const WeightDistribution& g,
                               std::optional<double> rho = std::nullopt);

/// Group-to-complement dispersion ratio seen from a:
///   delta'(a) = (delta_g + |mean_g - a|^2) / (delta_gbar + |mean_gbar - a|^2).
/// Shares its extremizers with the relative dispersion of g in f.
double dual_dispersion(const FeatureMatrix& x, const WeightDistribution& g,
                       const WeightDistribution& gbar, const Eigen::VectorXd& a);

}  // namespace focal
