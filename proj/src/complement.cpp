#include "focal/complement.hpp"

#include <cmath>
#include <string>

#include "focal/errors.hpp"
#include "focal/geometry.hpp"

namespace focal {

double rho_max(const WeightDistribution& f, const WeightDistribution& g) {
  if (f.size() != g.size()) {
    throw DimensionMismatchError("context and group have different sizes");
  }
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (g[i] <= 0.0) continue;
    if (f[i] <= 0.0) {
      throw ValidationError("group puts mass on individual " + std::to_string(i) +
                            " outside the context support");
    }
    best = std::min(best, f[i] / g[i]);
  }
  return best;
}

ComplementResult complement_of(const WeightDistribution& f, const WeightDistribution& g,
                               std::optional<double> rho) {
  const double bound = rho_max(f, g);
  const double mix = rho.value_or(bound);
  if (!(mix > 0.0) || mix > bound + 1e-12) {
    throw ValidationError("mixing weight must lie in (0, rho_max]");
  }
  if (mix >= 1.0) {
    throw ValidationError("complement undefined at mixing weight 1 (group already fills the context)");
  }

  Eigen::VectorXd gbar(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    double numerator = f[i] - mix * g[i];
    if (numerator < 0.0) {
      if (numerator < -1e-12) {
        throw ValidationError("mixing weight exceeds the admissible maximum");
      }
      numerator = 0.0;  // round-off at rho = rho_max
    }
    gbar(i) = numerator / (1.0 - mix);
  }
  return ComplementResult{mix, bound, WeightDistribution(std::move(gbar))};
}

double dual_dispersion(const FeatureMatrix& x, const WeightDistribution& g,
                       const WeightDistribution& gbar, const Eigen::VectorXd& a) {
  const double denominator = inertia_about(x, gbar, a);
  if (denominator <= 0.0) {
    throw DegenerateContextError("complement concentrated exactly at the viewpoint");
  }
  return inertia_about(x, g, a) / denominator;
}

}  // namespace focal
