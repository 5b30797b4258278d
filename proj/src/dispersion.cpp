#include "focal/dispersion.hpp"

#include <cassert>
#include <cmath>
#include <utility>

#include "focal/errors.hpp"
#include "focal/geometry.hpp"
#include "focal/numeric.hpp"

namespace focal {

namespace {

struct LineGeometry {
  Eigen::VectorXd centroid_f;
  Eigen::VectorXd centroid_g;
  double delta_f;
  double delta_g;
  double d_fg;
};

LineGeometry line_geometry(const FeatureMatrix& x, const WeightDistribution& f,
                           const WeightDistribution& g) {
  LineGeometry geo;
  geo.centroid_f = centroid(x, f);
  geo.centroid_g = centroid(x, g);
  geo.delta_f = centroid_inertia(x, f);
  geo.delta_g = centroid_inertia(x, g);
  geo.d_fg = (geo.centroid_f - geo.centroid_g).squaredNorm();
  return geo;
}

// The closed-form solution assumes distinct centroids and a dispersed
// context; reject anything else before touching the quadratic.
void require_solvable(const LineGeometry& geo) {
  if (geo.d_fg <= 1e-12 * (geo.delta_f + 1.0)) {
    throw CoincidentCentroidsError("group centroid coincides with the context centroid");
  }
  if (geo.delta_f <= 0.0) {
    throw DegenerateContextError("context has zero dispersion");
  }
}

}  // namespace

SignedDistribution::SignedDistribution(Eigen::VectorXd coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.size() < 1) {
    throw ValidationError("signed distribution is empty");
  }
  if (!coefficients_.allFinite()) {
    throw ValidationError("signed distribution contains a non-finite entry");
  }
  KahanSum total;
  for (Eigen::Index i = 0; i < coefficients_.size(); ++i) total.add(coefficients_(i));
  const double scale = std::max(1.0, coefficients_.array().abs().sum());
  if (std::abs(total.value() - 1.0) > 1e-12 * scale) {
    throw ValidationError("signed distribution does not sum to 1");
  }
}

double relative_dispersion(const FeatureMatrix& x, const WeightDistribution& f,
                           const WeightDistribution& g, const Eigen::VectorXd& a) {
  const double denominator = inertia_about(x, f, a);
  if (denominator <= 0.0) {
    throw DegenerateContextError("context concentrated exactly at the viewpoint");
  }
  return inertia_about(x, g, a) / denominator;
}

double line_dispersion(double delta_f, double delta_g, double d_fg, double eps) {
  const double denominator = delta_f + d_fg * eps * eps;
  if (denominator <= 0.0) {
    throw DegenerateContextError("context concentrated exactly at the viewpoint");
  }
  return (delta_g + d_fg * (1.0 + eps) * (1.0 + eps)) / denominator;
}

FocalAnalysis focal_points(const FeatureMatrix& x, const WeightDistribution& f,
                           const WeightDistribution& g) {
  const LineGeometry geo = line_geometry(x, f, g);
  require_solvable(geo);

  const double b_fg = geo.delta_f - geo.delta_g - geo.d_fg;

  // Roots of d_fg e^2 - b_fg e - delta_f = 0.  The discriminant is strictly
  // positive here.  Evaluate the root on b_fg's side of zero directly and
  // recover the other from the product -delta_f/d_fg, avoiding the
  // cancellation-prone difference.
  const double discriminant = b_fg * b_fg + 4.0 * geo.delta_f * geo.d_fg;
  const double root = std::sqrt(discriminant);
  double eps_minus;
  double eps_plus;
  if (b_fg >= 0.0) {
    eps_plus = (b_fg + root) / (2.0 * geo.d_fg);
    eps_minus = -geo.delta_f / (geo.d_fg * eps_plus);
  } else {
    eps_minus = (b_fg - root) / (2.0 * geo.d_fg);
    eps_plus = -geo.delta_f / (geo.d_fg * eps_minus);
  }

  FocalAnalysis analysis;
  analysis.centroid_f = geo.centroid_f;
  analysis.centroid_g = geo.centroid_g;
  analysis.delta_f = geo.delta_f;
  analysis.delta_g = geo.delta_g;
  analysis.d_fg = geo.d_fg;
  analysis.b_fg = b_fg;
  analysis.eps_minus = eps_minus;
  analysis.eps_plus = eps_plus;
  analysis.a_minus = geo.centroid_f + eps_minus * (geo.centroid_f - geo.centroid_g);
  analysis.a_plus = geo.centroid_f + eps_plus * (geo.centroid_f - geo.centroid_g);
  analysis.delta_at_minus = relative_dispersion(x, f, g, analysis.a_minus);
  analysis.delta_at_plus = relative_dispersion(x, f, g, analysis.a_plus);
  analysis.polarization_ratio = eps_plus - eps_minus;

  assert(analysis.delta_at_minus <= analysis.delta_at_plus);
  assert(std::abs(analysis.delta_at_minus -
                  line_dispersion(geo.delta_f, geo.delta_g, geo.d_fg, eps_minus)) <=
         1e-8 * (1.0 + analysis.delta_at_minus));
  assert(std::abs(analysis.delta_at_plus -
                  line_dispersion(geo.delta_f, geo.delta_g, geo.d_fg, eps_plus)) <=
         1e-8 * (1.0 + analysis.delta_at_plus));
  return analysis;
}

Eigen::VectorXd line_point(const FeatureMatrix& x, const WeightDistribution& f,
                           const WeightDistribution& g, double eps) {
  const Eigen::VectorXd mean_f = centroid(x, f);
  const Eigen::VectorXd mean_g = centroid(x, g);
  return mean_f + eps * (mean_f - mean_g);
}

SignedDistribution signed_coefficients(const WeightDistribution& f,
                                       const WeightDistribution& g, double eps) {
  if (f.size() != g.size()) {
    throw DimensionMismatchError("context and group have different sizes");
  }
  return SignedDistribution((1.0 + eps) * f.weights() - eps * g.weights());
}

std::vector<ProfileSample> dispersion_profile(const FeatureMatrix& x,
                                              const WeightDistribution& f,
                                              const WeightDistribution& g,
                                              double eps_min, double eps_max,
                                              int steps) {
  if (steps < 2) throw ValidationError("profile needs at least 2 steps");
  if (!(eps_min < eps_max)) throw ValidationError("profile range is empty");
  const LineGeometry geo = line_geometry(x, f, g);
  require_solvable(geo);

  std::vector<ProfileSample> samples;
  samples.reserve(static_cast<std::size_t>(steps));
  const double span = static_cast<double>(steps - 1);
  for (int t = 0; t < steps; ++t) {
    const double eps =
        (static_cast<double>(steps - 1 - t) * eps_min + static_cast<double>(t) * eps_max) /
        span;
    samples.push_back({eps, line_dispersion(geo.delta_f, geo.delta_g, geo.d_fg, eps)});
  }
  return samples;
}

ExpansionEstimate expansion_check(const FeatureMatrix& x, const WeightDistribution& f,
                                  const WeightDistribution& g) {
  const LineGeometry geo = line_geometry(x, f, g);
  require_solvable(geo);
  const double shared = geo.delta_f + geo.d_fg;
  return ExpansionEstimate{
      -1.0 - geo.delta_g / shared,
      geo.delta_f / geo.d_fg - geo.delta_f * geo.delta_g / (geo.d_fg * shared)};
}

}  // namespace focal
