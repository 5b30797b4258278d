#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "focal/errors.hpp"
#include "focal/geometry.hpp"
#include "focal/mds.hpp"
#include "focal/types.hpp"

#include "support.hpp"

using testsupport::make_features;
using testsupport::make_features_1d;
using testsupport::make_weights;

namespace {

const focal::FeatureMatrix kLine = make_features_1d({0.0, 1.0, 2.0, 3.0});

Eigen::VectorXd point1(double v) {
  Eigen::VectorXd a(1);
  a << v;
  return a;
}

}  // namespace

TEST_CASE("squared distances on the unit line") {
  const focal::DistanceMatrix d = focal::squared_distances(kLine);
  REQUIRE(d.size() == 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      CHECK(d(i, j) == static_cast<double>((i - j) * (i - j)));
    }
  }
}

TEST_CASE("squared distances: duplicated rows and a 3-4-5 pair") {
  const focal::FeatureMatrix x = make_features({{0.0, 0.0}, {3.0, 4.0}, {3.0, 4.0}});
  const focal::DistanceMatrix d = focal::squared_distances(x);
  CHECK(d(0, 1) == 25.0);
  CHECK(d(1, 0) == 25.0);
  CHECK(d(1, 2) == 0.0);
  CHECK(d(0, 0) == 0.0);
}

TEST_CASE("weighted centroids") {
  CHECK(focal::centroid(kLine, focal::WeightDistribution::uniform(4))(0) == 1.5);
  CHECK(focal::centroid(kLine, make_weights({0.5, 0.5, 0.0, 0.0}))(0) == 0.5);
  CHECK(focal::centroid(kLine, focal::WeightDistribution::point_mass(4, 2))(0) == 2.0);
}

TEST_CASE("inertia about a point") {
  const focal::WeightDistribution uniform = focal::WeightDistribution::uniform(4);
  CHECK(focal::inertia_about(kLine, uniform, point1(1.5)) == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(focal::inertia_about(kLine, make_weights({0.5, 0.5, 0.0, 0.0}), point1(0.5)) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(focal::inertia_about(kLine, focal::WeightDistribution::point_mass(4, 2), point1(2.0)) ==
        0.0);
}

TEST_CASE("centroid inertia agrees between the feature and distance routes") {
  const focal::WeightDistribution uniform = focal::WeightDistribution::uniform(4);
  const focal::DistanceMatrix d = focal::squared_distances(kLine);
  CHECK(focal::centroid_inertia(kLine, uniform) == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(focal::centroid_inertia(d, uniform) == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(focal::centroid_inertia(d, make_weights({0.5, 0.5, 0.0, 0.0})) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(focal::centroid_inertia(d, focal::WeightDistribution::point_mass(4, 0)) == 0.0);
}

TEST_CASE("cross terms from distances alone") {
  const focal::DistanceMatrix d = focal::squared_distances(kLine);
  const focal::WeightDistribution uniform = focal::WeightDistribution::uniform(4);

  SUBCASE("pair subgroup") {
    const auto [d_fg, b_fg] = focal::cross_terms(d, uniform, make_weights({0.5, 0.5, 0.0, 0.0}));
    CHECK(d_fg == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b_fg == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("singleton subgroup") {
    const auto [d_fg, b_fg] =
        focal::cross_terms(d, uniform, focal::WeightDistribution::point_mass(4, 0));
    CHECK(d_fg == doctest::Approx(2.25).epsilon(1e-14));
    CHECK(b_fg == doctest::Approx(-1.0).epsilon(1e-14));
  }
  SUBCASE("identical distributions collapse both terms") {
    const auto [d_fg, b_fg] = focal::cross_terms(d, uniform, uniform);
    CHECK(d_fg == 0.0);  // clamped, never a negative round-off residue
    CHECK(b_fg == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("decomposition of inertia about an arbitrary point") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (int round = 0; round < 50; ++round) {
    const auto instance = testsupport::random_instance(rng);
    const focal::FeatureMatrix x = make_features(instance.x);
    const focal::WeightDistribution w = make_weights(instance.f);
    Eigen::VectorXd a(x.cols());
    for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = coord(rng);

    const Eigen::VectorXd mean = focal::centroid(x, w);
    const double about_mean = focal::centroid_inertia(x, w);
    const double about_a = focal::inertia_about(x, w, a);
    const double shift = (mean - a).squaredNorm();
    CHECK(about_a == doctest::Approx(about_mean + shift).epsilon(1e-10));
  }
}

TEST_CASE("the centroid minimizes the inertia") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  const auto instance = testsupport::random_instance(rng, 10, 3);
  const focal::FeatureMatrix x = make_features(instance.x);
  const focal::WeightDistribution w = make_weights(instance.f);
  const double at_centroid = focal::centroid_inertia(x, w);
  for (int probe = 0; probe < 100; ++probe) {
    Eigen::VectorXd a(x.cols());
    for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = coord(rng);
    CHECK(focal::inertia_about(x, w, a) >= at_centroid - 1e-12);
  }
}

TEST_CASE("distance-route quantities match naive feature-space loops") {
  std::mt19937 rng(99);
  for (int round = 0; round < 50; ++round) {
    const auto instance = testsupport::random_instance(rng);
    const focal::FeatureMatrix x = make_features(instance.x);
    const focal::WeightDistribution f = make_weights(instance.f);
    const focal::WeightDistribution g = make_weights(instance.g);
    const focal::DistanceMatrix d = focal::squared_distances(x);

    const double expected_inertia = testsupport::oracle_inertia(
        instance.x, instance.f, testsupport::oracle_centroid(instance.x, instance.f));
    CHECK(focal::centroid_inertia(d, f) == doctest::Approx(expected_inertia).epsilon(1e-10));

    const auto [d_fg, b_fg] = focal::cross_terms(d, f, g);
    const double expected_gap =
        testsupport::oracle_sq_dist(testsupport::oracle_centroid(instance.x, instance.f),
                                    testsupport::oracle_centroid(instance.x, instance.g));
    CHECK(d_fg == doctest::Approx(expected_gap).epsilon(1e-10));
    const double delta_f = focal::centroid_inertia(d, f);
    const double delta_g = focal::centroid_inertia(d, g);
    CHECK(b_fg == doctest::Approx(delta_f - delta_g - expected_gap).epsilon(1e-9));
  }
}

TEST_CASE("double-centered squared distances are positive semidefinite") {
  std::mt19937 rng(1234);
  for (int round = 0; round < 20; ++round) {
    const auto instance = testsupport::random_instance(rng);
    const Eigen::MatrixXd b =
        focal::double_center(focal::squared_distances(make_features(instance.x)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
    CHECK(solver.eigenvalues().minCoeff() >= -1e-8 * scale);
  }
}

TEST_CASE("validation of the core types") {
  SUBCASE("features must be finite") {
    Eigen::MatrixXd bad(2, 1);
    bad << 0.0, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(focal::FeatureMatrix{bad}, focal::ValidationError);
  }
  SUBCASE("weights must be nonnegative") {
    Eigen::VectorXd w(2);
    w << 1.5, -0.5;
    CHECK_THROWS_AS(focal::WeightDistribution{w}, focal::ValidationError);
  }
  SUBCASE("weights must sum to one within the documented slack") {
    Eigen::VectorXd w(2);
    w << 0.6, 0.6;
    CHECK_THROWS_AS(focal::WeightDistribution{w}, focal::ValidationError);
    Eigen::VectorXd near(2);
    near << 0.5 + 4e-10, 0.5;  // inside the 1e-9 slack: accepted and renormalized
    const focal::WeightDistribution ok(near);
    CHECK(ok.weights().sum() == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("normalized builds from raw positive vectors") {
    Eigen::VectorXd raw(3);
    raw << 2.0, 2.0, 4.0;
    const focal::WeightDistribution w = focal::WeightDistribution::normalized(raw);
    CHECK(w[0] == 0.25);
    CHECK(w[2] == 0.5);
    CHECK(w.support_size() == 3);
  }
  SUBCASE("distance matrices must be symmetric with a zero diagonal") {
    Eigen::MatrixXd asym(2, 2);
    asym << 0.0, 1.0, 2.0, 0.0;
    CHECK_THROWS_AS(focal::DistanceMatrix{asym}, focal::ValidationError);
    Eigen::MatrixXd diag(2, 2);
    diag << 0.5, 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(focal::DistanceMatrix{diag}, focal::ValidationError);
    Eigen::MatrixXd neg(2, 2);
    neg << 0.0, -1.0, -1.0, 0.0;
    CHECK_THROWS_AS(focal::DistanceMatrix{neg}, focal::ValidationError);
  }
  SUBCASE("weight/feature length mismatch is rejected by the operations") {
    CHECK_THROWS_AS(focal::centroid(kLine, focal::WeightDistribution::uniform(3)),
                    focal::DimensionMismatchError);
  }
}
