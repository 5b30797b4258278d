#pragma once

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <Eigen/Dense>

#include "focal/types.hpp"

// Brute-force helpers used as oracles against the library.  Everything here
// works on plain nested vectors with naive loops, independent of the
// implementation under test.
namespace testsupport {

using Rows = std::vector<std::vector<double>>;

inline focal::FeatureMatrix make_features(const Rows& rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return focal::FeatureMatrix(m);
}

inline focal::FeatureMatrix make_features_1d(const std::vector<double>& points) {
  Rows rows;
  for (const double v : points) rows.push_back({v});
  return make_features(rows);
}

inline focal::WeightDistribution make_weights(const std::vector<double>& w) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) v(static_cast<Eigen::Index>(i)) = w[i];
  return focal::WeightDistribution(v);
}

inline std::vector<double> oracle_centroid(const Rows& x, const std::vector<double>& w) {
  std::vector<double> mean(x.front().size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += w[i] * x[i][k];
  }
  return mean;
}

inline double oracle_sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double dist = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) dist += (a[k] - b[k]) * (a[k] - b[k]);
  return dist;
}

inline double oracle_inertia(const Rows& x, const std::vector<double>& w,
                             const std::vector<double>& a) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += w[i] * oracle_sq_dist(x[i], a);
  return total;
}

inline double oracle_delta(const Rows& x, const std::vector<double>& f,
                           const std::vector<double>& g, const std::vector<double>& a) {
  return oracle_inertia(x, g, a) / oracle_inertia(x, f, a);
}

inline std::vector<double> oracle_line_point(const Rows& x, const std::vector<double>& f,
                                             const std::vector<double>& g, double eps) {
  const std::vector<double> mean_f = oracle_centroid(x, f);
  const std::vector<double> mean_g = oracle_centroid(x, g);
  std::vector<double> point(mean_f.size());
  for (std::size_t k = 0; k < point.size(); ++k) {
    point[k] = mean_f[k] + eps * (mean_f[k] - mean_g[k]);
  }
  return point;
}

inline double oracle_delta_at_eps(const Rows& x, const std::vector<double>& f,
                                  const std::vector<double>& g, double eps) {
  return oracle_delta(x, f, g, oracle_line_point(x, f, g, eps));
}

// Golden-section minimization; pass the negated function for maxima.
template <typename Fn>
double golden_min(Fn&& fn, double lo, double hi, double tol = 1e-10) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c), fd = fn(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

// Grid scan + golden refinement for the global minimum of fn over [lo, hi].
// Round-off noise limits golden section near flat minima, so the result is
// polished with a few finite-difference Newton steps on the derivative.
template <typename Fn>
double scan_min(Fn&& fn, double lo, double hi, int grid = 2001) {
  int best = 0;
  double best_value = fn(lo);
  for (int t = 1; t < grid; ++t) {
    const double pos = lo + (hi - lo) * t / (grid - 1);
    const double value = fn(pos);
    if (value < best_value) {
      best = t;
      best_value = value;
    }
  }
  const double step = (hi - lo) / (grid - 1);
  const double from = std::max(lo, lo + (best - 1) * step);
  const double to = std::min(hi, lo + (best + 1) * step);
  double at = golden_min(fn, from, to);
  for (int round = 0; round < 3; ++round) {
    const double h = 1e-5 * std::max(1.0, std::abs(at));
    const double up = fn(at + h), down = fn(at - h), mid = fn(at);
    const double second = (up - 2.0 * mid + down) / (h * h);
    if (!(second > 0.0)) break;
    const double shift = -(up - down) / (2.0 * h * second);
    if (!std::isfinite(shift) || std::abs(shift) > step) break;
    at += shift;
  }
  return at;
}

struct RandomInstance {
  Rows x;
  std::vector<double> f;
  std::vector<double> g;
};

// Random weighted configuration with strictly positive weights, distinct
// centroids and focal coordinates safely inside [-40, 40] so a [-50, 50]
// bracket always contains both extrema.
inline RandomInstance random_instance(std::mt19937& rng, int max_n = 12, int max_p = 3) {
  std::uniform_int_distribution<int> n_dist(2, max_n);
  std::uniform_int_distribution<int> p_dist(1, max_p);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> weight(0.05, 1.0);

  while (true) {
    const int n = n_dist(rng);
    const int p = p_dist(rng);
    RandomInstance instance;
    instance.x.resize(n, std::vector<double>(p));
    instance.f.resize(n);
    instance.g.resize(n);
    double f_total = 0.0, g_total = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < p; ++k) instance.x[i][k] = coord(rng);
      instance.f[i] = weight(rng);
      instance.g[i] = weight(rng);
      f_total += instance.f[i];
      g_total += instance.g[i];
    }
    for (int i = 0; i < n; ++i) {
      instance.f[i] /= f_total;
      instance.g[i] /= g_total;
    }

    const std::vector<double> mean_f = oracle_centroid(instance.x, instance.f);
    const std::vector<double> mean_g = oracle_centroid(instance.x, instance.g);
    const double d_fg = oracle_sq_dist(mean_f, mean_g);
    if (d_fg < 1e-4) continue;
    const double delta_f = oracle_inertia(instance.x, instance.f, mean_f);
    const double delta_g = oracle_inertia(instance.x, instance.g, mean_g);
    if (delta_f < 1e-6) continue;
    const double b = delta_f - delta_g - d_fg;
    const double root = std::sqrt(b * b + 4.0 * delta_f * d_fg);
    if (std::abs((b - root) / (2.0 * d_fg)) > 40.0) continue;
    if (std::abs((b + root) / (2.0 * d_fg)) > 40.0) continue;
    return instance;
  }
}

inline std::string data_path(const std::string& name) {
  return std::string(FOCAL_DATA_DIR) + "/" + name;
}

// Runs the packaged tool through the shell; stderr is discarded.
inline std::string run_tool(const std::string& args, int& exit_code) {
  const std::string command = std::string("'") + FOCAL_CLI_PATH + "' " + args +
                              " 2>/dev/null";
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  std::string out;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) out.append(buffer, got);
  const int status = ::pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

}  // namespace testsupport
