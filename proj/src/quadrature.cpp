#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "polybasis/verifier.hpp"

namespace polybasis {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights) {
  if (count < 1) throw Error("Gauss-Legendre needs at least one node");
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(count, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(count, x).second;
    nodes[i] = -x;
    nodes[count - 1 - i] = x;
    weights[i] = weights[count - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureGrid quadrature_grid(int degree) {
  if (degree < 0) throw Error("quadrature degree must be non-negative");
  QuadratureGrid grid;
  grid.degree = degree;
  const int n_theta = (degree + 2) / 2;  // ceil((degree + 1) / 2)
  const int n_phi = degree + 1;
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(x[i]);
    const double s = std::sqrt(std::max(0.0, 1.0 - x[i] * x[i]));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_phi;
      grid.theta.push_back(theta);
      grid.phi.push_back(phi);
      grid.nodes.emplace_back(s * std::cos(phi), s * std::sin(phi), x[i]);
      grid.weights.push_back(w[i] * 2.0 * std::numbers::pi / n_phi);
    }
  }
  return grid;
}

std::vector<Vec3> sphere_sample(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> z_dist(-1.0, 1.0);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * std::numbers::pi);
  std::vector<Vec3> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = z_dist(engine);
    const double phi = phi_dist(engine);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

}  // namespace polybasis
