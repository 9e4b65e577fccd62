#pragma once

// Random points and tangents for property tests, FD checks and probes.

#include <random>

#include "paretosd/geometry.hpp"

namespace paretosd {

using Rng = std::mt19937_64;

inline Eigen::VectorXd standard_normal(Eigen::Index size, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(size);
  for (Eigen::Index i = 0; i < size; ++i) z(i) = normal(rng);
  return z;
}

inline Eigen::VectorXd uniform(Eigen::Index size, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd z(size);
  for (Eigen::Index i = 0; i < size; ++i) z(i) = u(rng);
  return z;
}

/// Random symmetric n x n matrix, flattened.
inline Eigen::VectorXd random_symmetric(Eigen::Index n, Rng& rng, double scale = 1.0) {
  const Eigen::MatrixXd a = standard_normal(n * n, rng).reshaped(n, n);
  return detail::as_flat(detail::symmetrized(Eigen::MatrixXd(scale * a)));
}

/// A point whose chart coordinates (identity, log, logit, matrix log) are
/// Gaussian with standard deviation `spread`.
inline Point random_point(const Manifold& m, Rng& rng, double spread = 1.0) {
  const Eigen::Index n = m.dim();
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return spread * standard_normal(n, rng);
    case ManifoldKind::PositiveOctant:
      return (spread * standard_normal(n, rng)).array().exp();
    case ManifoldKind::Hypercube: {
      Point p = spread * standard_normal(n, rng);
      for (Eigen::Index j = 0; j < n; ++j) p(j) = detail::logistic(p(j));
      return p;
    }
    case ManifoldKind::SPDCone: {
      const Eigen::MatrixXd s = random_symmetric(n, rng, spread / std::sqrt(2.0)).reshaped(n, n);
      return detail::as_flat(sym_matrix_function(s, MatrixFunction::Exp));
    }
  }
  return Point();
}

/// Random tangent at p, scaled so its metric norm is O(scale).
inline Tangent random_tangent(const Manifold& m, const Point& p, Rng& rng, double scale = 1.0) {
  const Eigen::Index n = m.dim();
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return scale * standard_normal(n, rng);
    case ManifoldKind::PositiveOctant:
      return (scale * p.array() * standard_normal(n, rng).array()).matrix();
    case ManifoldKind::Hypercube:
      return (scale * p.array() * (1.0 - p.array()) * standard_normal(n, rng).array()).matrix();
    case ManifoldKind::SPDCone: {
      const Eigen::MatrixXd root = sym_matrix_function(p.reshaped(n, n), MatrixFunction::Sqrt);
      const Eigen::MatrixXd s = random_symmetric(n, rng, scale).reshaped(n, n);
      return detail::as_flat(detail::symmetrized(Eigen::MatrixXd(root * s * root)));
    }
  }
  return Tangent();
}

inline Tangent random_unit_tangent(const Manifold& m, const Point& p, Rng& rng) {
  Tangent v = random_tangent(m, p, rng);
  double len = norm(m, p, v);
  while (!(len > 1e-8)) {
    v = random_tangent(m, p, rng);
    len = norm(m, p, v);
  }
  return v / len;
}

}  // namespace paretosd
