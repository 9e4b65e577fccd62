#pragma once

// Manifolds with closed-form geodesics: Euclidean space, the positive octant
// and the open unit hypercube with their barrier Hessian metrics, and the cone
// of symmetric positive definite matrices with the log-det Hessian metric.
//
// Points and tangents are flat column vectors. SPD matrices are stored as the
// full n x n array in column-major order, so an ambient vector of size n*n.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "paretosd/errors.hpp"

namespace paretosd {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Point = Eigen::VectorXd;
using Tangent = Eigen::VectorXd;

enum class ManifoldKind { Euclidean, PositiveOctant, Hypercube, SPDCone };

inline std::string_view to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::Euclidean: return "Euclidean";
    case ManifoldKind::PositiveOctant: return "PositiveOctant";
    case ManifoldKind::Hypercube: return "Hypercube";
    case ManifoldKind::SPDCone: return "SPDCone";
  }
  return "?";
}

inline std::optional<ManifoldKind> parse_manifold_kind(std::string_view name) {
  for (auto kind : {ManifoldKind::Euclidean, ManifoldKind::PositiveOctant,
                    ManifoldKind::Hypercube, ManifoldKind::SPDCone}) {
    if (name == to_string(kind)) return kind;
  }
  if (name == "euclidean") return ManifoldKind::Euclidean;
  if (name == "octant") return ManifoldKind::PositiveOctant;
  if (name == "hypercube" || name == "cube") return ManifoldKind::Hypercube;
  if (name == "spd") return ManifoldKind::SPDCone;
  return std::nullopt;
}

/// Which manifold, and its size parameter: vector length for the three vector
/// manifolds, matrix side for the SPD cone.
class Manifold {
 public:
  Manifold(ManifoldKind kind, Eigen::Index dim) : kind_(kind), dim_(dim) {
    if (dim < 1) throw UsageError("manifold dimension parameter must be >= 1");
  }

  static Manifold euclidean(Eigen::Index n) { return {ManifoldKind::Euclidean, n}; }
  static Manifold positive_octant(Eigen::Index n) { return {ManifoldKind::PositiveOctant, n}; }
  static Manifold hypercube(Eigen::Index n) { return {ManifoldKind::Hypercube, n}; }
  static Manifold spd_cone(Eigen::Index n) { return {ManifoldKind::SPDCone, n}; }

  ManifoldKind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  Eigen::Index ambient_size() const {
    return kind_ == ManifoldKind::SPDCone ? dim_ * dim_ : dim_;
  }
  /// Zero sectional curvature everywhere.
  bool is_flat() const { return kind_ != ManifoldKind::SPDCone; }

  friend bool operator==(const Manifold&, const Manifold&) = default;

 private:
  ManifoldKind kind_;
  Eigen::Index dim_;
};

struct PointViolation {
  std::optional<Eigen::Index> index;  // flat ambient index, when one applies
  std::string message;
};

enum class MatrixFunction { Sqrt, InvSqrt, Exp, Log };

namespace detail {

template <typename Scalar>
constexpr Scalar kSymmetryTol = Scalar(1e-12);

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Scalar scale = a.template lpNorm<Eigen::Infinity>();
  const Scalar skew = (a - a.transpose()).template lpNorm<Eigen::Infinity>();
  return skew <= kSymmetryTol<Scalar> * scale;
}

template <typename Derived>
MatrixX<typename Derived::Scalar> as_square(const Eigen::MatrixBase<Derived>& v,
                                            Eigen::Index n) {
  return v.reshaped(n, n);
}

template <typename Derived>
VectorX<typename Derived::Scalar> as_flat(const Eigen::MatrixBase<Derived>& a) {
  return a.reshaped();
}

template <typename Derived>
MatrixX<typename Derived::Scalar> symmetrized(const Eigen::MatrixBase<Derived>& a) {
  return (a + a.transpose()) / typename Derived::Scalar(2);
}

template <typename Scalar>
Scalar logit(Scalar p) {
  return std::log(p) - std::log1p(-p);
}

// Logistic function evaluated without overflow in exp().
template <typename Scalar>
Scalar logistic(Scalar u) {
  if (u >= Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-u));
  const Scalar e = std::exp(u);
  return e / (Scalar(1) + e);
}

template <typename Scalar>
Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> sym_eigen(const MatrixX<Scalar>& a) {
  if (!a.allFinite()) throw NumericError("symmetric eigendecomposition: non-finite input");
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(symmetrized(a));
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigendecomposition failed");
  return es;
}

template <typename Scalar>
MatrixX<Scalar> spectral_map(const Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>>& es,
                             const VectorX<Scalar>& mapped) {
  const MatrixX<Scalar>& q = es.eigenvectors();
  return symmetrized(MatrixX<Scalar>(q * mapped.asDiagonal() * q.transpose()));
}

}  // namespace detail

/// Applies a scalar function to the spectrum of a symmetric matrix. The input
/// is symmetrized before decomposition. Sqrt, InvSqrt and Log require a
/// positive definite argument.
template <typename Derived>
MatrixX<typename Derived::Scalar> sym_matrix_function(const Eigen::MatrixBase<Derived>& a,
                                                      MatrixFunction f) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw UsageError("sym_matrix_function: matrix must be square");
  const auto es = detail::sym_eigen<Scalar>(a);
  const VectorX<Scalar>& lambda = es.eigenvalues();
  if (f != MatrixFunction::Exp && !(lambda.minCoeff() > Scalar(0))) {
    throw DomainError("sym_matrix_function: matrix is not positive definite");
  }
  VectorX<Scalar> mapped(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    switch (f) {
      case MatrixFunction::Sqrt: mapped(i) = std::sqrt(lambda(i)); break;
      case MatrixFunction::InvSqrt: mapped(i) = Scalar(1) / std::sqrt(lambda(i)); break;
      case MatrixFunction::Exp: mapped(i) = std::exp(lambda(i)); break;
      case MatrixFunction::Log: mapped(i) = std::log(lambda(i)); break;
    }
  }
  return detail::spectral_map<Scalar>(es, mapped);
}

/// Reports the first violated domain constraint, or nullopt when p lies on m.
template <typename Derived>
std::optional<PointViolation> validate_point(const Manifold& m,
                                             const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  if (p.cols() != 1 || p.rows() != m.ambient_size()) {
    return PointViolation{std::nullopt, "expected " + std::to_string(m.ambient_size()) +
                                            " coordinates, got " +
                                            std::to_string(p.size())};
  }
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i))) return PointViolation{i, "coordinate is not finite"};
  }
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      break;
    case ManifoldKind::PositiveOctant:
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!(p(i) > Scalar(0))) return PointViolation{i, "coordinate must be > 0"};
      }
      break;
    case ManifoldKind::Hypercube:
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!(p(i) > Scalar(0) && p(i) < Scalar(1))) {
          return PointViolation{i, "coordinate must lie in (0, 1)"};
        }
      }
      break;
    case ManifoldKind::SPDCone: {
      const auto x = detail::as_square(p, m.dim());
      if (!detail::is_symmetric(x)) {
        Eigen::Index r = 0, c = 0;
        (x - x.transpose()).cwiseAbs().maxCoeff(&r, &c);
        return PointViolation{c * m.dim() + r, "matrix is not symmetric"};
      }
      Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(x, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > Scalar(0))) {
        return PointViolation{std::nullopt, "matrix is not positive definite"};
      }
      break;
    }
  }
  return std::nullopt;
}

template <typename Derived>
std::optional<PointViolation> validate_tangent(const Manifold& m,
                                               const Eigen::MatrixBase<Derived>& v) {
  if (v.cols() != 1 || v.rows() != m.ambient_size()) {
    return PointViolation{std::nullopt, "expected " + std::to_string(m.ambient_size()) +
                                            " tangent coordinates, got " +
                                            std::to_string(v.size())};
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i))) return PointViolation{i, "tangent coordinate is not finite"};
  }
  if (m.kind() == ManifoldKind::SPDCone && !detail::is_symmetric(detail::as_square(v, m.dim()))) {
    return PointViolation{std::nullopt, "tangent matrix is not symmetric"};
  }
  return std::nullopt;
}

template <typename Derived>
void require_point(const Manifold& m, const Eigen::MatrixBase<Derived>& p) {
  if (auto bad = validate_point(m, p)) {
    throw DomainError("invalid " + std::string(to_string(m.kind())) + " point" +
                      (bad->index ? " at index " + std::to_string(*bad->index) : "") + ": " +
                      bad->message);
  }
}

template <typename Derived>
void require_tangent(const Manifold& m, const Eigen::MatrixBase<Derived>& v) {
  if (auto bad = validate_tangent(m, v)) {
    throw DomainError("invalid " + std::string(to_string(m.kind())) + " tangent" +
                      (bad->index ? " at index " + std::to_string(*bad->index) : "") + ": " +
                      bad->message);
  }
}

/// Metric inner product <u, v>_p.
template <typename DP, typename DU, typename DV>
typename DP::Scalar inner(const Manifold& m, const Eigen::MatrixBase<DP>& p,
                          const Eigen::MatrixBase<DU>& u, const Eigen::MatrixBase<DV>& v) {
  using Scalar = typename DP::Scalar;
  require_point(m, p);
  require_tangent(m, u);
  require_tangent(m, v);
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return u.dot(v);
    case ManifoldKind::PositiveOctant:
      return (u.array() * v.array() / p.array().square()).sum();
    case ManifoldKind::Hypercube: {
      const auto w = p.array() * (Scalar(1) - p.array());
      return (u.array() * v.array() / w.square()).sum();
    }
    case ManifoldKind::SPDCone: {
      const Eigen::Index n = m.dim();
      Eigen::LLT<MatrixX<Scalar>> llt(detail::as_square(p, n));
      if (llt.info() != Eigen::Success) throw DomainError("SPD point: Cholesky failed");
      const MatrixX<Scalar> a = llt.solve(detail::as_square(u, n));
      const MatrixX<Scalar> b = llt.solve(detail::as_square(v, n));
      // trace(A B)
      return a.cwiseProduct(b.transpose()).sum();
    }
  }
  return Scalar(0);
}

template <typename DP, typename DV>
typename DP::Scalar norm(const Manifold& m, const Eigen::MatrixBase<DP>& p,
                         const Eigen::MatrixBase<DV>& v) {
  using std::sqrt;
  using Scalar = typename DP::Scalar;
  return sqrt(std::max(Scalar(0), inner(m, p, v, v)));
}

/// Point gamma(t) on the geodesic leaving p with velocity v.
template <typename DP, typename DV>
VectorX<typename DP::Scalar> exp_map(const Manifold& m, const Eigen::MatrixBase<DP>& p,
                                     const Eigen::MatrixBase<DV>& v,
                                     typename DP::Scalar t = typename DP::Scalar(1)) {
  using Scalar = typename DP::Scalar;
  require_point(m, p);
  require_tangent(m, v);
  if (!std::isfinite(t)) throw DomainError("exp_map: step is not finite");
  if (t == Scalar(0) || v.isZero(Scalar(0))) return p;

  VectorX<Scalar> q(p.size());
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      q = p + t * v;
      break;
    case ManifoldKind::PositiveOctant:
      q = p.array() * (t * v.array() / p.array()).exp();
      break;
    case ManifoldKind::Hypercube: {
      constexpr Scalar kBelowOne = Scalar(1) - std::numeric_limits<Scalar>::epsilon() / 2;
      for (Eigen::Index j = 0; j < p.size(); ++j) {
        const Scalar u = detail::logit(p(j)) + t * v(j) / (p(j) * (Scalar(1) - p(j)));
        // Beyond |u| ~ 36.7 the logistic value rounds onto the boundary.
        q(j) = std::clamp(detail::logistic(u), std::numeric_limits<Scalar>::min(), kBelowOne);
      }
      break;
    }
    case ManifoldKind::SPDCone: {
      const Eigen::Index n = m.dim();
      const auto es = detail::sym_eigen<Scalar>(detail::as_square(p, n));
      const VectorX<Scalar> root = es.eigenvalues().array().sqrt();
      const MatrixX<Scalar> sqrt_x = detail::spectral_map<Scalar>(es, root);
      const MatrixX<Scalar> inv_sqrt_x = detail::spectral_map<Scalar>(es, root.cwiseInverse());
      const MatrixX<Scalar> w = inv_sqrt_x * detail::as_square(v, n) * inv_sqrt_x;
      const MatrixX<Scalar> e = sym_matrix_function(t * w, MatrixFunction::Exp);
      q = detail::as_flat(detail::symmetrized(MatrixX<Scalar>(sqrt_x * e * sqrt_x)));
      break;
    }
  }
  if (auto bad = validate_point(m, q)) {
    throw NumericError("exp_map: geodesic left the representable domain (" + bad->message + ")");
  }
  return q;
}

/// Riemannian gradient G(p)^{-1} g from the ambient partial derivatives g.
template <typename DP, typename DG>
VectorX<typename DP::Scalar> egrad_to_rgrad(const Manifold& m, const Eigen::MatrixBase<DP>& p,
                                            const Eigen::MatrixBase<DG>& g) {
  using Scalar = typename DP::Scalar;
  require_point(m, p);
  if (g.size() != m.ambient_size()) throw DomainError("egrad_to_rgrad: gradient has wrong size");
  if (!g.allFinite()) throw NumericError("egrad_to_rgrad: gradient is not finite");
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return g;
    case ManifoldKind::PositiveOctant:
      return (p.array().square() * g.array()).matrix();
    case ManifoldKind::Hypercube:
      return ((p.array() * (Scalar(1) - p.array())).square() * g.array()).matrix();
    case ManifoldKind::SPDCone: {
      const Eigen::Index n = m.dim();
      const MatrixX<Scalar> x = detail::as_square(p, n);
      const MatrixX<Scalar> s = detail::symmetrized(detail::as_square(g, n));
      return detail::as_flat(detail::symmetrized(MatrixX<Scalar>(x * s * x)));
    }
  }
  return g;
}

/// Riemannian distance. All four manifolds are uniquely geodesic, so this is
/// the length of the connecting geodesic.
template <typename DP, typename DQ>
typename DP::Scalar distance(const Manifold& m, const Eigen::MatrixBase<DP>& p,
                             const Eigen::MatrixBase<DQ>& q) {
  using Scalar = typename DP::Scalar;
  require_point(m, p);
  require_point(m, q);
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return (p - q).norm();
    case ManifoldKind::PositiveOctant:
      return (p.array().log() - q.array().log()).matrix().norm();
    case ManifoldKind::Hypercube: {
      Scalar sum = 0;
      for (Eigen::Index j = 0; j < p.size(); ++j) {
        const Scalar d = detail::logit(p(j)) - detail::logit(q(j));
        sum += d * d;
      }
      return std::sqrt(sum);
    }
    case ManifoldKind::SPDCone: {
      // Eigenvalues of X^{-1/2} Y X^{-1/2} are those of the pencil (Y, X).
      const Eigen::Index n = m.dim();
      const MatrixX<Scalar> x = detail::symmetrized(detail::as_square(p, n));
      const MatrixX<Scalar> y = detail::symmetrized(detail::as_square(q, n));
      Eigen::GeneralizedSelfAdjointEigenSolver<MatrixX<Scalar>> es(y, x, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw NumericError("distance: generalized eigensolver failed");
      return es.eigenvalues().array().log().matrix().norm();
    }
  }
  return Scalar(0);
}

}  // namespace paretosd
