#pragma once

// Steepest-descent direction for a vector objective at p:
//
//   v(p) = argmin_v  max_i <grad f_i(p), v>_p + 1/2 |v|_p^2.
//
// Its dual is the minimum-norm point of conv{grad f_i(p)} under the metric at
// p, i.e. min over the unit simplex of 1/2 l^T Q l with Q the Gram matrix of
// the gradients. Then v = -sum_i l_i grad f_i(p) and the optimal value is
// -1/2 |v|^2. Everything below works on Q, so the metric enters only there.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "paretosd/geometry.hpp"

namespace paretosd {

template <typename Scalar>
struct BasicDirectionResult {
  VectorX<Scalar> v;      // minimizer of the direction subproblem
  VectorX<Scalar> alpha;  // simplex weights of the gradients
  Scalar theta = 0;       // optimal value, -1/2 |v|^2
  std::vector<Eigen::Index> active_set;
  Scalar criticality = 0;  // |v|_p
  int iterations = 0;
};

using DirectionResult = BasicDirectionResult<double>;

struct MinNormOptions {
  /// Initial vertex of the simplex; negative selects the shortest gradient.
  Eigen::Index start = -1;
  double gap_tol = 1e-12;
  /// Iteration cap is iteration_factor * m^2.
  int iteration_factor = 50;
};

/// Relative tie tolerance for membership of the active index set.
inline constexpr double kActiveTieTol = 1e-9;
/// Largest objective count accepted by the enumeration oracle.
inline constexpr Eigen::Index kOracleMaxObjectives = 12;

namespace detail {

template <typename DP, typename DG>
MatrixX<typename DP::Scalar> gram_matrix(const Manifold& m, const Eigen::MatrixBase<DP>& p,
                                         const Eigen::MatrixBase<DG>& grads) {
  using Scalar = typename DP::Scalar;
  const Eigen::Index count = grads.cols();
  MatrixX<Scalar> q(count, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index j = i; j < count; ++j) {
      q(i, j) = q(j, i) = inner(m, p, grads.col(i), grads.col(j));
    }
  }
  return q;
}

// Minimizer of l^T Q l over the affine hull {sum l = 1} restricted to
// `support`, from the bordered KKT system. The system is singular when the
// supported gradients are affinely dependent; the orthogonal decomposition
// then returns the minimum-norm solution. Returns false when the solve has a
// large residual.
template <typename Scalar>
bool affine_min_norm(const MatrixX<Scalar>& q, const std::vector<Eigen::Index>& support,
                     VectorX<Scalar>& mu) {
  const auto k = static_cast<Eigen::Index>(support.size());
  MatrixX<Scalar> kkt = MatrixX<Scalar>::Zero(k + 1, k + 1);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) kkt(a, b) = q(support[a], support[b]);
    kkt(a, k) = kkt(k, a) = Scalar(1);
  }
  VectorX<Scalar> rhs = VectorX<Scalar>::Zero(k + 1);
  rhs(k) = Scalar(1);
  const VectorX<Scalar> sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  const Scalar residual = (kkt * sol - rhs).template lpNorm<Eigen::Infinity>();
  const Scalar scale = Scalar(1) + kkt.template lpNorm<Eigen::Infinity>() *
                                       sol.template lpNorm<Eigen::Infinity>();
  mu = sol.head(k);
  if (!mu.allFinite() || residual > Scalar(1e-8) * scale) return false;
  const Scalar total = mu.sum();
  if (!(std::abs(total) > Scalar(0))) return false;
  mu /= total;
  return true;
}

template <typename DP, typename DG>
BasicDirectionResult<typename DP::Scalar> finalize_direction(
    const Manifold& m, const Eigen::MatrixBase<DP>& p, const Eigen::MatrixBase<DG>& grads,
    const MatrixX<typename DP::Scalar>& q, VectorX<typename DP::Scalar> lambda) {
  using Scalar = typename DP::Scalar;
  BasicDirectionResult<Scalar> out;
  out.alpha = std::move(lambda);
  out.v = -(grads * out.alpha);
  if (m.kind() == ManifoldKind::SPDCone) {
    out.v = detail::as_flat(detail::symmetrized(detail::as_square(out.v, m.dim())));
  }
  out.theta = Scalar(-0.5) * out.alpha.dot(q * out.alpha);
  out.criticality = norm(m, p, out.v);

  // <g_i, v> = -(Q alpha)_i
  const VectorX<Scalar> slopes = -(q * out.alpha);
  const Scalar top = slopes.maxCoeff();
  const Scalar cut = top - Scalar(kActiveTieTol) * (Scalar(1) + std::abs(top));
  for (Eigen::Index i = 0; i < slopes.size(); ++i) {
    if (slopes(i) >= cut) out.active_set.push_back(i);
  }
  return out;
}

template <typename DP, typename DG>
void check_gradients(const Manifold& m, const Eigen::MatrixBase<DP>& p,
                     const Eigen::MatrixBase<DG>& grads) {
  if (grads.cols() < 1) throw UsageError("direction: need at least one gradient");
  if (grads.rows() != m.ambient_size()) throw UsageError("direction: gradient size mismatch");
  if (!grads.allFinite()) throw NumericError("direction: gradients are not finite");
  require_point(m, p);
}

}  // namespace detail

/// Solves the direction subproblem with Wolfe's minimum-norm-point algorithm
/// on the Gram matrix. `grads` holds grad f_i(p) as columns.
template <typename DP, typename DG>
BasicDirectionResult<typename DP::Scalar> solve_direction(const Eigen::MatrixBase<DG>& grads,
                                                          const Eigen::MatrixBase<DP>& p,
                                                          const Manifold& m,
                                                          const MinNormOptions& opts = {}) {
  using Scalar = typename DP::Scalar;
  using Index = Eigen::Index;
  detail::check_gradients(m, p, grads);
  const Index count = grads.cols();
  const MatrixX<Scalar> q = detail::gram_matrix(m, p, grads);

  if (q.diagonal().maxCoeff() == Scalar(0)) {
    return detail::finalize_direction(m, p, grads, q,
                                      VectorX<Scalar>::Constant(count, Scalar(1) / count));
  }

  Index start = opts.start;
  if (start < 0 || start >= count) q.diagonal().minCoeff(&start);

  std::vector<Index> support{start};
  VectorX<Scalar> lambda = VectorX<Scalar>::Zero(count);
  lambda(start) = Scalar(1);

  const int cap = opts.iteration_factor * static_cast<int>(count * count);
  const Scalar gap_tol(opts.gap_tol);
  Scalar gap = std::numeric_limits<Scalar>::infinity();
  int iter = 0;
  for (; iter < cap; ++iter) {
    const VectorX<Scalar> w = q * lambda;  // <x, g_j>
    const Scalar xx = lambda.dot(w);
    Index entering = 0;
    const Scalar lowest = w.minCoeff(&entering);
    gap = xx - lowest;
    if (gap <= gap_tol * (Scalar(1) + xx)) break;
    if (std::find(support.begin(), support.end(), entering) != support.end()) {
      // Rounding stalled the major cycle; the point is optimal to working precision.
      if (gap <= Scalar(1e-9) * (Scalar(1) + xx)) break;
      throw NumericError("direction: minimum-norm iteration stalled, gap " + std::to_string(gap));
    }
    support.push_back(entering);

    // Minor cycle: move toward the affine minimizer, dropping vertices whose
    // weight reaches zero, until the affine minimizer is strictly interior.
    for (;;) {
      VectorX<Scalar> mu;
      if (!detail::affine_min_norm(q, support, mu)) {
        throw NumericError("direction: affine minimum-norm solve failed");
      }
      if ((mu.array() > Scalar(0)).all()) {
        for (std::size_t a = 0; a < support.size(); ++a) lambda(support[a]) = mu(a);
        break;
      }
      Scalar step = Scalar(1);
      std::size_t blocking = 0;
      for (std::size_t a = 0; a < support.size(); ++a) {
        if (mu(a) <= Scalar(0)) {
          const Scalar l = lambda(support[a]);
          const Scalar ratio = l / (l - mu(a));
          if (ratio < step) {
            step = ratio;
            blocking = a;
          }
        }
      }
      for (std::size_t a = 0; a < support.size(); ++a) {
        lambda(support[a]) += step * (mu(a) - lambda(support[a]));
      }
      lambda(support[blocking]) = Scalar(0);
      std::vector<Index> kept;
      for (Index idx : support) {
        if (lambda(idx) > Scalar(0)) {
          kept.push_back(idx);
        } else {
          lambda(idx) = Scalar(0);
        }
      }
      support = std::move(kept);
      lambda /= lambda.sum();
    }
  }
  if (iter == cap) {
    throw NumericError("direction: minimum-norm iteration cap " + std::to_string(cap) +
                       " reached, gap " + std::to_string(gap));
  }
  auto out = detail::finalize_direction(m, p, grads, q, std::move(lambda));
  out.iterations = iter;
  return out;
}

/// Exact reference for solve_direction: enumerates every nonempty support,
/// solves the affine problem on its face and keeps the best feasible weights.
/// Cost grows as 2^m; limited to m <= 12.
template <typename DP, typename DG>
BasicDirectionResult<typename DP::Scalar> oracle_direction(const Eigen::MatrixBase<DG>& grads,
                                                           const Eigen::MatrixBase<DP>& p,
                                                           const Manifold& m) {
  using Scalar = typename DP::Scalar;
  using Index = Eigen::Index;
  if (grads.cols() > kOracleMaxObjectives) {
    throw UsageError("oracle_direction: at most " + std::to_string(kOracleMaxObjectives) +
                     " objectives");
  }
  detail::check_gradients(m, p, grads);
  const Index count = grads.cols();
  const MatrixX<Scalar> q = detail::gram_matrix(m, p, grads);

  Scalar best = std::numeric_limits<Scalar>::infinity();
  VectorX<Scalar> best_lambda = VectorX<Scalar>::Constant(count, Scalar(1) / count);
  for (unsigned long mask = 1; mask < (1ul << count); ++mask) {
    std::vector<Index> support;
    for (Index i = 0; i < count; ++i) {
      if (mask & (1ul << i)) support.push_back(i);
    }
    VectorX<Scalar> mu;
    if (!detail::affine_min_norm(q, support, mu)) continue;
    if ((mu.array() < Scalar(-1e-12)).any()) continue;
    mu = mu.cwiseMax(Scalar(0));
    mu /= mu.sum();
    VectorX<Scalar> lambda = VectorX<Scalar>::Zero(count);
    for (std::size_t a = 0; a < support.size(); ++a) lambda(support[a]) = mu(a);
    const Scalar value = lambda.dot(q * lambda);
    if (value < best) {
      best = value;
      best_lambda = std::move(lambda);
    }
  }
  return detail::finalize_direction(m, p, grads, q, std::move(best_lambda));
}

/// Pareto criticality test |v(p)|_p <= eps.
template <typename Scalar>
bool is_pareto_critical(const BasicDirectionResult<Scalar>& result, Scalar eps) {
  return result.criticality <= eps;
}

}  // namespace paretosd
