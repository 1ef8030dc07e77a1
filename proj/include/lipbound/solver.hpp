#ifndef LIPBOUND_SOLVER_HPP
#define LIPBOUND_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "lipbound/estimation.hpp"
#include "lipbound/types.hpp"

namespace lipbound {

/// Interval [lo, hi] guaranteed to contain f over a box when the supplied
/// constants are sound. `anchor` is the expansion point. `witness_lo` is the
/// box corner attaining the lo side: for the linear flavor the pairwise lower
/// bound from `anchor` to `witness_lo` reproduces `lo` exactly; for the
/// quadratic flavor it is the corner minimizing the first-order term (the
/// curvature terms are interval-bounded and need not be attained jointly).
struct Enclosure {
  double lo;
  double hi;
  Vec<double> witness_lo;
  Vec<double> anchor;
};

/// Range enclosure from the first-order bounds applied from `anchor` to
/// every box point; each per-coordinate term is extremized in closed form
/// at the interval endpoints.
Enclosure enclose_linear(double f_at_anchor, const Vec<double>& anchor,
                         const BoxDomain<double>& box,
                         const LipschitzBox<double>& k);

/// Range enclosure from the second-order bounds: the gradient term is
/// extremized per coordinate, each curvature term over the interval of
/// p = d_i d_j from four-product interval multiplication (diagonal
/// p = d_i^2 in [0, max(d_lo^2, d_hi^2)]).
Enclosure enclose_quadratic(double f_at_anchor, const Vec<double>& grad_at_anchor,
                            const Vec<double>& anchor,
                            const BoxDomain<double>& box,
                            const CurvatureBox<double>& m);

/// Outcome of the branch-and-bound minimizer. `certified_lower` is the
/// smallest enclosure lower bound over the live and pruned frontier; with
/// sound constants, min f over the box lies in
/// [certified_lower, best_value]. `empirical` marks runs whose constants
/// were re-estimated per sub-box and are therefore not certified.
struct BnBResult {
  double best_value;
  Vec<double> best_point;
  double certified_lower;
  double gap;
  std::uint64_t iterations;
  std::uint64_t boxes_pruned;
  bool converged;
  bool empirical;
};

/// Snapshot passed to MinimizeOptions::on_progress once per processed box.
struct BnBTrace {
  std::uint64_t iteration;
  std::uint64_t queue_size;
  double best_value;
  double certified_lower;
  double gap;
};

struct MinimizeOptions {
  double tol = 1e-6;
  std::uint64_t budget = 100000;
  /// First-order constants valid on the whole box; used when no curvature
  /// constants are given.
  std::optional<LipschitzBox<double>> kappa;
  /// Curvature constants valid on the whole box; when present the solver
  /// uses the tighter quadratic enclosure (needs a gradient per anchor).
  std::optional<CurvatureBox<double>> curvature;
  /// Re-estimate constants on every sub-box instead of reusing the global
  /// ones. Tighter but empirical: the result is no longer certified.
  bool local_constants = false;
  /// Sampling settings for local re-estimation; kept coarse on purpose.
  EstimationConfig local_cfg = {.grid_points_per_axis = 5};
  /// Step for finite-difference anchor gradients when the model has none.
  double fd_step = 1e-5;
  std::function<void(const BnBTrace&)> on_progress;
};

/// Best-first branch and bound: sub-boxes are popped by smallest enclosure
/// lower bound (ties by creation order), anchored at their centers, pruned
/// when their lower bound reaches incumbent - tol, and split at the midpoint
/// of their longest axis. Deterministic for fixed inputs.
BnBResult minimize(const FunctionModel& model, const BoxDomain<double>& box,
                   const MinimizeOptions& opts = {});

}  // namespace lipbound

#endif  // LIPBOUND_SOLVER_HPP
