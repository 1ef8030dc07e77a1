#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lipbound/solver.hpp"

namespace lipbound {
namespace {

struct Node {
  BoxDomain<double> box;
  double lo;
  std::uint64_t id;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.lo != b.lo) return a.lo > b.lo;
    return a.id > b.id;
  }
};

using NodeQueue = std::priority_queue<Node, std::vector<Node>, NodeOrder>;

Eigen::Index longest_axis(const BoxDomain<double>& box) {
  Eigen::Index axis = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < box.dim(); ++i) {
    const double w = box.upper()(i) - box.lower()(i);
    if (w > best) {
      best = w;
      axis = i;
    }
  }
  return axis;
}

std::pair<BoxDomain<double>, BoxDomain<double>> split_box(
    const BoxDomain<double>& box) {
  const Eigen::Index axis = longest_axis(box);
  const double mid = 0.5 * (box.lower()(axis) + box.upper()(axis));
  Vec<double> left_hi = box.upper();
  left_hi(axis) = mid;
  Vec<double> right_lo = box.lower();
  right_lo(axis) = mid;
  return {BoxDomain<double>(box.lower(), left_hi),
          BoxDomain<double>(right_lo, box.upper())};
}

}  // namespace

BnBResult minimize(const FunctionModel& model, const BoxDomain<double>& box,
                   const MinimizeOptions& opts) {
  detail::require(box.dim() == model.dim,
                  "minimize: box dimension does not match the model");
  detail::require(std::isfinite(opts.tol) && opts.tol > 0.0,
                  "minimize: tol must be positive");
  detail::require(opts.budget >= 1, "minimize: budget must be at least 1");
  for (Eigen::Index i = 0; i < box.dim(); ++i) {
    if (box.lower()(i) < model.domain.lower()(i) ||
        box.upper()(i) > model.domain.upper()(i))
      throw std::domain_error(
          "minimize: box is not contained in the model domain");
  }
  if (opts.kappa)
    detail::require(opts.kappa->dim() == box.dim(),
                    "minimize: kappa dimension does not match the box");
  if (opts.curvature)
    detail::require(opts.curvature->dim() == box.dim(),
                    "minimize: curvature dimension does not match the box");
  detail::require(opts.kappa.has_value() || opts.curvature.has_value() ||
                      opts.local_constants,
                  "minimize: supply constants or enable local re-estimation");

  const bool quadratic =
      opts.curvature.has_value() ||
      (opts.local_constants && !opts.kappa.has_value());

  const double inf = std::numeric_limits<double>::infinity();
  double best_value = inf;
  Vec<double> best_point = box.center();

  auto anchor_gradient = [&](const Vec<double>& c) {
    return detail::sample_gradient(model, c, opts.fd_step);
  };

  std::uint64_t next_id = 0;
  auto make_node = [&](BoxDomain<double> b) {
    const Vec<double> c = b.center();
    const double fc = model(c);
    if (fc < best_value) {
      best_value = fc;
      best_point = c;
    }
    double lo;
    if (quadratic) {
      const CurvatureBox<double> m =
          opts.local_constants ? estimate_M(model, b, opts.local_cfg)
                               : *opts.curvature;
      lo = enclose_quadratic(fc, anchor_gradient(c), c, b, m).lo;
    } else {
      const LipschitzBox<double> k =
          opts.local_constants ? estimate_kappa(model, b, opts.local_cfg)
                               : *opts.kappa;
      lo = enclose_linear(fc, c, b, k).lo;
    }
    return Node{std::move(b), lo, next_id++};
  };

  NodeQueue queue;
  queue.push(make_node(box));

  std::uint64_t iterations = 0;
  std::uint64_t pruned_count = 0;
  double pruned_min = inf;
  double certified = -inf;
  bool converged = false;

  for (;;) {
    if (queue.empty()) {
      certified = pruned_min;
      converged = true;
      break;
    }
    certified = std::min(queue.top().lo, pruned_min);
    if (best_value - certified <= opts.tol) {
      converged = true;
      break;
    }
    if (iterations >= opts.budget) {
      converged = false;
      break;
    }

    Node head = queue.top();
    queue.pop();
    ++iterations;

    auto admit = [&](BoxDomain<double> child) {
      Node node = make_node(std::move(child));
      if (node.lo >= best_value - opts.tol) {
        ++pruned_count;
        pruned_min = std::min(pruned_min, node.lo);
      } else {
        queue.push(std::move(node));
      }
    };

    if (head.lo >= best_value - opts.tol) {
      ++pruned_count;
      pruned_min = std::min(pruned_min, head.lo);
    } else {
      auto [left, right] = split_box(head.box);
      admit(std::move(left));
      admit(std::move(right));
    }

    if (opts.on_progress) {
      const double now =
          std::min(queue.empty() ? inf : queue.top().lo, pruned_min);
      const double clamped = std::min(now, best_value);
      opts.on_progress(BnBTrace{iterations, queue.size(), best_value, clamped,
                                best_value - clamped});
    }
  }

  certified = std::min(certified, best_value);
  if (opts.on_progress)
    opts.on_progress(BnBTrace{iterations, queue.size(), best_value, certified,
                              best_value - certified});
  return BnBResult{best_value,
                   best_point,
                   certified,
                   best_value - certified,
                   iterations,
                   pruned_count,
                   converged,
                   opts.local_constants};
}

}  // namespace lipbound
