#include "lipbound/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lipbound {
namespace {

/// Pulls the sampling region inward by the finite-difference stencil extent
/// so strict central differences at any sampled point stay in the domain.
BoxDomain<double> sampling_box(const FunctionModel& model,
                               const BoxDomain<double>& box, double fd_step) {
  if (model.has_grad()) return box;
  Vec<double> lo = box.lower();
  Vec<double> hi = box.upper();
  for (Eigen::Index i = 0; i < box.dim(); ++i) {
    const double margin =
        2.0 * fd_step * (1.0 + std::max(std::abs(lo(i)), std::abs(hi(i))));
    if (hi(i) - lo(i) <= 2.0 * margin) {
      const double mid = 0.5 * (lo(i) + hi(i));
      lo(i) = mid;
      hi(i) = mid;
    } else {
      lo(i) += margin;
      hi(i) -= margin;
    }
  }
  return BoxDomain<double>(std::move(lo), std::move(hi));
}

}  // namespace

VerifyStats verify_model(const FunctionModel& model,
                         const BoxDomain<double>& box,
                         const std::optional<LipschitzBox<double>>& k,
                         const std::optional<CurvatureBox<double>>& m,
                         const VerifyOptions& opts,
                         const std::function<void(const VerifyRow&)>& on_row) {
  detail::require(box.dim() == model.dim,
                  "verify: box dimension does not match the model");
  detail::require(opts.pairs >= 1, "verify: pairs must be at least 1");
  detail::require(std::isfinite(opts.min_step) && opts.min_step >= 0.0,
                  "verify: min_step must be >= 0");
  for (Eigen::Index i = 0; i < box.dim(); ++i) {
    if (box.lower()(i) < model.domain.lower()(i) ||
        box.upper()(i) > model.domain.upper()(i))
      throw std::domain_error(
          "verify: box is not contained in the model domain");
  }
  if (!opts.segment_local) {
    detail::require(k.has_value() && m.has_value(),
                    "verify: global mode needs both kappa and M constants");
    detail::require(k->dim() == box.dim() && m->dim() == box.dim(),
                    "verify: constants dimension does not match the box");
  }

  const BoxDomain<double> sample_box =
      sampling_box(model, box, opts.est.fd_step);
  const Vec<double>& lo = sample_box.lower();
  const Vec<double> width = sample_box.width();
  const Eigen::Index n = box.dim();

  std::mt19937_64 rng(opts.seed);
  auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  auto draw_point = [&](Vec<double>& x) {
    for (Eigen::Index i = 0; i < n; ++i) x(i) = lo(i) + unit() * width(i);
  };

  VerifyStats stats;
  Vec<double> xa(n);
  Vec<double> xb(n);
  for (std::uint64_t pair = 0; pair < opts.pairs; ++pair) {
    draw_point(xa);
    draw_point(xb);
    if (opts.min_step > 0.0) {
      int attempts = 0;
      while ((xb - xa).lpNorm<Eigen::Infinity>() < opts.min_step) {
        if (++attempts > 10000)
          throw std::invalid_argument(
              "verify: cannot reach min_step inside this box");
        draw_point(xb);
      }
    }

    const Segment<double> seg(xa, xb);
    const double delta_f = model(xb) - model(xa);
    const Vec<double> grad_a =
        model.has_grad() ? detail::sample_gradient(model, xa, opts.est.fd_step)
                         : fd_gradient(model, xa, opts.est.fd_step);

    BoundReport report =
        opts.segment_local
            ? build_bound_report(seg, delta_f, grad_a,
                                 estimate_segment_kappa(model, seg, opts.est),
                                 estimate_segment_M(model, seg, opts.est),
                                 Locality::segment_local)
            : build_bound_report(seg, delta_f, grad_a, *k, *m,
                                 Locality::global);

    for (const BoundVariant& v : all_variants()) {
      const std::size_t idx = variant_index(v);
      stats.rows += 1;
      if (!report.valid[idx]) stats.violations += 1;
      if (!report.strict_ok[idx]) stats.strict_failures += 1;
      if (on_row) {
        on_row(VerifyRow{opts.seed, opts.function_name, variant_label(v),
                         to_string(report.locality), delta_f,
                         report.value[idx], report.valid[idx],
                         report.strict_ok[idx],
                         bound_slack(v.side, report.value[idx], delta_f)});
      }
    }
  }
  return stats;
}

}  // namespace lipbound
