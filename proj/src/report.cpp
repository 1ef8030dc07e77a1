#include "lipbound/report.hpp"

namespace lipbound {

const std::array<BoundVariant, kVariantCount>& all_variants() {
  static const std::array<BoundVariant, kVariantCount> table = [] {
    std::array<BoundVariant, kVariantCount> t{};
    for (Order o : {Order::linear, Order::quadratic})
      for (Form f : {Form::general, Form::symmetric, Form::norm})
        for (Side s : {Side::lower, Side::upper})
          t[variant_index(o, f, s)] = BoundVariant{o, f, s};
    return t;
  }();
  return table;
}

std::string to_string(Order o) {
  return o == Order::linear ? "linear" : "quadratic";
}

std::string to_string(Form f) {
  switch (f) {
    case Form::general: return "general";
    case Form::symmetric: return "symmetric";
    default: return "norm";
  }
}

std::string to_string(Side s) { return s == Side::lower ? "lower" : "upper"; }

std::string to_string(Locality l) {
  return l == Locality::global ? "global" : "segment_local";
}

std::string variant_label(const BoundVariant& v) {
  return to_string(v.order) + "_" + to_string(v.form) + "_" + to_string(v.side);
}

BoundReport build_bound_report(const Segment<double>& seg, double delta_f,
                               const Vec<double>& grad_a,
                               const LipschitzBox<double>& k,
                               const CurvatureBox<double>& m,
                               Locality locality) {
  BoundReport r{seg, delta_f, locality, {}, {}, {}};

  const Vec<double> k_sym = symmetric_kappa(k);
  const Mat<double> m_sym = symmetric_curvature(m);
  const double kappa = kappa_norm(k_sym);
  const double big_m = m_norm(m_sym);

  auto set = [&](Order o, Form f, Side s, double v) {
    r.value[variant_index(o, f, s)] = v;
  };
  set(Order::linear, Form::general, Side::lower, linear_lower(seg, k));
  set(Order::linear, Form::general, Side::upper, linear_upper(seg, k));
  set(Order::linear, Form::symmetric, Side::lower, symmetric_linear_lower(seg, k_sym));
  set(Order::linear, Form::symmetric, Side::upper, symmetric_linear_upper(seg, k_sym));
  set(Order::linear, Form::norm, Side::lower, norm_linear_lower(seg, kappa));
  set(Order::linear, Form::norm, Side::upper, norm_linear_upper(seg, kappa));
  set(Order::quadratic, Form::general, Side::lower, quadratic_lower(seg, grad_a, m));
  set(Order::quadratic, Form::general, Side::upper, quadratic_upper(seg, grad_a, m));
  set(Order::quadratic, Form::symmetric, Side::lower,
      symmetric_quadratic_lower(seg, grad_a, m_sym));
  set(Order::quadratic, Form::symmetric, Side::upper,
      symmetric_quadratic_upper(seg, grad_a, m_sym));
  set(Order::quadratic, Form::norm, Side::lower,
      norm_quadratic_lower(seg, grad_a, big_m));
  set(Order::quadratic, Form::norm, Side::upper,
      norm_quadratic_upper(seg, grad_a, big_m));

  const double tol = validity_tolerance(delta_f);
  for (const BoundVariant& v : all_variants()) {
    const std::size_t i = variant_index(v);
    if (v.side == Side::lower) {
      r.valid[i] = r.value[i] <= delta_f + tol;
      r.strict_ok[i] = r.value[i] < delta_f;
    } else {
      r.valid[i] = delta_f <= r.value[i] + tol;
      r.strict_ok[i] = delta_f < r.value[i];
    }
  }
  return r;
}

}  // namespace lipbound
