#ifndef LIPBOUND_REPORT_HPP
#define LIPBOUND_REPORT_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "lipbound/bounds.hpp"
#include "lipbound/types.hpp"

namespace lipbound {

enum class Order { linear, quadratic };
enum class Form { general, symmetric, norm };
enum class Side { lower, upper };
enum class Locality { global, segment_local };

/// Names one of the bound formulas. The twelve (order, form, side) combos
/// exist in a global and a segment-local flavor; the formulas are identical,
/// locality only records where the supplied constants are valid.
struct BoundVariant {
  Order order;
  Form form;
  Side side;
  Locality locality = Locality::global;
};

inline constexpr std::size_t kVariantCount = 12;

/// Dense index over the twelve (order, form, side) combinations.
constexpr std::size_t variant_index(Order o, Form f, Side s) {
  return static_cast<std::size_t>(o) * 6 + static_cast<std::size_t>(f) * 2 +
         static_cast<std::size_t>(s);
}

constexpr std::size_t variant_index(const BoundVariant& v) {
  return variant_index(v.order, v.form, v.side);
}

const std::array<BoundVariant, kVariantCount>& all_variants();

std::string to_string(Order o);
std::string to_string(Form f);
std::string to_string(Side s);
std::string to_string(Locality l);

/// "linear_general_lower" etc.; locality is reported separately.
std::string variant_label(const BoundVariant& v);

/// Comparison tolerance for validity checks: 1e-9 * (1 + |delta_f|).
inline double validity_tolerance(double delta_f) {
  return 1e-9 * (1.0 + std::abs(delta_f));
}

/// delta_f - bound for lower bounds, bound - delta_f for upper bounds;
/// nonnegative when the bound holds.
inline double bound_slack(Side side, double bound_value, double delta_f) {
  return side == Side::lower ? delta_f - bound_value : bound_value - delta_f;
}

/// All twelve bound values for one segment, with validity and strictness
/// flags against the true delta_f.
struct BoundReport {
  Segment<double> segment;
  double delta_f = 0.0;
  Locality locality = Locality::global;
  std::array<double, kVariantCount> value{};
  std::array<bool, kVariantCount> valid{};
  std::array<bool, kVariantCount> strict_ok{};
};

/// Evaluates every variant from the supplied constants. The symmetric and
/// norm constants are the derived views of `k` and `m`. Pass
/// Locality::segment_local when the constants hold on the segment only.
BoundReport build_bound_report(const Segment<double>& seg, double delta_f,
                               const Vec<double>& grad_a,
                               const LipschitzBox<double>& k,
                               const CurvatureBox<double>& m,
                               Locality locality = Locality::global);

}  // namespace lipbound

#endif  // LIPBOUND_REPORT_HPP
