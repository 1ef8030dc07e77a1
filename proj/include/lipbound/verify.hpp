#ifndef LIPBOUND_VERIFY_HPP
#define LIPBOUND_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "lipbound/estimation.hpp"
#include "lipbound/report.hpp"
#include "lipbound/types.hpp"

namespace lipbound {

/// One (segment, variant) check: the bound value against the true delta_f.
/// slack is delta_f - bound for lower bounds and bound - delta_f for upper
/// bounds, nonnegative when the bound holds.
struct VerifyRow {
  std::uint64_t seed;
  std::string function;
  std::string variant;
  std::string locality;
  double delta_f;
  double bound_value;
  bool valid;
  bool strict_ok;
  double slack;
};

inline constexpr const char* kVerifyCsvHeader =
    "seed,function,variant,locality,delta_f,bound_value,valid,strict_ok,slack";

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::uint64_t pairs = 1000;
  /// Estimate constants per segment instead of using the supplied globals.
  bool segment_local = false;
  /// Resample the far endpoint until the step infinity-norm reaches this.
  double min_step = 0.0;
  /// Finite-difference and segment-estimation settings.
  EstimationConfig est;
  /// Name stamped into the rows.
  std::string function_name;
};

struct VerifyStats {
  std::uint64_t rows = 0;
  std::uint64_t violations = 0;
  std::uint64_t strict_failures = 0;
};

/// Draws seeded random segments in `box`, builds one BoundReport per
/// segment from the supplied constants (or segment-local estimates when
/// opts.segment_local is set), and streams one row per variant to on_row.
/// Models without an analytic gradient are sampled from a box inset by the
/// finite-difference stencil so the anchor gradient stays inside the domain.
VerifyStats verify_model(
    const FunctionModel& model, const BoxDomain<double>& box,
    const std::optional<LipschitzBox<double>>& k,
    const std::optional<CurvatureBox<double>>& m, const VerifyOptions& opts,
    const std::function<void(const VerifyRow&)>& on_row = {});

}  // namespace lipbound

#endif  // LIPBOUND_VERIFY_HPP
