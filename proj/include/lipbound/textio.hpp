#ifndef LIPBOUND_TEXTIO_HPP
#define LIPBOUND_TEXTIO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "lipbound/types.hpp"

namespace lipbound {

/// Full round-trip precision (17 significant digits).
std::string format_double(double v);

/// Parses "lo1:hi1,lo2:hi2,...".
BoxDomain<double> parse_box(const std::string& text);

/// Parses "v1,v2,...".
Vec<double> parse_point(const std::string& text);

struct ConstantsFile {
  std::optional<LipschitzBox<double>> kappa;
  std::optional<CurvatureBox<double>> curvature;
};

/// Reads rows `kappa,i,lo,hi` and `M,i,j,lo,hi` with 1-based indices in any
/// order. Every kappa index must appear exactly once; every M pair must be
/// covered, either one orientation (mirrored) or both with equal values.
/// Blank lines and lines starting with '#' are skipped.
ConstantsFile parse_constants_csv(std::istream& in);

ConstantsFile read_constants_file(const std::string& path);

/// Writes the same schema parse_constants_csv reads (full M matrix).
void write_constants_csv(std::ostream& out,
                         const std::optional<LipschitzBox<double>>& kappa,
                         const std::optional<CurvatureBox<double>>& curvature);

}  // namespace lipbound

#endif  // LIPBOUND_TEXTIO_HPP
