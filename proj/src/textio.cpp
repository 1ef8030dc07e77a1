#include "lipbound/textio.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace lipbound {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(trim(s.substr(start)));
      return out;
    }
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
}

double parse_double(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(context + ": '" + s + "' is not a number");
  }
  if (used != s.size())
    throw std::invalid_argument(context + ": '" + s + "' is not a number");
  return v;
}

Eigen::Index parse_index(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(context + ": '" + s + "' is not an index");
  }
  if (used != s.size() || v < 1)
    throw std::invalid_argument(context + ": '" + s +
                                "' is not a 1-based index");
  return static_cast<Eigen::Index>(v);
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

BoxDomain<double> parse_box(const std::string& text) {
  const std::vector<std::string> axes = split(text, ',');
  if (axes.empty() || (axes.size() == 1 && axes[0].empty()))
    throw std::invalid_argument("box: expected 'lo1:hi1,lo2:hi2,...'");
  Vec<double> lo(static_cast<Eigen::Index>(axes.size()));
  Vec<double> hi(static_cast<Eigen::Index>(axes.size()));
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::vector<std::string> ends = split(axes[i], ':');
    if (ends.size() != 2)
      throw std::invalid_argument("box: axis '" + axes[i] +
                                  "' must be 'lo:hi'");
    lo(static_cast<Eigen::Index>(i)) = parse_double(ends[0], "box");
    hi(static_cast<Eigen::Index>(i)) = parse_double(ends[1], "box");
  }
  return BoxDomain<double>(std::move(lo), std::move(hi));
}

Vec<double> parse_point(const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.empty() || (parts.size() == 1 && parts[0].empty()))
    throw std::invalid_argument("point: expected 'v1,v2,...'");
  Vec<double> v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = parse_double(parts[i], "point");
  return v;
}

ConstantsFile parse_constants_csv(std::istream& in) {
  struct KappaRow {
    Eigen::Index i;
    double lo;
    double hi;
  };
  struct MRow {
    Eigen::Index i;
    Eigen::Index j;
    double lo;
    double hi;
  };
  std::vector<KappaRow> kappa_rows;
  std::vector<MRow> m_rows;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::string context = "constants line " + std::to_string(line_no);
    const std::vector<std::string> f = split(stripped, ',');
    if (f[0] == "kappa") {
      if (f.size() != 4)
        throw std::invalid_argument(context + ": expected kappa,i,lo,hi");
      kappa_rows.push_back({parse_index(f[1], context),
                            parse_double(f[2], context),
                            parse_double(f[3], context)});
    } else if (f[0] == "M") {
      if (f.size() != 5)
        throw std::invalid_argument(context + ": expected M,i,j,lo,hi");
      m_rows.push_back({parse_index(f[1], context), parse_index(f[2], context),
                        parse_double(f[3], context),
                        parse_double(f[4], context)});
    } else {
      throw std::invalid_argument(context + ": row type must be kappa or M");
    }
  }

  ConstantsFile out;
  if (!kappa_rows.empty()) {
    Eigen::Index n = 0;
    for (const KappaRow& r : kappa_rows) n = std::max(n, r.i);
    Vec<double> lo(n);
    Vec<double> hi(n);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const KappaRow& r : kappa_rows) {
      if (seen[static_cast<std::size_t>(r.i - 1)])
        throw std::invalid_argument("constants: duplicate kappa index " +
                                    std::to_string(r.i));
      seen[static_cast<std::size_t>(r.i - 1)] = true;
      lo(r.i - 1) = r.lo;
      hi(r.i - 1) = r.hi;
    }
    for (Eigen::Index i = 0; i < n; ++i)
      if (!seen[static_cast<std::size_t>(i)])
        throw std::invalid_argument("constants: missing kappa index " +
                                    std::to_string(i + 1));
    out.kappa = LipschitzBox<double>(std::move(lo), std::move(hi));
  }
  if (!m_rows.empty()) {
    Eigen::Index n = 0;
    for (const MRow& r : m_rows) n = std::max(n, std::max(r.i, r.j));
    Mat<double> lo(n, n);
    Mat<double> hi(n, n);
    Mat<double> seen = Mat<double>::Zero(n, n);
    for (const MRow& r : m_rows) {
      const Eigen::Index i = r.i - 1;
      const Eigen::Index j = r.j - 1;
      if (seen(i, j) != 0.0) {
        if (lo(i, j) != r.lo || hi(i, j) != r.hi)
          throw std::invalid_argument(
              "constants: conflicting M values for (" + std::to_string(r.i) +
              "," + std::to_string(r.j) + ")");
        continue;
      }
      seen(i, j) = 1.0;
      seen(j, i) = 1.0;
      lo(i, j) = r.lo;
      lo(j, i) = r.lo;
      hi(i, j) = r.hi;
      hi(j, i) = r.hi;
    }
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (seen(i, j) == 0.0)
          throw std::invalid_argument("constants: missing M entry (" +
                                      std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");
    out.curvature = CurvatureBox<double>(std::move(lo), std::move(hi));
  }
  if (!out.kappa && !out.curvature)
    throw std::invalid_argument("constants: file contains no rows");
  return out;
}

ConstantsFile read_constants_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("constants: cannot open '" + path + "'");
  return parse_constants_csv(in);
}

void write_constants_csv(std::ostream& out,
                         const std::optional<LipschitzBox<double>>& kappa,
                         const std::optional<CurvatureBox<double>>& curvature) {
  if (kappa) {
    for (Eigen::Index i = 0; i < kappa->dim(); ++i)
      out << "kappa," << i + 1 << ',' << format_double(kappa->lo()(i)) << ','
          << format_double(kappa->hi()(i)) << '\n';
  }
  if (curvature) {
    for (Eigen::Index i = 0; i < curvature->dim(); ++i)
      for (Eigen::Index j = 0; j < curvature->dim(); ++j)
        out << "M," << i + 1 << ',' << j + 1 << ','
            << format_double(curvature->lo()(i, j)) << ','
            << format_double(curvature->hi()(i, j)) << '\n';
  }
}

}  // namespace lipbound
