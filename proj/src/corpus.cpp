#include "lipbound/corpus.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace lipbound {
namespace {

constexpr double kPi = 3.14159265358979323846;

double sq(double t) { return t * t; }

Vec<double> v1(double a) {
  Vec<double> v(1);
  v << a;
  return v;
}

Vec<double> v2(double a, double b) {
  Vec<double> v(2);
  v << a, b;
  return v;
}

Mat<double> m11(double a) {
  Mat<double> m(1, 1);
  m << a;
  return m;
}

Mat<double> m22(double a, double b, double c, double d) {
  Mat<double> m(2, 2);
  m << a, b, c, d;
  return m;
}

CorpusEntry make_affine() {
  const BoxDomain<double> box(v2(-1, -1), v2(1, 1));
  FunctionModel model(
      2, [](const Vec<double>& x) { return 3.0 * x(0) - 2.0 * x(1) + 1.0; },
      box, [](const Vec<double>&) { return v2(3.0, -2.0); },
      [](const Vec<double>&) { return m22(0, 0, 0, 0); });
  return CorpusEntry{"affine",
                     std::move(model),
                     box,
                     LipschitzBox<double>(v2(3, -2), v2(3, -2)),
                     CurvatureBox<double>(m22(0, 0, 0, 0), m22(0, 0, 0, 0)),
                     KnownMin{-4.0, v2(-1, 1)}};
}

CorpusEntry make_quad_shifted() {
  const BoxDomain<double> box(v2(-1, -1), v2(1, 1));
  FunctionModel model(
      2,
      [](const Vec<double>& x) { return sq(x(0) - 0.3) + sq(x(1) + 0.2); },
      box,
      [](const Vec<double>& x) {
        return v2(2.0 * (x(0) - 0.3), 2.0 * (x(1) + 0.2));
      },
      [](const Vec<double>&) { return m22(2, 0, 0, 2); });
  return CorpusEntry{"quad_shifted",
                     std::move(model),
                     box,
                     LipschitzBox<double>(v2(-2.6, -1.6), v2(1.4, 2.4)),
                     CurvatureBox<double>(m22(2, 0, 0, 2), m22(2, 0, 0, 2)),
                     KnownMin{0.0, v2(0.3, -0.2)}};
}

CorpusEntry make_quadratic_coupled() {
  const BoxDomain<double> box(v2(-1, -1), v2(1, 1));
  FunctionModel model(
      2,
      [](const Vec<double>& x) {
        return sq(x(0)) + x(0) * x(1) + 1.5 * sq(x(1));
      },
      box,
      [](const Vec<double>& x) {
        return v2(2.0 * x(0) + x(1), x(0) + 3.0 * x(1));
      },
      [](const Vec<double>&) { return m22(2, 1, 1, 3); });
  return CorpusEntry{"quadratic_coupled",
                     std::move(model),
                     box,
                     LipschitzBox<double>(v2(-3, -4), v2(3, 4)),
                     CurvatureBox<double>(m22(2, 1, 1, 3), m22(2, 1, 1, 3)),
                     KnownMin{0.0, v2(0, 0)}};
}

CorpusEntry make_cubic() {
  const BoxDomain<double> box(v1(-1), v1(1));
  FunctionModel model(
      1, [](const Vec<double>& x) { return x(0) * x(0) * x(0); }, box,
      [](const Vec<double>& x) { return v1(3.0 * sq(x(0))); },
      [](const Vec<double>& x) { return m11(6.0 * x(0)); });
  return CorpusEntry{"cubic",
                     std::move(model),
                     box,
                     LipschitzBox<double>(v1(0), v1(3)),
                     CurvatureBox<double>(m11(-6), m11(6)),
                     KnownMin{-1.0, v1(-1)}};
}

CorpusEntry make_quartic() {
  const BoxDomain<double> box(v1(-1), v1(1));
  FunctionModel model(
      1, [](const Vec<double>& x) { return sq(sq(x(0))); }, box,
      [](const Vec<double>& x) { return v1(4.0 * x(0) * sq(x(0))); },
      [](const Vec<double>& x) { return m11(12.0 * sq(x(0))); });
  return CorpusEntry{"quartic",
                     std::move(model),
                     box,
                     LipschitzBox<double>(v1(-4), v1(4)),
                     CurvatureBox<double>(m11(0), m11(12)),
                     KnownMin{0.0, v1(0)}};
}

CorpusEntry make_sincos() {
  const BoxDomain<double> box(v2(0, 0), v2(kPi, kPi));
  FunctionModel model(
      2, [](const Vec<double>& x) { return std::sin(x(0)) * std::cos(x(1)); },
      box,
      [](const Vec<double>& x) {
        return v2(std::cos(x(0)) * std::cos(x(1)),
                  -std::sin(x(0)) * std::sin(x(1)));
      },
      [](const Vec<double>& x) {
        const double sxcy = -std::sin(x(0)) * std::cos(x(1));
        const double cxsy = -std::cos(x(0)) * std::sin(x(1));
        return m22(sxcy, cxsy, cxsy, sxcy);
      });
  return CorpusEntry{"sincos",
                     std::move(model),
                     box,
                     LipschitzBox<double>(v2(-1, -1), v2(1, 0)),
                     CurvatureBox<double>(m22(-1, -1, -1, -1), m22(1, 1, 1, 1)),
                     KnownMin{-1.0, v2(kPi / 2, kPi)}};
}

CorpusEntry make_rosenbrock() {
  const BoxDomain<double> box(v2(-2, -1), v2(2, 3));
  FunctionModel model(
      2,
      [](const Vec<double>& x) {
        return sq(1.0 - x(0)) + 100.0 * sq(x(1) - sq(x(0)));
      },
      box,
      [](const Vec<double>& x) {
        return v2(-2.0 * (1.0 - x(0)) - 400.0 * x(0) * (x(1) - sq(x(0))),
                  200.0 * (x(1) - sq(x(0))));
      },
      [](const Vec<double>& x) {
        return m22(2.0 - 400.0 * x(1) + 1200.0 * sq(x(0)), -400.0 * x(0),
                   -400.0 * x(0), 200.0);
      });
  return CorpusEntry{
      "rosenbrock",
      std::move(model),
      box,
      LipschitzBox<double>(v2(-4006, -1000), v2(4002, 600)),
      CurvatureBox<double>(m22(-1198, -800, -800, 200),
                           m22(5202, 800, 800, 200)),
      KnownMin{0.0, v2(1, 1)}};
}

CorpusEntry make_six_hump_camel() {
  const BoxDomain<double> box(v2(-2, -1), v2(2, 1));
  FunctionModel model(
      2,
      [](const Vec<double>& x) {
        const double x2 = sq(x(0));
        const double y2 = sq(x(1));
        return (4.0 - 2.1 * x2 + x2 * x2 / 3.0) * x2 + x(0) * x(1) +
               (-4.0 + 4.0 * y2) * y2;
      },
      box,
      [](const Vec<double>& x) {
        const double x2 = sq(x(0));
        const double y2 = sq(x(1));
        return v2(8.0 * x(0) - 8.4 * x2 * x(0) + 2.0 * x2 * x2 * x(0) + x(1),
                  x(0) - 8.0 * x(1) + 16.0 * y2 * x(1));
      },
      [](const Vec<double>& x) {
        const double x2 = sq(x(0));
        return m22(8.0 - 25.2 * x2 + 10.0 * x2 * x2, 1.0, 1.0,
                   -8.0 + 48.0 * sq(x(1)));
      });
  return CorpusEntry{
      "six_hump_camel",
      std::move(model),
      box,
      LipschitzBox<double>(v2(-13.8, -10), v2(13.8, 10)),
      CurvatureBox<double>(m22(-7.876, 1, 1, -8), m22(67.2, 1, 1, 40)),
      KnownMin{-1.0316284534898774, v2(0.089842013683013,
                                       -0.712656403270413)}};
}

CorpusEntry make_sin_sum5() {
  const Eigen::Index n = 5;
  const BoxDomain<double> box(Vec<double>::Constant(n, -kPi / 2),
                              Vec<double>::Constant(n, kPi / 2));
  FunctionModel model(
      n, [](const Vec<double>& x) { return x.array().sin().sum(); }, box,
      [](const Vec<double>& x) {
        return Vec<double>(x.array().cos().matrix());
      },
      [n](const Vec<double>& x) {
        Mat<double> h = Mat<double>::Zero(n, n);
        h.diagonal() = (-x.array().sin()).matrix();
        return h;
      });
  Mat<double> m_lo = Mat<double>::Zero(n, n);
  m_lo.diagonal().setConstant(-1.0);
  Mat<double> m_hi = Mat<double>::Zero(n, n);
  m_hi.diagonal().setConstant(1.0);
  return CorpusEntry{
      "sin_sum5",
      std::move(model),
      box,
      LipschitzBox<double>(Vec<double>::Zero(n), Vec<double>::Ones(n)),
      CurvatureBox<double>(std::move(m_lo), std::move(m_hi)),
      KnownMin{-5.0, Vec<double>::Constant(n, -kPi / 2)}};
}

CorpusEntry make_log_sum_exp3() {
  const Eigen::Index n = 3;
  const BoxDomain<double> box(Vec<double>::Constant(n, -1.0),
                              Vec<double>::Constant(n, 1.0));
  auto softmax = [](const Vec<double>& x) {
    Vec<double> s = x.array().exp().matrix();
    return Vec<double>(s / s.sum());
  };
  FunctionModel model(
      n,
      [](const Vec<double>& x) { return std::log(x.array().exp().sum()); },
      box, softmax,
      [softmax](const Vec<double>& x) {
        const Vec<double> s = softmax(x);
        Mat<double> h = -s * s.transpose();
        h.diagonal() += s;
        return h;
      });
  const double e2 = std::exp(2.0);
  const double em2 = std::exp(-2.0);
  const double s_lo = 1.0 / (1.0 + 2.0 * e2);
  const double s_hi = 1.0 / (1.0 + 2.0 * em2);
  const double d_lo = 2.0 * e2 / sq(1.0 + 2.0 * e2);
  const double d_hi = 0.25;
  const double c_lo = -1.0 / sq(2.0 + em2);
  const double c_hi = -1.0 / sq(2.0 + e2);
  Mat<double> m_lo = Mat<double>::Constant(n, n, c_lo);
  m_lo.diagonal().setConstant(d_lo);
  Mat<double> m_hi = Mat<double>::Constant(n, n, c_hi);
  m_hi.diagonal().setConstant(d_hi);
  return CorpusEntry{
      "log_sum_exp3",
      std::move(model),
      box,
      LipschitzBox<double>(Vec<double>::Constant(n, s_lo),
                           Vec<double>::Constant(n, s_hi)),
      CurvatureBox<double>(std::move(m_lo), std::move(m_hi)),
      KnownMin{std::log(3.0) - 1.0, Vec<double>::Constant(n, -1.0)}};
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> v;
  v.push_back(make_affine());
  v.push_back(make_quad_shifted());
  v.push_back(make_quadratic_coupled());
  v.push_back(make_cubic());
  v.push_back(make_quartic());
  v.push_back(make_sincos());
  v.push_back(make_rosenbrock());
  v.push_back(make_six_hump_camel());
  v.push_back(make_sin_sum5());
  v.push_back(make_log_sum_exp3());
  return v;
}

Eigen::Index check_points_per_axis(Eigen::Index dim) {
  if (dim <= 2) return 33;
  if (dim == 3) return 17;
  return 9;
}

template <typename Fn>
void walk_grid(const BoxDomain<double>& box, Eigen::Index g, Fn&& fn) {
  const Eigen::Index n = box.dim();
  const Vec<double>& lo = box.lower();
  const Vec<double> w = box.width();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n), 0);
  Vec<double> x = lo;
  for (;;) {
    fn(x);
    Eigen::Index axis = 0;
    while (axis < n) {
      auto& k = idx[static_cast<std::size_t>(axis)];
      ++k;
      if (k < g) {
        x(axis) = lo(axis) + static_cast<double>(k) * w(axis) /
                                 static_cast<double>(g - 1);
        break;
      }
      k = 0;
      x(axis) = lo(axis);
      ++axis;
    }
    if (axis == n) return;
  }
}

void self_check(const CorpusEntry& e) {
  auto ensure = [&](bool ok, const char* what) {
    if (!ok)
      throw std::logic_error("corpus self-check failed for '" + e.name +
                             "': " + what);
  };
  ensure(e.model.has_grad() && e.model.has_hess(),
         "entry must carry analytic derivatives");
  ensure(e.box.dim() == e.model.dim && e.kappa_oracle.dim() == e.model.dim &&
             e.m_oracle.dim() == e.model.dim,
         "dimension mismatch");

  auto above = [](double v, double lo) {
    return v >= lo - 1e-12 * (1.0 + std::abs(lo));
  };
  auto below = [](double v, double hi) {
    return v <= hi + 1e-12 * (1.0 + std::abs(hi));
  };

  double f_min = std::numeric_limits<double>::infinity();
  walk_grid(e.box, check_points_per_axis(e.box.dim()), [&](const Vec<double>& x) {
    f_min = std::min(f_min, e.model(x));
    const Vec<double> g = e.model.grad(x);
    const Mat<double> h = e.model.hess(x);
    for (Eigen::Index i = 0; i < e.model.dim; ++i) {
      ensure(above(g(i), e.kappa_oracle.lo()(i)) &&
                 below(g(i), e.kappa_oracle.hi()(i)),
             "sampled gradient escapes the kappa oracle");
      for (Eigen::Index j = 0; j < e.model.dim; ++j)
        ensure(above(h(i, j), e.m_oracle.lo()(i, j)) &&
                   below(h(i, j), e.m_oracle.hi()(i, j)),
               "sampled Hessian escapes the curvature oracle");
    }
  });

  if (e.known_min) {
    ensure(e.box.contains(e.known_min->point, 1e-12),
           "known minimum lies outside the box");
    ensure(std::abs(e.model(e.known_min->point) - e.known_min->value) <= 1e-9,
           "known minimum value disagrees with the model");
    ensure(e.known_min->value <= f_min + 1e-9,
           "a grid sample undercuts the known minimum");
  }
}

}  // namespace

const std::vector<CorpusEntry>& corpus_list() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> v = build_corpus();
    for (const CorpusEntry& e : v) self_check(e);
    return v;
  }();
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const CorpusEntry& e : corpus_list())
    if (e.name == name) return e;
  std::string names;
  for (const CorpusEntry& e : corpus_list()) {
    if (!names.empty()) names += ", ";
    names += e.name;
  }
  throw std::invalid_argument("unknown corpus entry '" + name +
                              "'; available: " + names);
}

}  // namespace lipbound
