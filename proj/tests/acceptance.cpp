// Acceptance harness: ten release gates for the bounds toolkit, each
// printed as exactly one PASS/FAIL line. Tolerances are pinned here and
// intentionally not configurable.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lipbound/bounds.hpp"
#include "lipbound/corpus.hpp"
#include "lipbound/estimation.hpp"
#include "lipbound/report.hpp"
#include "lipbound/solver.hpp"
#include "lipbound/verify.hpp"

namespace fs = std::filesystem;
using namespace lipbound;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + unit(rng) * (hi - lo);
}

Vec<double> draw_point(std::mt19937_64& rng, const BoxDomain<double>& box) {
  Vec<double> x(box.dim());
  for (Eigen::Index i = 0; i < box.dim(); ++i)
    x(i) = uniform(rng, box.lower()(i), box.upper()(i));
  return x;
}

/// Full tensor grid with per-axis counts; g == 1 places the midpoint.
template <typename Fn>
void walk_grid(const BoxDomain<double>& box, Eigen::Index g, Fn&& fn) {
  const Eigen::Index n = box.dim();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n), 0);
  Vec<double> x(n);
  auto coord = [&](Eigen::Index axis, Eigen::Index k) {
    if (g == 1) return box.center()(axis);
    return box.lower()(axis) + static_cast<double>(k) * box.width()(axis) /
                                   static_cast<double>(g - 1);
  };
  for (Eigen::Index i = 0; i < n; ++i) x(i) = coord(i, 0);
  for (;;) {
    fn(x);
    Eigen::Index axis = 0;
    while (axis < n) {
      auto& k = idx[static_cast<std::size_t>(axis)];
      ++k;
      if (k < g) {
        x(axis) = coord(axis, k);
        break;
      }
      k = 0;
      x(axis) = coord(axis, 0);
      ++axis;
    }
    if (axis == n) return;
  }
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

// 1. With oracle constants, 10000 seeded random segments per corpus entry
//    must satisfy all 12 bound variants (validity slack 1e-9*(1+|delta_f|),
//    as produced by build_bound_report), in under 60 seconds total.
Outcome criterion1() {
  const double t0 = now_seconds();
  std::uint64_t rows = 0;
  std::uint64_t violations = 0;
  std::size_t entries = 0;
  for (const CorpusEntry& e : corpus_list()) {
    VerifyOptions opts;
    opts.seed = 42;
    opts.pairs = 10000;
    opts.function_name = e.name;
    const VerifyStats s =
        verify_model(e.model, e.box, e.kappa_oracle, e.m_oracle, opts);
    rows += s.rows;
    violations += s.violations;
    ++entries;
  }
  const double secs = now_seconds() - t0;
  const bool pass = entries >= 10 && violations == 0 && secs < 60.0;
  return {pass, fmt("%zu entries, %llu rows, %llu violations, %.1fs",
                    entries, static_cast<unsigned long long>(rows),
                    static_cast<unsigned long long>(violations), secs)};
}

// 2. The same sweep with constants widened by an absolute 1e-6 margin and
//    segments at least 1e-3 long must hold strictly everywhere.
Outcome criterion2() {
  std::uint64_t rows = 0;
  std::uint64_t violations = 0;
  std::uint64_t strict_failures = 0;
  for (const CorpusEntry& e : corpus_list()) {
    VerifyOptions opts;
    opts.seed = 42;
    opts.pairs = 10000;
    opts.min_step = 1e-3;
    opts.function_name = e.name;
    const VerifyStats s =
        verify_model(e.model, e.box, e.kappa_oracle.inflated(1e-6),
                     e.m_oracle.inflated(1e-6), opts);
    rows += s.rows;
    violations += s.violations;
    strict_failures += s.strict_failures;
  }
  const bool pass = violations == 0 && strict_failures == 0;
  return {pass, fmt("%llu rows, %llu violations, %llu strict failures",
                    static_cast<unsigned long long>(rows),
                    static_cast<unsigned long long>(violations),
                    static_cast<unsigned long long>(strict_failures))};
}

// 3. Degenerate constants collapse the sandwich: on the affine entry the
//    linear bounds equal delta_f, and on both quadratic entries the
//    quadratic bounds equal delta_f, to 1e-12*(1+|delta_f|).
Outcome criterion3() {
  std::mt19937_64 rng(42);
  double worst = 0.0;
  auto record = [&](double bound, double delta) {
    worst = std::max(worst,
                     std::abs(bound - delta) / (1.0 + std::abs(delta)));
  };

  const CorpusEntry& affine = corpus_entry("affine");
  for (int rep = 0; rep < 1000; ++rep) {
    const Vec<double> a = draw_point(rng, affine.box);
    const Vec<double> b = draw_point(rng, affine.box);
    const Segment<double> seg(a, b);
    const double delta = affine.model(b) - affine.model(a);
    record(linear_lower(seg, affine.kappa_oracle), delta);
    record(linear_upper(seg, affine.kappa_oracle), delta);
  }
  for (const char* name : {"quad_shifted", "quadratic_coupled"}) {
    const CorpusEntry& e = corpus_entry(name);
    for (int rep = 0; rep < 1000; ++rep) {
      const Vec<double> a = draw_point(rng, e.box);
      const Vec<double> b = draw_point(rng, e.box);
      const Segment<double> seg(a, b);
      const double delta = e.model(b) - e.model(a);
      const Vec<double> g = e.model.grad(a);
      record(quadratic_lower(seg, g, e.m_oracle), delta);
      record(quadratic_upper(seg, g, e.m_oracle), delta);
    }
  }
  return {worst <= 1e-12, fmt("worst relative mismatch %.3g", worst)};
}

// 4. Reduction chain: interval constants mirrored around zero reproduce the
//    symmetric forms exactly, and the symmetric forms dominate the norm
//    forms built from kappa = max_i kappa_i and M = max row sum.
Outcome criterion4() {
  std::mt19937_64 rng(43);
  double worst_identity = 0.0;
  double worst_dominance = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 6);
    Vec<double> a(n), b(n), c(n), g(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      a(i) = uniform(rng, -2.0, 2.0);
      b(i) = uniform(rng, -2.0, 2.0);
      c(i) = uniform(rng, 0.0, 3.0);
      g(i) = uniform(rng, -2.0, 2.0);
    }
    Mat<double> ms(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) {
        ms(i, j) = uniform(rng, 0.0, 3.0);
        ms(j, i) = ms(i, j);
      }
    const Segment<double> seg(a, b);
    const LipschitzBox<double> mirrored(-c, c);
    const CurvatureBox<double> mirrored_m(-ms, ms);

    worst_identity = std::max(
        worst_identity,
        std::abs(linear_lower(seg, mirrored) - symmetric_linear_lower(seg, c)));
    worst_identity = std::max(
        worst_identity,
        std::abs(linear_upper(seg, mirrored) - symmetric_linear_upper(seg, c)));
    worst_identity =
        std::max(worst_identity, std::abs(quadratic_lower(seg, g, mirrored_m) -
                                          symmetric_quadratic_lower(seg, g, ms)));
    worst_identity =
        std::max(worst_identity, std::abs(quadratic_upper(seg, g, mirrored_m) -
                                          symmetric_quadratic_upper(seg, g, ms)));

    const double kappa = kappa_norm(c);
    const double big_m = m_norm(ms);
    worst_dominance =
        std::max(worst_dominance,
                 norm_linear_lower(seg, kappa) - symmetric_linear_lower(seg, c));
    worst_dominance =
        std::max(worst_dominance,
                 symmetric_linear_upper(seg, c) - norm_linear_upper(seg, kappa));
    worst_dominance = std::max(worst_dominance,
                               norm_quadratic_lower(seg, g, big_m) -
                                   symmetric_quadratic_lower(seg, g, ms));
    worst_dominance = std::max(worst_dominance,
                               symmetric_quadratic_upper(seg, g, ms) -
                                   norm_quadratic_upper(seg, g, big_m));
  }
  const bool pass = worst_identity <= 1e-12 && worst_dominance <= 1e-12;
  return {pass, fmt("identity error %.3g, dominance excess %.3g",
                    worst_identity, worst_dominance)};
}

// 5. Antisymmetry: the upper bound of the reversed segment is the negated
//    lower bound of the forward segment, to 1e-12 absolute.
Outcome criterion5() {
  std::mt19937_64 rng(44);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 6);
    Vec<double> a(n), b(n), lo(n), hi(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      a(i) = uniform(rng, -3.0, 3.0);
      b(i) = uniform(rng, -3.0, 3.0);
      const double u = uniform(rng, -3.0, 3.0);
      const double v = uniform(rng, -3.0, 3.0);
      lo(i) = std::min(u, v);
      hi(i) = std::max(u, v);
    }
    const LipschitzBox<double> k(lo, hi);
    worst = std::max(worst, std::abs(linear_upper(Segment<double>(b, a), k) +
                                     linear_lower(Segment<double>(a, b), k)));
  }
  return {worst <= 1e-12, fmt("worst residual %.3g", worst)};
}

// 6. Segment-local constants estimated with zero inflation tighten (or tie)
//    every variant against the global oracle constants, on 10800 random
//    segments over the entries with non-constant derivatives; spot check:
//    the cubic's local upper bound over [0, 0.5] is 0.375 against the
//    global 1.5.
Outcome criterion6() {
  std::mt19937_64 rng(45);
  EstimationConfig est;
  est.inflation = 0.0;

  std::uint64_t segments = 0;
  std::uint64_t loose = 0;
  for (const CorpusEntry& e : corpus_list()) {
    if (e.name == "affine") continue;
    for (int rep = 0; rep < 1200; ++rep) {
      const Vec<double> a = draw_point(rng, e.box);
      const Vec<double> b = draw_point(rng, e.box);
      const Segment<double> seg(a, b);
      const double delta = e.model(b) - e.model(a);
      const Vec<double> g = e.model.grad(a);
      const BoundReport local = build_bound_report(
          seg, delta, g, estimate_segment_kappa(e.model, seg, est),
          estimate_segment_M(e.model, seg, est), Locality::segment_local);
      const BoundReport global =
          build_bound_report(seg, delta, g, e.kappa_oracle, e.m_oracle,
                             Locality::global);
      ++segments;
      for (const BoundVariant& v : all_variants()) {
        const std::size_t i = variant_index(v);
        const bool ok = v.side == Side::lower
                            ? local.value[i] >= global.value[i]
                            : local.value[i] <= global.value[i];
        if (!ok) ++loose;
      }
    }
  }

  const CorpusEntry& cubic = corpus_entry("cubic");
  const Segment<double> seg(Vec<double>::Zero(1),
                            Vec<double>::Constant(1, 0.5));
  const double local_upper =
      linear_upper(seg, estimate_segment_kappa(cubic.model, seg, est));
  const double global_upper = linear_upper(seg, cubic.kappa_oracle);
  const bool spot_ok =
      local_upper <= 0.375 + 1e-6 && global_upper == 1.5;

  const bool pass = segments >= 10000 && loose == 0 && spot_ok;
  return {pass, fmt("%llu segments, %llu loose variants, cubic local upper "
                    "%.17g vs global %.17g",
                    static_cast<unsigned long long>(segments),
                    static_cast<unsigned long long>(loose), local_upper,
                    global_upper)};
}

// 7. Along x(gamma) = x_a + gamma*d the chain rule gives
//    phi'(gamma) = grad f(x)^T d and phi''(gamma) = d^T H(x) d; both must
//    match finite differences in gamma to 1e-5 / 1e-4 relative on 100
//    random (entry, segment, gamma) triples.
Outcome criterion7() {
  std::mt19937_64 rng(46);
  const auto& entries = corpus_list();
  double worst1 = 0.0;
  double worst2 = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const CorpusEntry& e = entries[static_cast<std::size_t>(rep) %
                                   entries.size()];
    const Vec<double> a = draw_point(rng, e.box);
    const Vec<double> b = draw_point(rng, e.box);
    const Segment<double> seg(a, b);
    const double gamma = uniform(rng, 0.05, 0.95);
    auto phi = [&](double t) { return e.model(point_at(seg, t)); };

    const Vec<double> x = point_at(seg, gamma);
    const double exact1 = e.model.grad(x).dot(seg.delta());
    const double exact2 =
        seg.delta().dot(e.model.hess(x) * seg.delta());

    const double h1 = 1e-6;
    const double fd1 = (phi(gamma + h1) - phi(gamma - h1)) / (2.0 * h1);
    const double h2 = 1e-3;
    const double fd2 = (-phi(gamma + 2.0 * h2) + 16.0 * phi(gamma + h2) -
                        30.0 * phi(gamma) + 16.0 * phi(gamma - h2) -
                        phi(gamma - 2.0 * h2)) /
                       (12.0 * h2 * h2);

    worst1 = std::max(worst1,
                      std::abs(fd1 - exact1) / (1.0 + std::abs(exact1)));
    worst2 = std::max(worst2,
                      std::abs(fd2 - exact2) / (1.0 + std::abs(exact2)));
  }
  const bool pass = worst1 <= 1e-5 && worst2 <= 1e-4;
  return {pass, fmt("first-derivative error %.3g, second %.3g", worst1,
                    worst2)};
}

// 8. Both enclosure flavors, anchored at the box center with oracle
//    constants, contain every value on a >= 10^4-point grid of each entry
//    (containment slack 1e-9*(1+|f|)).
Outcome criterion8() {
  std::uint64_t points = 0;
  std::uint64_t escapes = 0;
  for (const CorpusEntry& e : corpus_list()) {
    const Eigen::Index n = e.box.dim();
    const Eigen::Index g = static_cast<Eigen::Index>(
        std::ceil(std::pow(10000.0, 1.0 / static_cast<double>(n))));
    const Vec<double> c = e.box.center();
    const double fc = e.model(c);
    const Enclosure lin = enclose_linear(fc, c, e.box, e.kappa_oracle);
    const Enclosure quad =
        enclose_quadratic(fc, e.model.grad(c), c, e.box, e.m_oracle);
    walk_grid(e.box, g, [&](const Vec<double>& x) {
      const double f = e.model(x);
      const double tol = 1e-9 * (1.0 + std::abs(f));
      ++points;
      if (f < lin.lo - tol || f > lin.hi + tol) ++escapes;
      if (f < quad.lo - tol || f > quad.hi + tol) ++escapes;
    });
  }
  return {escapes == 0, fmt("%llu grid points, %llu escapes",
                            static_cast<unsigned long long>(points),
                            static_cast<unsigned long long>(escapes))};
}

// 9. The minimizer converges on three benchmark entries with oracle
//    constants at tol 1e-3 in under 10 seconds each, sandwiching the
//    minimum of a dense grid (augmented with the entry's known minimizer)
//    between certified_lower and best_value, with 1e-12 relative slack.
Outcome criterion9() {
  std::string detail;
  bool pass = true;
  for (const char* name : {"quad_shifted", "six_hump_camel", "rosenbrock"}) {
    const CorpusEntry& e = corpus_entry(name);
    MinimizeOptions opts;
    opts.tol = 1e-3;
    opts.budget = 2000000;
    opts.kappa = e.kappa_oracle;
    opts.curvature = e.m_oracle;

    const double t0 = now_seconds();
    const BnBResult r = minimize(e.model, e.box, opts);
    const double secs = now_seconds() - t0;

    double grid_min = e.model(e.known_min->point);
    walk_grid(e.box, 101, [&](const Vec<double>& x) {
      grid_min = std::min(grid_min, e.model(x));
    });

    const bool ok = r.converged && r.gap <= 1e-3 &&
                    r.certified_lower <=
                        grid_min + 1e-12 * (1.0 + std::abs(grid_min)) &&
                    grid_min <=
                        r.best_value + 1e-12 * (1.0 + std::abs(r.best_value)) &&
                    secs < 10.0;
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += fmt("%s gap %.2g %.1fs%s", name, r.gap, secs,
                  ok ? "" : " FAILED");
  }
  return {pass, detail};
}

// 10. Two invocations of the command-line tool with an identical config
//     write byte-identical reports (checked for verify, minimize, and
//     enclose).
Outcome criterion10() {
  const fs::path dir = fs::temp_directory_path() / "lipbound_acceptance";
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto run_twice = [&](const std::string& args, const std::string& tag) {
    const fs::path a = dir / (tag + "_a.csv");
    const fs::path b = dir / (tag + "_b.csv");
    for (const fs::path& out : {a, b}) {
      const std::string cmd = std::string(LIPBOUND_CLI_PATH) + " " + args +
                              " --out " + out.string() + " >/dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
        return false;
    }
    const std::string text = slurp(a);
    return !text.empty() && text == slurp(b);
  };

  const bool verify_ok = run_twice(
      "--cmd verify --fn quadratic_coupled --pairs 200 --seed 42", "verify");
  const bool minimize_ok =
      run_twice("--cmd minimize --fn quad_shifted --tol 1e-4", "minimize");
  const bool enclose_ok =
      run_twice("--cmd enclose --fn six_hump_camel", "enclose");
  const bool pass = verify_ok && minimize_ok && enclose_ok;
  return {pass, fmt("verify %s, minimize %s, enclose %s",
                    verify_ok ? "identical" : "differs",
                    minimize_ok ? "identical" : "differs",
                    enclose_ok ? "identical" : "differs")};
}

}  // namespace

int main() {
  struct Gate {
    int id;
    const char* name;
    Outcome (*fn)();
  };
  const Gate gates[] = {
      {1, "soundness sweep", criterion1},
      {2, "strictness", criterion2},
      {3, "degenerate exactness", criterion3},
      {4, "reduction identities", criterion4},
      {5, "antisymmetry", criterion5},
      {6, "local dominance", criterion6},
      {7, "directional derivatives", criterion7},
      {8, "enclosure containment", criterion8},
      {9, "minimizer", criterion9},
      {10, "reproducibility", criterion10},
  };

  int failures = 0;
  for (const Gate& gate : gates) {
    Outcome outcome{false, ""};
    const double t0 = now_seconds();
    try {
      outcome = gate.fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = now_seconds() - t0;
    std::printf("%s criterion %2d (%s): %s [%.1fs]\n",
                outcome.pass ? "PASS" : "FAIL", gate.id, gate.name,
                outcome.detail.c_str(), secs);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
