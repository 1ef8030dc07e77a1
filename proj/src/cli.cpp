#include "lipbound/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "lipbound/corpus.hpp"
#include "lipbound/estimation.hpp"
#include "lipbound/expression.hpp"
#include "lipbound/report.hpp"
#include "lipbound/solver.hpp"
#include "lipbound/textio.hpp"
#include "lipbound/verify.hpp"

namespace lipbound {
namespace {

using nlohmann::json;

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_u64(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(context + ": '" + s + "' is not a count");
  }
  if (used != s.size())
    throw std::invalid_argument(context + ": '" + s + "' is not a count");
  return v;
}

double parse_real(const std::string& s, const std::string& context) {
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

bool parse_flag(const std::string& s, const std::string& context) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument(context + ": '" + s + "' is not a boolean");
}

/// Report sink: the --out file when given, stdout otherwise.
class Report {
 public:
  explicit Report(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw std::invalid_argument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct Resolved {
  FunctionModel model;
  BoxDomain<double> box;
  const CorpusEntry* entry;
};

Resolved resolve_function(const RunConfig& cfg) {
  detail::require(!cfg.function.empty(), "missing --fn");
  if (cfg.function.rfind("expr:", 0) == 0) {
    detail::require(!cfg.box.empty(), "expression functions need --box");
    BoxDomain<double> box = parse_box(cfg.box);
    FunctionModel model = make_expression_model(cfg.function.substr(5), box);
    return Resolved{std::move(model), std::move(box), nullptr};
  }
  const CorpusEntry& entry = corpus_entry(cfg.function);
  BoxDomain<double> box = cfg.box.empty() ? entry.box : parse_box(cfg.box);
  return Resolved{entry.model, std::move(box), &entry};
}

struct Constants {
  std::optional<LipschitzBox<double>> kappa;
  std::optional<CurvatureBox<double>> curvature;
  bool estimated = false;
};

/// Resolution order: the --constants file verbatim (omissions stay absent),
/// else corpus oracles, else empirical estimation over the box.
Constants resolve_constants(const RunConfig& cfg, const Resolved& r,
                            bool need_kappa, bool need_m) {
  Constants out;
  if (!cfg.constants_path.empty()) {
    ConstantsFile file = read_constants_file(cfg.constants_path);
    out.kappa = std::move(file.kappa);
    out.curvature = std::move(file.curvature);
  } else if (r.entry) {
    if (need_kappa) out.kappa = r.entry->kappa_oracle;
    if (need_m) out.curvature = r.entry->m_oracle;
  } else {
    EstimationConfig est;
    est.sample_seed = cfg.seed;
    if (need_kappa) {
      out.kappa = estimate_kappa(r.model, r.box, est);
      out.estimated = true;
    }
    if (need_m) {
      out.curvature = estimate_M(r.model, r.box, est);
      out.estimated = true;
    }
  }
  if (out.kappa)
    detail::require(out.kappa->dim() == r.box.dim(),
                    "kappa constants dimension does not match the box");
  if (out.curvature)
    detail::require(out.curvature->dim() == r.box.dim(),
                    "M constants dimension does not match the box");
  return out;
}

std::string join_point(const Vec<double>& x) {
  std::string s;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) s += ';';
    s += format_double(x(i));
  }
  return s;
}

json point_json(const Vec<double>& x) {
  json a = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(x(i));
  return a;
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

bool use_csv(const RunConfig& cfg) {
  if (cfg.format == "csv") return true;
  if (cfg.format == "jsonl") return false;
  throw std::invalid_argument("format must be csv or jsonl, got '" +
                              cfg.format + "'");
}

int cmd_bound(const RunConfig& cfg) {
  const Resolved r = resolve_function(cfg);
  detail::require(!cfg.xa.empty() && !cfg.xb.empty(),
                  "bound needs --xa and --xb");
  const Vec<double> xa = parse_point(cfg.xa);
  const Vec<double> xb = parse_point(cfg.xb);
  detail::require(xa.size() == r.box.dim() && xb.size() == r.box.dim(),
                  "endpoint dimension does not match the box");
  if (!r.box.contains(xa) || !r.box.contains(xb))
    throw std::domain_error("bound: endpoints must lie inside the box");

  const Segment<double> seg(xa, xb);
  const double delta_f = r.model(xb) - r.model(xa);
  EstimationConfig est;
  est.sample_seed = cfg.seed;
  const Vec<double> grad_a = detail::sample_gradient(r.model, xa, est.fd_step);

  std::optional<BoundReport> rep;
  if (cfg.local) {
    rep.emplace(build_bound_report(
        seg, delta_f, grad_a, estimate_segment_kappa(r.model, seg, est),
        estimate_segment_M(r.model, seg, est), Locality::segment_local));
  } else {
    const Constants c = resolve_constants(cfg, r, true, true);
    detail::require(c.kappa.has_value() && c.curvature.has_value(),
                    "bound needs both kappa and M constants");
    rep.emplace(build_bound_report(seg, delta_f, grad_a, *c.kappa,
                                   *c.curvature, Locality::global));
  }

  Report report(cfg.out_path);
  std::ostream& os = report.out();
  const bool csv = use_csv(cfg);
  if (csv) os << "variant,locality,value,delta_f,valid,strict_ok,slack\n";
  for (const BoundVariant& v : all_variants()) {
    const std::size_t i = variant_index(v);
    const double slack = bound_slack(v.side, rep->value[i], rep->delta_f);
    if (csv) {
      os << variant_label(v) << ',' << to_string(rep->locality) << ','
         << format_double(rep->value[i]) << ',' << format_double(rep->delta_f)
         << ',' << bool_str(rep->valid[i]) << ',' << bool_str(rep->strict_ok[i])
         << ',' << format_double(slack) << '\n';
    } else {
      os << json{{"variant", variant_label(v)},
                 {"locality", to_string(rep->locality)},
                 {"value", rep->value[i]},
                 {"delta_f", rep->delta_f},
                 {"valid", rep->valid[i]},
                 {"strict_ok", rep->strict_ok[i]},
                 {"slack", slack}}
                .dump()
         << '\n';
    }
  }
  return 0;
}

int cmd_estimate(const RunConfig& cfg) {
  const Resolved r = resolve_function(cfg);
  EstimationConfig est;
  est.sample_seed = cfg.seed;
  const LipschitzBox<double> k = estimate_kappa(r.model, r.box, est);
  const CurvatureBox<double> m = estimate_M(r.model, r.box, est);

  Report report(cfg.out_path);
  std::ostream& os = report.out();
  if (use_csv(cfg)) {
    write_constants_csv(os, k, m);
  } else {
    for (Eigen::Index i = 0; i < k.dim(); ++i)
      os << json{{"type", "kappa"},
                 {"i", i + 1},
                 {"lo", k.lo()(i)},
                 {"hi", k.hi()(i)}}
                .dump()
         << '\n';
    for (Eigen::Index i = 0; i < m.dim(); ++i)
      for (Eigen::Index j = 0; j < m.dim(); ++j)
        os << json{{"type", "M"},
                   {"i", i + 1},
                   {"j", j + 1},
                   {"lo", m.lo()(i, j)},
                   {"hi", m.hi()(i, j)}}
                  .dump()
           << '\n';
  }
  return 0;
}

int cmd_enclose(const RunConfig& cfg) {
  const Resolved r = resolve_function(cfg);
  const Vec<double> anchor =
      cfg.xa.empty() ? Vec<double>(r.box.center()) : parse_point(cfg.xa);
  detail::require(anchor.size() == r.box.dim(),
                  "anchor dimension does not match the box");
  const Constants c = resolve_constants(cfg, r, true, true);
  detail::require(c.kappa.has_value() && c.curvature.has_value(),
                  "enclose needs both kappa and M constants");

  EstimationConfig est;
  const double fa = r.model(anchor);
  const Vec<double> ga = detail::sample_gradient(r.model, anchor, est.fd_step);
  const Enclosure lin = enclose_linear(fa, anchor, r.box, *c.kappa);
  const Enclosure quad =
      enclose_quadratic(fa, ga, anchor, r.box, *c.curvature);

  Report report(cfg.out_path);
  std::ostream& os = report.out();
  if (use_csv(cfg)) {
    os << "flavor,lo,hi,anchor,witness_lo\n";
    os << "linear," << format_double(lin.lo) << ',' << format_double(lin.hi)
       << ',' << join_point(lin.anchor) << ',' << join_point(lin.witness_lo)
       << '\n';
    os << "quadratic," << format_double(quad.lo) << ','
       << format_double(quad.hi) << ',' << join_point(quad.anchor) << ','
       << join_point(quad.witness_lo) << '\n';
  } else {
    for (const auto& [flavor, e] :
         {std::pair<const char*, const Enclosure&>{"linear", lin},
          {"quadratic", quad}}) {
      os << json{{"flavor", flavor},
                 {"lo", e.lo},
                 {"hi", e.hi},
                 {"anchor", point_json(e.anchor)},
                 {"witness_lo", point_json(e.witness_lo)}}
                .dump()
         << '\n';
    }
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const Resolved r = resolve_function(cfg);
  VerifyOptions vo;
  vo.seed = cfg.seed;
  vo.pairs = cfg.pairs;
  vo.segment_local = cfg.local;
  vo.function_name = cfg.function;
  vo.est.sample_seed = cfg.seed;

  std::optional<LipschitzBox<double>> k;
  std::optional<CurvatureBox<double>> m;
  if (!cfg.local) {
    Constants c = resolve_constants(cfg, r, true, true);
    detail::require(c.kappa.has_value() && c.curvature.has_value(),
                    "verify needs both kappa and M constants");
    k = std::move(c.kappa);
    m = std::move(c.curvature);
  }

  Report report(cfg.out_path);
  std::ostream& os = report.out();
  const bool csv = use_csv(cfg);
  if (csv) os << kVerifyCsvHeader << '\n';
  const VerifyStats stats =
      verify_model(r.model, r.box, k, m, vo, [&](const VerifyRow& row) {
        if (csv) {
          os << row.seed << ',' << row.function << ',' << row.variant << ','
             << row.locality << ',' << format_double(row.delta_f) << ','
             << format_double(row.bound_value) << ',' << bool_str(row.valid)
             << ',' << bool_str(row.strict_ok) << ','
             << format_double(row.slack) << '\n';
        } else {
          os << json{{"seed", row.seed},
                     {"function", row.function},
                     {"variant", row.variant},
                     {"locality", row.locality},
                     {"delta_f", row.delta_f},
                     {"bound_value", row.bound_value},
                     {"valid", row.valid},
                     {"strict_ok", row.strict_ok},
                     {"slack", row.slack}}
                    .dump()
             << '\n';
        }
      });

  std::cerr << "verify: rows=" << stats.rows
            << " violations=" << stats.violations
            << " strict_failures=" << stats.strict_failures << '\n';
  return stats.violations == 0 ? 0 : 2;
}

int cmd_minimize(const RunConfig& cfg) {
  const Resolved r = resolve_function(cfg);
  MinimizeOptions mo;
  mo.tol = cfg.tol;
  mo.budget = cfg.budget;
  mo.local_constants = cfg.local;
  mo.local_cfg.sample_seed = cfg.seed;
  if (!cfg.local) {
    Constants c = resolve_constants(cfg, r, false, true);
    mo.kappa = std::move(c.kappa);
    mo.curvature = std::move(c.curvature);
    detail::require(mo.kappa.has_value() || mo.curvature.has_value(),
                    "minimize needs kappa or M constants");
  }

  Report report(cfg.out_path);
  std::ostream& os = report.out();
  const bool csv = use_csv(cfg);
  if (csv) os << "iteration,queue_size,best_value,certified_lower,gap\n";
  mo.on_progress = [&](const BnBTrace& t) {
    if (csv) {
      os << t.iteration << ',' << t.queue_size << ','
         << format_double(t.best_value) << ','
         << format_double(t.certified_lower) << ',' << format_double(t.gap)
         << '\n';
    } else {
      os << json{{"kind", "trace"},
                 {"iteration", t.iteration},
                 {"queue_size", t.queue_size},
                 {"best_value", t.best_value},
                 {"certified_lower", t.certified_lower},
                 {"gap", t.gap}}
                .dump()
         << '\n';
    }
  };

  const BnBResult res = minimize(r.model, r.box, mo);
  if (csv) {
    os << "result,best_value," << format_double(res.best_value) << '\n';
    os << "result,best_point," << join_point(res.best_point) << '\n';
    os << "result,certified_lower," << format_double(res.certified_lower)
       << '\n';
    os << "result,gap," << format_double(res.gap) << '\n';
    os << "result,iterations," << res.iterations << '\n';
    os << "result,boxes_pruned," << res.boxes_pruned << '\n';
    os << "result,converged," << bool_str(res.converged) << '\n';
    os << "result,empirical," << bool_str(res.empirical) << '\n';
  } else {
    os << json{{"kind", "result"},
               {"best_value", res.best_value},
               {"best_point", point_json(res.best_point)},
               {"certified_lower", res.certified_lower},
               {"gap", res.gap},
               {"iterations", res.iterations},
               {"boxes_pruned", res.boxes_pruned},
               {"converged", res.converged},
               {"empirical", res.empirical}}
              .dump()
       << '\n';
  }
  return 0;
}

}  // namespace

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trimmed(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::string context = "config line " + std::to_string(line_no);
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(context + ": expected key=value");
    const std::string key = trimmed(stripped.substr(0, eq));
    const std::string value = trimmed(stripped.substr(eq + 1));
    if (key == "cmd") {
      cfg.command = value;
    } else if (key == "fn") {
      cfg.function = value;
    } else if (key == "box") {
      cfg.box = value;
    } else if (key == "xa") {
      cfg.xa = value;
    } else if (key == "xb") {
      cfg.xb = value;
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, context);
    } else if (key == "pairs") {
      cfg.pairs = parse_u64(value, context);
    } else if (key == "tol") {
      cfg.tol = parse_real(value, context);
    } else if (key == "budget") {
      cfg.budget = parse_u64(value, context);
    } else if (key == "constants") {
      cfg.constants_path = value;
    } else if (key == "out") {
      cfg.out_path = value;
    } else if (key == "format") {
      cfg.format = value;
    } else if (key == "local") {
      cfg.local = parse_flag(value, context);
    } else {
      throw std::invalid_argument(context + ": unknown key '" + key + "'");
    }
  }
}

int run(const RunConfig& cfg) {
  try {
    const std::string& c = cfg.command;
    if (c == "bound") return cmd_bound(cfg);
    if (c == "estimate") return cmd_estimate(cfg);
    if (c == "enclose") return cmd_enclose(cfg);
    if (c == "verify") return cmd_verify(cfg);
    if (c == "minimize") return cmd_minimize(cfg);
    throw std::invalid_argument(
        c.empty() ? "missing --cmd" : "unknown command '" + c + "'");
  } catch (const EvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace lipbound
