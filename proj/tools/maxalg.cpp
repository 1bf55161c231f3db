// maxalg: evaluate distribution-algebra expressions, compare distributions,
// run limit experiments and tail analyses, and emit CSV/JSON for plotting.
//
// Exit codes: 0 success, 2 parse/config error, 3 domain/class error, 4 I/O.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "maxalg/check.hpp"
#include "maxalg/expr.hpp"
#include "maxalg/families.hpp"
#include "maxalg/json_io.hpp"
#include "maxalg/kernels.hpp"
#include "maxalg/scenarios.hpp"
#include "maxalg/tails.hpp"

namespace {

using namespace maxalg;
using json_io::json;

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

struct GridOpts {
  std::string grid_spec;  // lo:hi:n
  bool log_scale = false;

  // Falls back to the candidate-derived default grid.
  EvalGrid resolve(const DistFn& fallback_ref) const {
    if (grid_spec.empty()) return default_grid(fallback_ref);
    double lo = 0, hi = 0;
    int n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(grid_spec);
    if (!(ss >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':')
      throw RangeError("bad --grid, expected lo:hi:n");
    return log_scale ? log_grid(lo, hi, n) : linear_grid(lo, hi, n);
  }
};

void add_grid_opts(CLI::App* cmd, GridOpts& g) {
  cmd->add_option("--grid", g.grid_spec, "evaluation grid as lo:hi:n");
  cmd->add_flag("--log-grid", g.log_scale, "space --grid points geometrically");
}

void write_output(const std::string& out_path, const std::string& data) {
  if (out_path.empty()) {
    std::fputs(data.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw IoError("cannot open output file " + out_path);
  f << data;
  if (!f) throw IoError("failed writing " + out_path);
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      throw RangeError(std::string("bad ") + what + " entry: " + item);
    }
  }
  if (out.empty()) throw RangeError(std::string(what) + " list is empty");
  return out;
}

std::vector<long> parse_long_list(const std::string& s, const char* what) {
  std::vector<long> out;
  for (double v : parse_double_list(s, what)) out.push_back(static_cast<long>(v));
  return out;
}

// --- subcommand bodies ----------------------------------------------------------

int cmd_table(const std::string& expr_text, const GridOpts& gopts,
              const std::string& format, const std::string& out_path) {
  DistFn f = expr::eval_expression(expr_text);
  EvalGrid grid = gopts.resolve(f);
  std::vector<double> vals = f.eval_on(grid.points);
  std::ostringstream os;
  if (format == "json") {
    json j;
    j["expr"] = expr_text;
    j["x"] = grid.points;
    j["F"] = vals;
    os << j.dump(2) << "\n";
  } else {
    os << "x,F\n";
    for (size_t i = 0; i < grid.points.size(); ++i)
      os << format_double(grid.points[i]) << "," << format_double(vals[i])
         << "\n";
  }
  write_output(out_path, os.str());
  return 0;
}

int cmd_dist(const std::string& expr_a, const std::string& expr_b,
             const GridOpts& gopts, const std::string& out_path) {
  DistFn a = expr::eval_expression(expr_a);
  DistFn b = expr::eval_expression(expr_b);
  EvalGrid grid = gopts.resolve(b);
  json j;
  j["sup_distance"] = sup_distance(a, b, grid);
  j["levy_distance"] = levy_distance(a, b, limit_lab::kLevyResolution);
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

limit_lab::SequenceSpec sequence_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  auto target = [&]() {
    return expr::eval_expression(j.at("target").get<std::string>());
  };
  using namespace limit_lab;
  if (kind == "bool-root") return bool_root_seq(target());
  if (kind == "free-root") return free_root_seq(target());
  if (kind == "classical-root") return classical_root_seq(target());
  if (kind == "truncated-free-root") return truncated_free_root_seq(target());
  if (kind == "cp-prelimit")
    return cp_prelimit_seq(j.at("lambda").get<double>(), target());
  if (kind == "remark-truncated-pareto")
    return remark_truncated_pareto_seq(j.at("alpha").get<double>());
  if (kind == "remark-f1") return remark_f1_seq(target());
  if (kind == "remark-f2") return remark_f2_seq(target());
  throw RangeError("limit config: unknown sequence kind '" + kind + "'");
}

Conv conv_from_string(const std::string& s) {
  if (s == "classical") return Conv::Classical;
  if (s == "free") return Conv::Free;
  if (s == "bool") return Conv::Bool;
  throw RangeError("unknown convolution '" + s + "'");
}

void dump_curves(const std::string& prefix, const limit_lab::SequenceSpec& spec,
                 const limit_lab::KnSchedule& sched, Conv conv,
                 const DistFn& candidate, const EvalGrid& grid) {
  for (size_t i = 0; i < sched.indices.size(); ++i) {
    DistFn fn = limit_lab::build_sequence(spec, sched.indices[i]);
    DistFn p = power(conv, fn, static_cast<double>(sched.kn[i]));
    std::vector<double> pv = p.eval_on(grid.points);
    std::vector<double> cv = candidate.eval_on(grid.points);
    std::string path = prefix + "_n" + std::to_string(sched.indices[i]) + ".csv";
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path);
    f << "x,power,candidate\n";
    for (size_t k = 0; k < grid.points.size(); ++k)
      f << format_double(grid.points[k]) << "," << format_double(pv[k]) << ","
        << format_double(cv[k]) << "\n";
  }
}

int cmd_limit(const std::string& scenario, const std::string& config_path,
              const std::string& schedule_csv, double threshold,
              const std::string& curves_prefix, const std::string& out_path) {
  scenarios::Overrides ov;
  if (!schedule_csv.empty())
    ov.schedule = limit_lab::KnSchedule::identity(
        parse_long_list(schedule_csv, "--schedule"));
  if (threshold > 0) ov.threshold = threshold;

  if (!scenario.empty()) {
    json j = scenarios::run(scenario, ov);
    write_output(out_path, j.dump(2) + "\n");
    return 0;
  }
  if (config_path.empty())
    throw RangeError("limit: pass --scenario NAME or --config FILE");

  std::ifstream in(config_path);
  if (!in) throw IoError("cannot open " + config_path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw RangeError(std::string("limit config: ") + e.what());
  }
  limit_lab::SequenceSpec spec = sequence_from_json(cfg.at("sequence"));
  Conv conv = conv_from_string(cfg.at("conv").get<std::string>());
  DistFn candidate =
      expr::eval_expression(cfg.at("candidate").get<std::string>());
  limit_lab::KnSchedule sched =
      ov.schedule ? *ov.schedule : limit_lab::default_schedule();
  if (cfg.contains("schedule") && !ov.schedule) {
    auto ns = cfg["schedule"].get<std::vector<long>>();
    sched = cfg.contains("kn")
                ? limit_lab::KnSchedule::with_kn(ns, cfg["kn"].get<std::vector<long>>())
                : limit_lab::KnSchedule::identity(ns);
  }
  EvalGrid grid = default_grid(candidate);
  if (cfg.contains("grid")) {
    const json& g = cfg["grid"];
    double lo = g.at("lo").get<double>();
    double hi = g.at("hi").get<double>();
    int n = g.value("points", 2001);
    grid = g.value("log", false) ? log_grid(lo, hi, n) : linear_grid(lo, hi, n);
  }
  double thr = ov.threshold ? *ov.threshold
                            : cfg.value("threshold", limit_lab::kDefaultThreshold);
  limit_lab::ConvergenceReport rep =
      limit_lab::run_limit(spec, sched, conv, candidate, grid, thr);
  if (!curves_prefix.empty())
    dump_curves(curves_prefix, spec, sched, conv, candidate, grid);
  write_output(out_path, json_io::to_json(rep).dump(2) + "\n");
  return 0;
}

int cmd_tails(const std::string& expr_text, const std::string& probes_csv,
              double t, const std::string& out_path) {
  DistFn f = expr::eval_expression(expr_text);
  std::vector<double> probes = probes_csv.empty()
                                   ? tails::default_probes()
                                   : parse_double_list(probes_csv, "--probes");
  tails::TailReport rep = tails::classify_domain(f, t, probes);
  write_output(out_path, json_io::to_json(rep).dump(2) + "\n");
  return 0;
}

int cmd_roots(const std::string& expr_text, const std::string& kind, long n,
              const GridOpts& gopts, const std::string& out_path) {
  DistFn f = expr::eval_expression(expr_text);
  DistFn root;
  if (kind == "free")
    root = free_nth_root(f, n);
  else if (kind == "bool")
    root = bool_nth_root(f, n);
  else
    throw RangeError("roots: --kind must be free or bool");
  EvalGrid grid = gopts.resolve(f);
  std::vector<double> rv = root.eval_on(grid.points);
  std::ostringstream os;
  os << "x,root\n";
  for (size_t i = 0; i < grid.points.size(); ++i)
    os << format_double(grid.points[i]) << "," << format_double(rv[i]) << "\n";
  write_output(out_path, os.str());
  return 0;
}

int cmd_check(const std::string& out_path) {
  auto results = check::run_check_suite();
  json j = json::array();
  bool all_pass = true;
  std::string first_fail;
  for (const auto& r : results) {
    j.push_back({{"identity", r.name},
                 {"max_deviation", r.max_deviation},
                 {"tolerance", r.tolerance},
                 {"pass", r.pass}});
    if (!r.pass && all_pass) {
      all_pass = false;
      first_fail = r.name;
    }
  }
  json top;
  top["kernel_backend"] = kernels::backend_name(kernels::active());
  top["identities"] = j;
  top["pass"] = all_pass;
  write_output(out_path, top.dump(2) + "\n");
  if (!all_pass) {
    std::fprintf(stderr, "check failed: identity '%s' exceeded tolerance\n",
                 first_fail.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebra of classical, free, and Boolean max-convolutions"};
  app.require_subcommand(1);

  std::string expr_a, expr_b, out_path, format = "csv";
  GridOpts gopts;

  auto* table = app.add_subcommand("table", "tabulate an expression on a grid");
  table->add_option("expr", expr_a, "distribution expression")->required();
  add_grid_opts(table, gopts);
  table->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--out", out_path, "output path (default stdout)");

  auto* dist = app.add_subcommand("dist", "sup/Levy distance of two expressions");
  dist->add_option("exprA", expr_a, "first expression")->required();
  dist->add_option("exprB", expr_b, "second expression")->required();
  add_grid_opts(dist, gopts);
  dist->add_option("--out", out_path, "output path (default stdout)");

  std::string scenario, config_path, schedule_csv, curves_prefix;
  double threshold = 0.0;
  auto* limit = app.add_subcommand("limit", "run a limit experiment");
  limit->add_option("--scenario", scenario,
                    "built-in scenario name (see --list)");
  limit->add_option("--config", config_path, "experiment config JSON file");
  limit->add_option("--schedule", schedule_csv, "indices n1,n2,...");
  limit->add_option("--threshold", threshold, "convergence threshold");
  limit->add_option("--curves", curves_prefix,
                    "write per-index CSV curves with this path prefix");
  limit->add_option("--out", out_path, "output path (default stdout)");
  bool list_scenarios = false;
  limit->add_flag("--list", list_scenarios, "list scenario names and exit");

  std::string probes_csv;
  double tail_t = 2.0;
  auto* tails_cmd = app.add_subcommand("tails", "tail index and domain classifier");
  tails_cmd->add_option("expr", expr_a, "distribution expression")->required();
  tails_cmd->add_option("--probes", probes_csv, "probe points p1,p2,...");
  tails_cmd->add_option("--t", tail_t, "ratio scale t > 1");
  tails_cmd->add_option("--out", out_path, "output path (default stdout)");

  std::string root_kind = "free";
  long root_n = 2;
  auto* roots = app.add_subcommand("roots", "tabulate a convolution n-th root");
  roots->add_option("expr", expr_a, "distribution expression")->required();
  roots->add_option("--kind", root_kind, "free or bool");
  roots->add_option("--n", root_n, "root order n >= 1");
  add_grid_opts(roots, gopts);
  roots->add_option("--out", out_path, "output path (default stdout)");

  auto* check_cmd = app.add_subcommand("check", "run the identity self-checks");
  check_cmd->add_option("--out", out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (table->parsed()) return cmd_table(expr_a, gopts, format, out_path);
    if (dist->parsed()) return cmd_dist(expr_a, expr_b, gopts, out_path);
    if (limit->parsed()) {
      if (list_scenarios) {
        std::string names;
        for (const auto& n : scenarios::names()) names += n + "\n";
        write_output(out_path, names);
        return 0;
      }
      return cmd_limit(scenario, config_path, schedule_csv, threshold,
                       curves_prefix, out_path);
    }
    if (tails_cmd->parsed())
      return cmd_tails(expr_a, probes_csv, tail_t, out_path);
    if (roots->parsed())
      return cmd_roots(expr_a, root_kind, root_n, gopts, out_path);
    if (check_cmd->parsed()) return cmd_check(out_path);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitParse;
  } catch (const ArityError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitParse;
  } catch (const RangeError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitParse;
  } catch (const IoError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    // DomainError, ClassError, ParameterError, HypothesisError
    std::fprintf(stderr, "%s\n", e.what());
    return kExitDomain;
  } catch (const std::runtime_error& e) {
    // TailVanished, EmptyGridError
    std::fprintf(stderr, "%s\n", e.what());
    return kExitDomain;
  }
  return 0;
}
