// Command-line front end. Links the shared C API only; report assembly and
// argument handling live here, all math behind gfcalc.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gfcalc.h"

namespace {

using Json = nlohmann::ordered_json;

// Exit codes: 0 success, 1 usage/parse, 2 verdict mismatch or property
// failure, 3 numerical failure.
struct CliFailure {
  int exit_code;
  std::string message;
};

void check(gfc_status st) {
  if (st == GFC_OK) return;
  int code = 1;
  if (st == GFC_ERR_NUMERIC) code = 3;
  throw CliFailure{code, gfc_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* h = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(h); }
  T** out() { return &h; }
  operator T*() const { return h; }
};

using Grid = Handle<gfc_grid, gfc_grid_free>;
using Settings = Handle<gfc_settings, gfc_settings_free>;
using Net = Handle<gfc_net, gfc_net_free>;
using Fn = Handle<gfc_smoothfn, gfc_smoothfn_free>;
using Dist = Handle<gfc_dist, gfc_dist_free>;
using Schedule = Handle<gfc_schedule, gfc_schedule_free>;
using GenFn = Handle<gfc_genfunction, gfc_genfunction_free>;
using FullRep = Handle<gfc_fullrep, gfc_fullrep_free>;
using Family = Handle<gfc_plotfamily, gfc_plotfamily_free>;

std::string take(char* s) {
  std::string out = s ? s : "";
  gfc_string_free(s);
  return out;
}

const char* verdict_name(gfc_verdict v) {
  switch (v) {
    case GFC_YES: return "yes";
    case GFC_NO: return "no";
    default: return "inconclusive";
  }
}

// Options shared by every subcommand; serialized into each report so a run
// can be reproduced byte-for-byte.
struct RunConfig {
  std::string grid = "1:40";
  int q = 4;
  int m_max = 8;
  int n_cap = 50;
  double tol = 1e-10;
  int sup_points = 513;
  uint64_t seed = 42;
  std::string out_path;
  std::string expect;

  int k_min = 1;
  int k_max = 40;

  void parse_grid() {
    const auto colon = grid.find(':');
    if (colon == std::string::npos) throw CliFailure{1, "--grid expects k_min:k_max"};
    try {
      k_min = std::stoi(grid.substr(0, colon));
      k_max = std::stoi(grid.substr(colon + 1));
    } catch (const std::exception&) {
      throw CliFailure{1, "--grid expects integers k_min:k_max"};
    }
  }

  Json to_json() const {
    Json j;
    j["grid"] = {{"k_min", k_min}, {"k_max", k_max}};
    j["q"] = q;
    j["m_max"] = m_max;
    j["n_cap"] = n_cap;
    j["tol"] = tol;
    j["sup_points"] = sup_points;
    j["seed"] = seed;
    return j;
  }

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--grid", grid, "eps grid as k_min:k_max (eps = 2^-k)");
    cmd->add_option("--q", q, "mollifier moment order / schedule depth");
    cmd->add_option("--m-max", m_max, "negligibility exponent bound");
    cmd->add_option("--n-cap", n_cap, "moderateness exponent bound");
    cmd->add_option("--tol", tol, "quadrature tolerance");
    cmd->add_option("--sup-points", sup_points, "sup-scan grid points");
    cmd->add_option("--seed", seed, "panel seed");
    cmd->add_option("--out", out_path, "report output path (JSON)");
    cmd->add_option("--expect", expect, "fail (exit 2) unless the verdict matches")
        ->check(CLI::IsMember({"yes", "no"}));
  }

  void make_grid(Grid& g) const { check(gfc_grid_default(k_min, k_max, g.out())); }

  void make_settings(Settings& s) const {
    check(gfc_settings_create(s.out()));
    check(gfc_settings_set(s, "m_max", m_max));
    check(gfc_settings_set(s, "n_cap", n_cap));
    check(gfc_settings_set(s, "quad_tol", tol));
    check(gfc_settings_set(s, "sup_points", sup_points));
  }
};

std::vector<std::string> g_argv;

Json report_shell(const RunConfig& cfg) {
  Json j;
  j["version"] = gfc_version();
  j["command"] = g_argv;
  j["config"] = cfg.to_json();
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw CliFailure{1, "cannot open " + tmp + " for writing"};
    f << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw CliFailure{1, "cannot move report into place at " + path};
}

void emit_report(const RunConfig& cfg, const Json& report) {
  const std::string text = report.dump(2) + "\n";
  if (cfg.out_path.empty()) {
    std::cout << text;
  } else {
    write_file(cfg.out_path, text);
  }
}

int apply_expect(const RunConfig& cfg, gfc_verdict verdict) {
  if (cfg.expect.empty()) return 0;
  const bool want_yes = cfg.expect == "yes";
  if ((want_yes && verdict != GFC_YES) || (!want_yes && verdict != GFC_NO)) {
    std::cerr << "expected verdict " << cfg.expect << ", got " << verdict_name(verdict) << "\n";
    return 2;
  }
  return 0;
}

/* ----- mollifier ----- */

int cmd_mollifier(const RunConfig& cfg) {
  if (cfg.q < 0 || cfg.q > 12) throw CliFailure{1, "--q must lie in 0..12"};
  Schedule sched;
  check(gfc_schedule_make(cfg.q, sched.out()));
  Grid grid;
  cfg.make_grid(grid);

  int pass = 0;
  char* verify_json = nullptr;
  check(gfc_schedule_verify(sched, grid, 10.0, &pass, &verify_json));

  char* sched_json = nullptr;
  check(gfc_schedule_to_json(sched, &sched_json));

  Json report = report_shell(cfg);
  report["schedule"] = Json::parse(take(sched_json));
  report["properties"] = Json::parse(take(verify_json));
  report["pass"] = pass == 1;
  emit_report(cfg, report);

  if (!cfg.out_path.empty()) {
    // The property-verification report rides alongside the mollifier JSON.
    std::cout << "mollifier schedule written to " << cfg.out_path << "\n";
  }
  std::cout << "properties: " << (pass ? "pass" : "FAIL") << "\n";
  return pass ? 0 : 2;
}

/* ----- embed ----- */

int cmd_embed(const RunConfig& cfg, const std::string& dist_expr, const std::string& k_spec,
              int alpha_max, bool check_vs_sigma) {
  const auto comma = k_spec.find(',');
  if (comma == std::string::npos) throw CliFailure{1, "--K expects lo,hi"};
  const double k_lo = std::stod(k_spec.substr(0, comma));
  const double k_hi = std::stod(k_spec.substr(comma + 1));

  Grid grid;
  cfg.make_grid(grid);
  Settings settings;
  cfg.make_settings(settings);
  Dist dist;
  check(gfc_dist_parse(dist_expr.c_str(), dist.out()));
  Schedule sched;
  check(gfc_schedule_make(cfg.q, sched.out()));
  GenFn emb;
  check(gfc_genfunction_iota(dist, sched, -HUGE_VAL, HUGE_VAL, emb.out()));

  char* csv = nullptr;
  check(gfc_genfunction_sup_table(emb, k_lo, k_hi, alpha_max, grid, settings, &csv));

  gfc_verdict verdict;
  char* mod_json = nullptr;
  check(gfc_genfunction_moderate(emb, k_lo, k_hi, alpha_max, grid, settings, &verdict,
                                 &mod_json));

  Json report = report_shell(cfg);
  report["dist"] = dist_expr;
  report["K"] = {k_lo, k_hi};
  report["alpha_max"] = alpha_max;
  report["moderate"] = Json::parse(take(mod_json));

  if (check_vs_sigma) {
    if (dist_expr.rfind("regular(", 0) != 0 || dist_expr.back() != ')')
      throw CliFailure{1, "--check-negligible-vs-sigma needs --dist regular(<expr>)"};
    const std::string inner = dist_expr.substr(8, dist_expr.size() - 9);
    Fn f;
    check(gfc_smoothfn_parse(inner.c_str(), f.out()));
    GenFn smooth;
    check(gfc_genfunction_sigma(f, -HUGE_VAL, HUGE_VAL, smooth.out()));
    gfc_verdict eq;
    char* eq_json = nullptr;
    check(gfc_genfunction_eq(emb, smooth, k_lo, k_hi, alpha_max, grid, settings, &eq, &eq_json));
    report["negligible_vs_sigma"] = Json::parse(take(eq_json));
    verdict = eq;
    std::cout << "iota(f) = sigma(f) in G^s: " << verdict_name(eq) << "\n";
  } else {
    std::cout << "moderate_on: " << verdict_name(verdict) << "\n";
  }

  if (!cfg.out_path.empty()) {
    write_file(cfg.out_path + ".csv", take(csv));
    report["sup_table_csv"] = cfg.out_path + ".csv";
  } else {
    report["sup_table"] = take(csv);
  }
  emit_report(cfg, report);
  return apply_expect(cfg, verdict);
}

/* ----- demos ----- */

int cmd_demo(const RunConfig& cfg, const std::string& name) {
  Grid grid;
  cfg.make_grid(grid);
  Settings settings;
  cfg.make_settings(settings);
  Schedule sched;
  check(gfc_schedule_make(cfg.q, sched.out()));

  Json report = report_shell(cfg);
  report["demo"] = name;
  gfc_verdict primary = GFC_INCONCLUSIVE;

  if (name == "hsquared") {
    Dist h;
    check(gfc_dist_parse("heaviside(0)", h.out()));
    GenFn ih;
    check(gfc_genfunction_iota(h, sched, -HUGE_VAL, HUGE_VAL, ih.out()));
    GenFn ih2;
    check(gfc_genfunction_mul(ih, ih, ih2.out()));

    gfc_verdict eq;
    char* eq_json = nullptr;
    check(gfc_genfunction_eq(ih2, ih, -1.0, 1.0, 0, grid, settings, &eq, &eq_json));
    gfc_verdict assoc;
    char* assoc_json = nullptr;
    check(gfc_genfunction_associates(ih2, h, nullptr, 0, grid, settings, &assoc, &assoc_json));

    report["eq_in_Gs"] = Json::parse(take(eq_json));
    report["associates_to_H"] = Json::parse(take(assoc_json));
    std::cout << "eq_in_Gs: " << verdict_name(eq) << "; associates_to H: " << verdict_name(assoc)
              << "\n";
    primary = assoc;
  } else if (name == "xdelta") {
    Dist delta;
    check(gfc_dist_parse("delta", delta.out()));
    GenFn idelta;
    check(gfc_genfunction_iota(delta, sched, -HUGE_VAL, HUGE_VAL, idelta.out()));
    Fn x;
    check(gfc_smoothfn_parse("x", x.out()));
    GenFn sx;
    check(gfc_genfunction_sigma(x, -HUGE_VAL, HUGE_VAL, sx.out()));
    GenFn xdelta;
    check(gfc_genfunction_mul(sx, idelta, xdelta.out()));
    Dist zero;
    check(gfc_dist_parse("zero", zero.out()));
    gfc_verdict assoc;
    char* assoc_json = nullptr;
    check(gfc_genfunction_associates(xdelta, zero, nullptr, 0, grid, settings, &assoc,
                                     &assoc_json));
    report["associates_to_zero"] = Json::parse(take(assoc_json));
    std::cout << "x*iota(delta) associates to 0: " << verdict_name(assoc) << "\n";
    primary = assoc;
  } else if (name == "deltasquared") {
    Dist delta;
    check(gfc_dist_parse("delta", delta.out()));
    GenFn idelta;
    check(gfc_genfunction_iota(delta, sched, -HUGE_VAL, HUGE_VAL, idelta.out()));
    GenFn d2;
    check(gfc_genfunction_mul(idelta, idelta, d2.out()));
    Json per;
    gfc_verdict worst = GFC_NO;
    for (const char* w : {"delta", "heaviside(0)", "zero"}) {
      Dist target;
      check(gfc_dist_parse(w, target.out()));
      gfc_verdict assoc;
      char* assoc_json = nullptr;
      check(gfc_genfunction_associates(d2, target, nullptr, 0, grid, settings, &assoc,
                                       &assoc_json));
      per[w] = Json::parse(take(assoc_json));
      if (assoc != GFC_NO) worst = assoc;
      std::cout << "iota(delta)^2 associates to " << w << ": " << verdict_name(assoc) << "\n";
    }
    report["associations"] = std::move(per);
    primary = worst == GFC_NO ? GFC_NO : GFC_INCONCLUSIVE;
  } else if (name == "heaviside-at-0") {
    Dist h;
    check(gfc_dist_parse("heaviside(0)", h.out()));
    GenFn ih;
    check(gfc_genfunction_iota(h, sched, -HUGE_VAL, HUGE_VAL, ih.out()));
    Net values;
    check(gfc_genfunction_value_net(ih, 0.0, values.out()));
    char* csv = nullptr;
    check(gfc_net_samples_csv(values, grid, &csv));
    report["value_at_0_csv"] = take(csv);
    size_t n = 0;
    check(gfc_grid_size(grid, &n));
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double eps = 0.0, v = 0.0;
      check(gfc_grid_value(grid, i, &eps));
      check(gfc_net_eval(values, eps, &v));
      worst = std::max(worst, std::abs(v - 0.5));
    }
    report["max_deviation_from_half"] = worst;
    std::cout << "iota(H)(0) = 1/2 per eps, max deviation " << worst << "\n";
    primary = worst < 1e-8 ? GFC_YES : GFC_NO;
  } else if (name == "delta-at-0") {
    Dist delta;
    check(gfc_dist_parse("delta", delta.out()));
    GenFn idelta;
    check(gfc_genfunction_iota(delta, sched, -HUGE_VAL, HUGE_VAL, idelta.out()));
    Net values;
    check(gfc_genfunction_value_net(idelta, 0.0, values.out()));
    double slope = 0.0, r2 = 0.0;
    char* order_json = nullptr;
    check(gfc_net_order(values, grid, settings, &slope, &r2, &order_json));
    char* csv = nullptr;
    check(gfc_net_samples_csv(values, grid, &csv));
    report["order"] = Json::parse(take(order_json));
    report["samples_csv"] = take(csv);
    std::cout << "order of iota(delta)(0): slope " << slope << " (r2 " << r2 << ")\n";
    primary = std::abs(slope + 1.0) < 0.05 ? GFC_YES : GFC_NO;
  } else {
    std::cerr << "unknown demo '" << name
              << "'; available: hsquared, xdelta, deltasquared, heaviside-at-0, delta-at-0\n";
    return 1;
  }

  emit_report(cfg, report);
  return apply_expect(cfg, primary);
}

/* ----- gnum ----- */

int cmd_gnum(const RunConfig& cfg, const std::string& query,
             const std::vector<std::string>& exprs) {
  Grid grid;
  cfg.make_grid(grid);
  Settings settings;
  cfg.make_settings(settings);

  auto parse_arg = [&](size_t i, Net& n) {
    if (i >= exprs.size()) throw CliFailure{1, "missing net expression for '" + query + "'"};
    check(gfc_net_parse(exprs[i].c_str(), n.out()));
  };

  Json report = report_shell(cfg);
  report["query"] = query;
  report["exprs"] = exprs;
  gfc_verdict verdict = GFC_INCONCLUSIVE;

  if (query == "leq" || query == "eq" || query == "approx" || query == "lt") {
    Net a, b;
    parse_arg(0, a);
    parse_arg(1, b);
    if (query == "leq") check(gfc_net_leq(a, b, grid, settings, &verdict));
    if (query == "eq") check(gfc_net_eq(a, b, grid, settings, &verdict));
    if (query == "approx") check(gfc_net_approx(a, b, grid, settings, &verdict));
    if (query == "lt") check(gfc_net_strict_lt(a, b, grid, settings, &verdict));
  } else if (query == "invertible" || query == "infinitesimal") {
    Net a;
    parse_arg(0, a);
    if (query == "invertible") check(gfc_net_invertible(a, grid, settings, &verdict));
    if (query == "infinitesimal") check(gfc_net_infinitesimal(a, grid, settings, &verdict));
  } else if (query == "ball") {
    Net center, rho, y;
    parse_arg(0, center);
    parse_arg(1, rho);
    parse_arg(2, y);
    check(gfc_net_ball(center, rho, y, grid, settings, &verdict));
  } else if (query == "inf" || query == "sup") {
    Net a, b, combined;
    parse_arg(0, a);
    parse_arg(1, b);
    if (query == "inf") check(gfc_net_inf(a, b, combined.out()));
    if (query == "sup") check(gfc_net_sup(a, b, combined.out()));
    char* csv = nullptr;
    check(gfc_net_samples_csv(combined, grid, &csv));
    const std::string table = take(csv);
    report["samples_csv"] = table;
    std::cout << table;
    emit_report(cfg, report);
    return 0;
  } else if (query == "order") {
    Net a;
    parse_arg(0, a);
    double slope = 0.0, r2 = 0.0;
    char* order_json = nullptr;
    check(gfc_net_order(a, grid, settings, &slope, &r2, &order_json));
    char* csv = nullptr;
    check(gfc_net_samples_csv(a, grid, &csv));
    report["order"] = Json::parse(take(order_json));
    report["samples_csv"] = take(csv);
    std::cout << "slope " << slope << " (r2 " << r2 << ")\n";
    emit_report(cfg, report);
    return 0;
  } else {
    throw CliFailure{
        1, "unknown gnum query '" + query +
               "'; available: leq, eq, lt, approx, invertible, infinitesimal, ball, inf, sup, order"};
  }

  report["verdict"] = verdict_name(verdict);
  std::cout << verdict_name(verdict) << "\n";
  emit_report(cfg, report);
  return apply_expect(cfg, verdict);
}

/* ----- plotcheck ----- */

int cmd_plotcheck(const RunConfig& cfg, const std::string& kernel, const std::string& u_spec,
                  const std::string& omega_spec, const std::string& k_spec) {
  auto parse_pair = [](const std::string& s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw CliFailure{1, std::string(what) + " expects lo,hi"};
    return std::pair<double, double>{std::stod(s.substr(0, comma)),
                                     std::stod(s.substr(comma + 1))};
  };
  const auto [u_lo, u_hi] = parse_pair(u_spec, "--U");
  double o_lo = -HUGE_VAL, o_hi = HUGE_VAL;
  if (!omega_spec.empty()) std::tie(o_lo, o_hi) = parse_pair(omega_spec, "--omega");

  Family fam;
  check(gfc_plotfamily_make(kernel.c_str(), u_lo, u_hi, o_lo, o_hi, fam.out()));

  gfc_plot_class cls;
  char* cls_json = nullptr;
  check(gfc_plot_classify(fam, &cls, &cls_json));

  Json report = report_shell(cfg);
  report["kernel"] = kernel;
  report["U"] = {u_lo, u_hi};
  report["classification"] = Json::parse(take(cls_json));

  const char* cls_name = cls == GFC_PLOT_OF_D          ? "PlotOfD"
                         : cls == GFC_PLOT_POINTWISE_ONLY ? "PointwiseOnly"
                                                          : "NotPointwise";
  std::cout << cls_name << "\n";

  gfc_verdict verdict = cls == GFC_PLOT_OF_D ? GFC_YES : GFC_NO;
  if (!k_spec.empty()) {
    const auto [k_lo, k_hi] = parse_pair(k_spec, "--K");
    check(gfc_plot_check_k(fam, k_lo, k_hi, &verdict));
    report["in_D_K"] = verdict_name(verdict);
    std::cout << "supports within K: " << verdict_name(verdict) << "\n";
  }
  emit_report(cfg, report);
  return apply_expect(cfg, verdict);
}

/* ----- full ----- */

int cmd_full(const RunConfig& cfg, const std::string& embed_expr, const std::string& diff_sigma,
             bool moderate, bool negligible, int n_probe, int m_target, const std::string& k_spec,
             int alpha_max, int panel_size) {
  if (moderate == negligible)
    throw CliFailure{1, "choose exactly one of --moderate / --negligible"};
  double k_lo = -1.0, k_hi = 1.0;
  if (!k_spec.empty()) {
    const auto comma = k_spec.find(',');
    if (comma == std::string::npos) throw CliFailure{1, "--K expects lo,hi"};
    k_lo = std::stod(k_spec.substr(0, comma));
    k_hi = std::stod(k_spec.substr(comma + 1));
  }

  Grid grid;
  cfg.make_grid(grid);
  Settings settings;
  cfg.make_settings(settings);

  FullRep rep;
  std::string what;
  if (!embed_expr.empty()) {
    Dist dist;
    check(gfc_dist_parse(embed_expr.c_str(), dist.out()));
    check(gfc_fullrep_iota(dist, -HUGE_VAL, HUGE_VAL, rep.out()));
    what = "iota_full(" + embed_expr + ")";
  } else if (!diff_sigma.empty()) {
    Fn f;
    check(gfc_smoothfn_parse(diff_sigma.c_str(), f.out()));
    Dist reg;
    check(gfc_dist_parse(("regular(" + diff_sigma + ")").c_str(), reg.out()));
    FullRep a, b;
    check(gfc_fullrep_iota(reg, -HUGE_VAL, HUGE_VAL, a.out()));
    check(gfc_fullrep_sigma(f, -HUGE_VAL, HUGE_VAL, b.out()));
    check(gfc_fullrep_sub(a, b, rep.out()));
    what = "iota_full(regular(" + diff_sigma + ")) - sigma_full(" + diff_sigma + ")";
  } else {
    throw CliFailure{1, "one of --embed <dist> / --diff-sigma <expr> is required"};
  }

  gfc_verdict verdict;
  int level = 0;
  char* report_json = nullptr;
  if (moderate) {
    check(gfc_fullrep_moderate(rep, k_lo, k_hi, alpha_max, n_probe, panel_size, cfg.seed, grid,
                               settings, &verdict, &level, &report_json));
  } else {
    check(gfc_fullrep_negligible(rep, k_lo, k_hi, alpha_max, m_target, 8, panel_size, cfg.seed,
                                 grid, settings, &verdict, &level, &report_json));
  }

  Json report = report_shell(cfg);
  report["rep"] = what;
  report["mode"] = moderate ? "moderate" : "negligible";
  report["K"] = {k_lo, k_hi};
  report["result"] = Json::parse(take(report_json));
  emit_report(cfg, report);

  std::cout << (moderate ? "full_moderate: " : "full_negligible: ") << verdict_name(verdict)
            << " (level " << level << ")\n";
  return apply_expect(cfg, verdict);
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) g_argv.emplace_back(argv[i]);

  CLI::App app{"gfcalc: computable Colombeau generalized functions"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto* mollifier = app.add_subcommand("mollifier", "build a mollifier schedule and verify it");
  cfg.add_flags(mollifier);

  auto* embed = app.add_subcommand("embed", "embed a distribution and scan sup-nets");
  std::string dist_expr = "delta";
  std::string embed_k = "-1,1";
  int alpha_max = 2;
  bool check_vs_sigma = false;
  embed->add_option("--dist", dist_expr, "distribution expression")->required();
  embed->add_option("--K", embed_k, "compact set lo,hi");
  embed->add_option("--alpha-max", alpha_max, "derivative orders to scan");
  embed->add_flag("--check-negligible-vs-sigma", check_vs_sigma,
                  "verify iota(f) = sigma(f) for regular distributions");
  cfg.add_flags(embed);

  auto* demo = app.add_subcommand("demo", "canonical computations");
  std::string demo_name;
  demo->add_option("name", demo_name, "one of hsquared, xdelta, deltasquared, heaviside-at-0, delta-at-0")
      ->required();
  cfg.add_flags(demo);

  auto* gnum = app.add_subcommand("gnum", "generalized-number queries over net expressions");
  std::string gnum_query;
  std::vector<std::string> gnum_exprs;
  gnum->add_option("query", gnum_query, "leq|eq|lt|approx|invertible|infinitesimal|ball|inf|sup|order")
      ->required();
  gnum->add_option("exprs", gnum_exprs, "net expressions in eps");
  cfg.add_flags(gnum);

  auto* plotcheck = app.add_subcommand("plotcheck", "classify a kernel family");
  std::string kernel, u_spec, omega_spec, k_spec;
  plotcheck->add_option("--kernel", kernel, "kernel expression in u and x")->required();
  plotcheck->add_option("--U", u_spec, "parameter interval lo,hi")->required();
  plotcheck->add_option("--omega", omega_spec, "target interval lo,hi (default all of R)");
  plotcheck->add_option("--K", k_spec, "check supports against this compact set");
  cfg.add_flags(plotcheck);

  auto* full = app.add_subcommand("full", "full-algebra panel checks");
  std::string full_embed, full_diff;
  bool full_moderate_flag = false, full_negligible_flag = false;
  int n_probe = 1, m_target = 3, full_alpha = 0, panel_size = 5;
  std::string full_k = "-1,1";
  full->add_option("--embed", full_embed, "distribution to embed intrinsically");
  full->add_option("--diff-sigma", full_diff, "check iota - sigma of this smooth expression");
  full->add_flag("--moderate", full_moderate_flag, "run the moderateness check");
  full->add_flag("--negligible", full_negligible_flag, "run the negligibility check");
  full->add_option("--N", n_probe, "probe level for moderateness");
  full->add_option("--m", m_target, "target order for negligibility");
  full->add_option("--K", full_k, "compact set lo,hi");
  full->add_option("--alpha-max", full_alpha, "derivative orders");
  full->add_option("--panel-size", panel_size, "test functions per panel");
  cfg.add_flags(full);

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.parse_grid();
    if (mollifier->parsed()) return cmd_mollifier(cfg);
    if (embed->parsed()) return cmd_embed(cfg, dist_expr, embed_k, alpha_max, check_vs_sigma);
    if (demo->parsed()) return cmd_demo(cfg, demo_name);
    if (gnum->parsed()) return cmd_gnum(cfg, gnum_query, gnum_exprs);
    if (plotcheck->parsed()) return cmd_plotcheck(cfg, kernel, u_spec, omega_spec, k_spec);
    if (full->parsed())
      return cmd_full(cfg, full_embed, full_diff, full_moderate_flag, full_negligible_flag,
                      n_probe, m_target, full_k, full_alpha, panel_size);
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
