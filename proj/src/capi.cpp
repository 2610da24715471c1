#include "gfcalc.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "gfcalc/asymptotics.hpp"
#include "gfcalc/distributions.hpp"
#include "gfcalc/exprparse.hpp"
#include "gfcalc/full_alg.hpp"
#include "gfcalc/gnum.hpp"
#include "gfcalc/mollifier.hpp"
#include "gfcalc/netexpr.hpp"
#include "gfcalc/plots.hpp"
#include "gfcalc/serialize.hpp"
#include "gfcalc/smoothfn.hpp"
#include "gfcalc/special_alg.hpp"

using namespace gfcalc;

struct gfc_grid {
  EpsGrid grid;
};
struct gfc_settings {
  ClassifySettings s;
};
struct gfc_net {
  GenNumber n;
};
struct gfc_smoothfn {
  SmoothFn f;
};
struct gfc_dist {
  Distribution d;
};
struct gfc_mollifier {
  Mollifier m;
};
struct gfc_schedule {
  MollifierNet net;
};
struct gfc_genfunction {
  GenFunction u;
};
struct gfc_genpoint {
  GenPoint p;
};
struct gfc_fullrep {
  FullRep r;
};
struct gfc_panel {
  std::vector<TestFnA> members;
  uint64_t seed = 0;
};
struct gfc_plotfamily {
  PlotFamily fam;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
gfc_status guard(Fn&& fn) noexcept {
  try {
    fn();
    return GFC_OK;
  } catch (const ParseError& e) {
    set_error(e.what());
    return GFC_ERR_PARSE;
  } catch (const QuadratureError& e) {
    set_error(e.what());
    return GFC_ERR_NUMERIC;
  } catch (const Error& e) {
    set_error(e.what());
    switch (e.kind()) {
      case ErrorKind::Parse: return GFC_ERR_PARSE;
      case ErrorKind::Numeric: return GFC_ERR_NUMERIC;
      case ErrorKind::Domain: return GFC_ERR_DOMAIN;
      default: return GFC_ERR_ARGUMENT;
    }
  } catch (const std::exception& e) {
    set_error(e.what());
    return GFC_ERR_ARGUMENT;
  } catch (...) {
    set_error("unknown error");
    return GFC_ERR_ARGUMENT;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::Argument, what);
}

OpenInterval make_omega(double lo, double hi) { return OpenInterval(lo, hi); }

ClassifySettings settings_of(const gfc_settings* s) { return s ? s->s : ClassifySettings{}; }

gfc_verdict to_c(Verdict v) {
  switch (v) {
    case Verdict::Yes: return GFC_YES;
    case Verdict::No: return GFC_NO;
    default: return GFC_INCONCLUSIVE;
  }
}

}  // namespace

extern "C" {

const char* gfc_version(void) { return "0.1.0"; }

const char* gfc_last_error(void) { return g_last_error.c_str(); }

void gfc_string_free(char* s) { std::free(s); }

/* --- grids --- */

gfc_status gfc_grid_default(int k_min, int k_max, gfc_grid** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = new gfc_grid{default_grid(k_min, k_max)};
  });
}

gfc_status gfc_grid_size(const gfc_grid* g, size_t* out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = g->grid.size();
  });
}

gfc_status gfc_grid_value(const gfc_grid* g, size_t index, double* out) {
  return guard([&] {
    require(g && out, "null argument");
    require(index < g->grid.size(), "grid index out of range");
    *out = g->grid[index];
  });
}

void gfc_grid_free(gfc_grid* g) { delete g; }

/* --- settings --- */

gfc_status gfc_settings_create(gfc_settings** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = new gfc_settings{};
  });
}

gfc_status gfc_settings_set(gfc_settings* s, const char* key, double value) {
  return guard([&] {
    require(s && key, "null argument");
    const std::string k = key;
    if (k == "window") {
      s->s.window = static_cast<int>(value);
    } else if (k == "r2_min") {
      s->s.r2_min = value;
    } else if (k == "zero_floor") {
      s->s.zero_floor = value;
    } else if (k == "n_cap") {
      s->s.n_cap = static_cast<int>(value);
    } else if (k == "m_max") {
      s->s.m_max = static_cast<int>(value);
    } else if (k == "m_cap") {
      s->s.m_cap = static_cast<int>(value);
    } else if (k == "sup_points") {
      s->s.sup_points = static_cast<int>(value);
    } else if (k == "quad_tol") {
      s->s.quad_tol = value;
    } else {
      throw Error(ErrorKind::Argument, "unknown settings key '" + k + "'");
    }
  });
}

void gfc_settings_free(gfc_settings* s) { delete s; }

/* --- nets --- */

gfc_status gfc_net_parse(const char* expr, gfc_net** out) {
  return guard([&] {
    require(expr && out, "null argument");
    *out = new gfc_net{GenNumber(parse_net(expr))};
  });
}

gfc_status gfc_net_constant(double value, gfc_net** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = new gfc_net{GenNumber::constant(value)};
  });
}

gfc_status gfc_net_eval(const gfc_net* n, double eps, double* out) {
  return guard([&] {
    require(n && out, "null argument");
    *out = n->n.at(eps);
  });
}

#define GFC_NET_BINOP(name, expr_)                                    \
  gfc_status name(const gfc_net* a, const gfc_net* b, gfc_net** out) { \
    return guard([&] {                                                 \
      require(a && b && out, "null argument");                         \
      *out = new gfc_net{expr_};                                       \
    });                                                                \
  }

GFC_NET_BINOP(gfc_net_add, a->n + b->n)
GFC_NET_BINOP(gfc_net_sub, a->n - b->n)
GFC_NET_BINOP(gfc_net_mul, a->n * b->n)
GFC_NET_BINOP(gfc_net_inf, inf(a->n, b->n))
GFC_NET_BINOP(gfc_net_sup, sup(a->n, b->n))

#undef GFC_NET_BINOP

gfc_status gfc_net_neg(const gfc_net* a, gfc_net** out) {
  return guard([&] {
    require(a && out, "null argument");
    *out = new gfc_net{-a->n};
  });
}

gfc_status gfc_net_abs(const gfc_net* a, gfc_net** out) {
  return guard([&] {
    require(a && out, "null argument");
    *out = new gfc_net{abs(a->n)};
  });
}

void gfc_net_free(gfc_net* n) { delete n; }

gfc_status gfc_net_order(const gfc_net* n, const gfc_grid* grid, const gfc_settings* s,
                         double* slope, double* r2, char** report_json) {
  return guard([&] {
    require(n && grid, "null argument");
    const ClassifySettings cs = settings_of(s);
    const auto samples = n->n.samples(grid->grid);
    const OrderReport rep =
        estimate_order(samples, std::min<int>(cs.window, static_cast<int>(samples.size()) / 2));
    if (slope) *slope = rep.slope;
    if (r2) *r2 = rep.r2;
    if (report_json) *report_json = dup_string(order_report_to_json(rep).dump(2));
  });
}

gfc_status gfc_net_samples_csv(const gfc_net* n, const gfc_grid* grid, char** csv) {
  return guard([&] {
    require(n && grid && csv, "null argument");
    *csv = dup_string(order_samples_csv(n->n.samples(grid->grid)));
  });
}

#define GFC_NET_CLASSIFY2(name, call)                                                     \
  gfc_status name(const gfc_net* a, const gfc_net* b, const gfc_grid* grid,              \
                  const gfc_settings* s, gfc_verdict* out) {                              \
    return guard([&] {                                                                    \
      require(a && b && grid && out, "null argument");                                    \
      *out = to_c(call(a->n, b->n, grid->grid, settings_of(s)));                          \
    });                                                                                   \
  }

GFC_NET_CLASSIFY2(gfc_net_eq, eq_tilde)
GFC_NET_CLASSIFY2(gfc_net_leq, leq)
GFC_NET_CLASSIFY2(gfc_net_strict_lt, strict_lt)
GFC_NET_CLASSIFY2(gfc_net_approx, approx)

#undef GFC_NET_CLASSIFY2

gfc_status gfc_net_invertible(const gfc_net* a, const gfc_grid* grid, const gfc_settings* s,
                              gfc_verdict* out) {
  return guard([&] {
    require(a && grid && out, "null argument");
    *out = to_c(is_invertible(a->n, grid->grid, settings_of(s)));
  });
}

gfc_status gfc_net_infinitesimal(const gfc_net* a, const gfc_grid* grid, const gfc_settings* s,
                                 gfc_verdict* out) {
  return guard([&] {
    require(a && grid && out, "null argument");
    *out = to_c(is_infinitesimal(a->n, grid->grid, settings_of(s)));
  });
}

gfc_status gfc_net_ball(const gfc_net* center, const gfc_net* rho, const gfc_net* y,
                        const gfc_grid* grid, const gfc_settings* s, gfc_verdict* out) {
  return guard([&] {
    require(center && rho && y && grid && out, "null argument");
    *out = to_c(sharp_ball_contains(center->n, rho->n, y->n, grid->grid, settings_of(s)));
  });
}

/* --- smooth functions --- */

gfc_status gfc_smoothfn_parse(const char* expr, gfc_smoothfn** out) {
  return guard([&] {
    require(expr && out, "null argument");
    *out = new gfc_smoothfn{parse_smoothfn(expr)};
  });
}

gfc_status gfc_smoothfn_eval(const gfc_smoothfn* f, double x, double* out) {
  return guard([&] {
    require(f && out, "null argument");
    *out = f->f.eval(x);
  });
}

gfc_status gfc_smoothfn_deriv(const gfc_smoothfn* f, int k, gfc_smoothfn** out) {
  return guard([&] {
    require(f && out, "null argument");
    *out = new gfc_smoothfn{f->f.deriv(k)};
  });
}

gfc_status gfc_smoothfn_integrate(const gfc_smoothfn* f, double a, double b, double tol,
                                  double* out) {
  return guard([&] {
    require(f && out, "null argument");
    *out = integrate(f->f, a, b, tol);
  });
}

gfc_status gfc_smoothfn_sup_abs(const gfc_smoothfn* f, double k_lo, double k_hi, int n,
                                double* out) {
  return guard([&] {
    require(f && out, "null argument");
    *out = sup_abs_on(f->f, CompactSet(k_lo, k_hi), n);
  });
}

gfc_status gfc_smoothfn_support(const gfc_smoothfn* f, gfc_support_kind* kind, double* lo,
                                double* hi) {
  return guard([&] {
    require(f && kind, "null argument");
    const Support s = f->f.support();
    if (s.is_empty()) {
      *kind = GFC_SUPPORT_EMPTY;
    } else if (s.is_interval()) {
      *kind = GFC_SUPPORT_INTERVAL;
      if (lo) *lo = s.lo;
      if (hi) *hi = s.hi;
    } else {
      *kind = GFC_SUPPORT_ALL;
    }
  });
}

gfc_status gfc_smoothfn_scale(const gfc_smoothfn* f, double eps, gfc_smoothfn** out) {
  return guard([&] {
    require(f && out, "null argument");
    *out = new gfc_smoothfn{scale_S(eps, f->f)};
  });
}

gfc_status gfc_smoothfn_translate(const gfc_smoothfn* f, double x0, gfc_smoothfn** out) {
  return guard([&] {
    require(f && out, "null argument");
    *out = new gfc_smoothfn{translate_T(x0, f->f)};
  });
}

gfc_status gfc_smoothfn_moments(const gfc_smoothfn* f, int q, double* out_values) {
  return guard([&] {
    require(f && out_values, "null argument");
    const auto ms = moments(f->f, q);
    for (std::size_t i = 0; i < ms.size(); ++i) out_values[i] = ms[i];
  });
}

gfc_status gfc_smoothfn_to_json(const gfc_smoothfn* f, char** out) {
  return guard([&] {
    require(f && out, "null argument");
    *out = dup_string(smoothfn_to_json(f->f).dump(2));
  });
}

gfc_status gfc_smoothfn_from_json(const char* json, gfc_smoothfn** out) {
  return guard([&] {
    require(json && out, "null argument");
    *out = new gfc_smoothfn{smoothfn_from_json(Json::parse(json))};
  });
}

void gfc_smoothfn_free(gfc_smoothfn* f) { delete f; }

/* --- distributions --- */

gfc_status gfc_dist_parse(const char* expr, gfc_dist** out) {
  return guard([&] {
    require(expr && out, "null argument");
    *out = new gfc_dist{parse_distribution(expr)};
  });
}

gfc_status gfc_dist_pair(const gfc_dist* u, const gfc_smoothfn* phi, double tol, double* out) {
  return guard([&] {
    require(u && phi && out, "null argument");
    *out = pair_with(u->d, phi->f, tol);
  });
}

gfc_status gfc_dist_derivative(const gfc_dist* u, gfc_dist** out) {
  return guard([&] {
    require(u && out, "null argument");
    *out = new gfc_dist{D(u->d)};
  });
}

gfc_status gfc_dist_convolve(const gfc_dist* u, const gfc_smoothfn* rho, gfc_smoothfn** out) {
  return guard([&] {
    require(u && rho && out, "null argument");
    *out = new gfc_smoothfn{convolve_smooth(u->d, rho->f)};
  });
}

void gfc_dist_free(gfc_dist* u) { delete u; }

/* --- mollifiers --- */

gfc_status gfc_mollifier_make(int q, gfc_mollifier** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = new gfc_mollifier{make_moment_mollifier(q)};
  });
}

gfc_status gfc_mollifier_fn(const gfc_mollifier* m, gfc_smoothfn** out) {
  return guard([&] {
    require(m && out, "null argument");
    *out = new gfc_smoothfn{m->m.fn};
  });
}

gfc_status gfc_mollifier_l1_mass(const gfc_mollifier* m, double* out) {
  return guard([&] {
    require(m && out, "null argument");
    *out = m->m.l1_mass;
  });
}

gfc_status gfc_mollifier_to_json(const gfc_mollifier* m, char** out) {
  return guard([&] {
    require(m && out, "null argument");
    *out = dup_string(mollifier_to_json(m->m).dump(2));
  });
}

void gfc_mollifier_free(gfc_mollifier* m) { delete m; }

gfc_status gfc_schedule_make(int q_max, gfc_schedule** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = new gfc_schedule{make_schedule(q_max)};
  });
}

gfc_status gfc_schedule_make_custom(int q_max, const double* thresholds, size_t count,
                                    gfc_schedule** out) {
  return guard([&] {
    require(thresholds && out, "null argument");
    *out = new gfc_schedule{
        make_schedule(q_max, std::vector<double>(thresholds, thresholds + count))};
  });
}

gfc_status gfc_schedule_stage_at(const gfc_schedule* net, double eps, int* q_out,
                                 gfc_smoothfn** fn_out) {
  return guard([&] {
    require(net != nullptr, "null argument");
    const Mollifier& m = net->net.at(eps);
    if (q_out) *q_out = m.q;
    if (fn_out) *fn_out = new gfc_smoothfn{m.fn};
  });
}

gfc_status gfc_schedule_verify(const gfc_schedule* net, const gfc_grid* grid, double eta,
                               int* pass, char** report_json) {
  return guard([&] {
    require(net && grid, "null argument");
    const MollifierCheck check = verify_properties(net->net, grid->grid);
    const bool ok = check.support_ok && check.mass_ok && check.moments_ok && check.l1_within(eta);
    if (pass) *pass = ok ? 1 : 0;
    if (report_json) {
      Json j;
      j["support_ok"] = check.support_ok;
      j["mass_ok"] = check.mass_ok;
      j["moments_ok"] = check.moments_ok;
      j["stage_moment_worst"] = check.stage_moment_worst;
      Json traces = Json::array();
      for (const auto& t : check.sup_traces) {
        Json tj;
        tj["alpha"] = t.alpha;
        tj["order"] = order_report_to_json(t.order);
        traces.push_back(std::move(tj));
      }
      j["sup_traces"] = std::move(traces);
      j["l1_trajectory"] = check.l1_trajectory;
      j["l1_final"] = check.l1_final;
      j["eta"] = eta;
      j["l1_pass"] = check.l1_within(eta);
      *report_json = dup_string(j.dump(2));
    }
  });
}

gfc_status gfc_schedule_to_json(const gfc_schedule* net, char** out) {
  return guard([&] {
    require(net && out, "null argument");
    *out = dup_string(schedule_to_json(net->net).dump(2));
  });
}

gfc_status gfc_schedule_from_json(const char* json, gfc_schedule** out) {
  return guard([&] {
    require(json && out, "null argument");
    *out = new gfc_schedule{schedule_from_json(Json::parse(json))};
  });
}

void gfc_schedule_free(gfc_schedule* net) { delete net; }

/* --- special algebra --- */

gfc_status gfc_genfunction_sigma(const gfc_smoothfn* f, double omega_lo, double omega_hi,
                                 gfc_genfunction** out) {
  return guard([&] {
    require(f && out, "null argument");
    *out = new gfc_genfunction{sigma(f->f, make_omega(omega_lo, omega_hi))};
  });
}

gfc_status gfc_genfunction_iota(const gfc_dist* u, const gfc_schedule* psi, double omega_lo,
                                double omega_hi, gfc_genfunction** out) {
  return guard([&] {
    require(u && psi && out, "null argument");
    *out = new gfc_genfunction{iota(u->d, psi->net, make_omega(omega_lo, omega_hi))};
  });
}

#define GFC_GF_BINOP(name, op)                                                        \
  gfc_status name(const gfc_genfunction* u, const gfc_genfunction* v,                 \
                  gfc_genfunction** out) {                                            \
    return guard([&] {                                                                \
      require(u && v && out, "null argument");                                        \
      *out = new gfc_genfunction{u->u op v->u};                                       \
    });                                                                               \
  }

GFC_GF_BINOP(gfc_genfunction_add, +)
GFC_GF_BINOP(gfc_genfunction_sub, -)
GFC_GF_BINOP(gfc_genfunction_mul, *)

#undef GFC_GF_BINOP

gfc_status gfc_genfunction_partial(const gfc_genfunction* u, int k, gfc_genfunction** out) {
  return guard([&] {
    require(u && out, "null argument");
    *out = new gfc_genfunction{partial(u->u, k)};
  });
}

gfc_status gfc_genfunction_compose_smooth(const gfc_smoothfn* g, const gfc_genfunction* u,
                                          gfc_genfunction** out) {
  return guard([&] {
    require(g && u && out, "null argument");
    *out = new gfc_genfunction{smooth_compose(g->f, u->u)};
  });
}

gfc_status gfc_genfunction_rep(const gfc_genfunction* u, double eps, gfc_smoothfn** out) {
  return guard([&] {
    require(u && out, "null argument");
    *out = new gfc_smoothfn{u->u.rep(eps)};
  });
}

void gfc_genfunction_free(gfc_genfunction* u) { delete u; }

gfc_status gfc_genfunction_moderate(const gfc_genfunction* u, double k_lo, double k_hi,
                                    int alpha_max, const gfc_grid* grid, const gfc_settings* s,
                                    gfc_verdict* out, char** report_json) {
  return guard([&] {
    require(u && grid && out, "null argument");
    const VerdictReport rep =
        moderate_on(u->u, CompactSet(k_lo, k_hi), alpha_max, grid->grid, settings_of(s));
    *out = to_c(rep.verdict);
    if (report_json) *report_json = dup_string(verdict_report_to_json(rep).dump(2));
  });
}

gfc_status gfc_genfunction_negligible(const gfc_genfunction* u, double k_lo, double k_hi,
                                      int alpha_max, const gfc_grid* grid, const gfc_settings* s,
                                      gfc_verdict* out, char** report_json) {
  return guard([&] {
    require(u && grid && out, "null argument");
    const VerdictReport rep =
        negligible_on(u->u, CompactSet(k_lo, k_hi), alpha_max, grid->grid, settings_of(s));
    *out = to_c(rep.verdict);
    if (report_json) *report_json = dup_string(verdict_report_to_json(rep).dump(2));
  });
}

gfc_status gfc_genfunction_eq(const gfc_genfunction* u, const gfc_genfunction* v, double k_lo,
                              double k_hi, int alpha_max, const gfc_grid* grid,
                              const gfc_settings* s, gfc_verdict* out, char** report_json) {
  return guard([&] {
    require(u && v && grid && out, "null argument");
    const VerdictReport rep =
        eq_in_Gs(u->u, v->u, CompactSet(k_lo, k_hi), alpha_max, grid->grid, settings_of(s));
    *out = to_c(rep.verdict);
    if (report_json) *report_json = dup_string(verdict_report_to_json(rep).dump(2));
  });
}

gfc_status gfc_genfunction_sup_table(const gfc_genfunction* u, double k_lo, double k_hi,
                                     int alpha_max, const gfc_grid* grid, const gfc_settings* s,
                                     char** csv) {
  return guard([&] {
    require(u && grid && csv, "null argument");
    const ClassifySettings cs = settings_of(s);
    std::vector<std::pair<int, std::vector<LogSample>>> table;
    for (int alpha = 0; alpha <= alpha_max; ++alpha) {
      table.emplace_back(alpha,
                         sup_net(u->u, alpha, CompactSet(k_lo, k_hi), grid->grid, cs.sup_points));
    }
    *csv = dup_string(sup_table_csv(table));
  });
}

gfc_status gfc_genfunction_value_net(const gfc_genfunction* u, double x0, gfc_net** out) {
  return guard([&] {
    require(u && out, "null argument");
    const GenFunction fn = u->u;
    *out = new gfc_net{GenNumber([fn, x0](double e) { return fn.rep(e).eval(x0); })};
  });
}

gfc_status gfc_genpoint_make(const gfc_net* net, double k_lo, double k_hi, double omega_lo,
                             double omega_hi, const gfc_grid* grid, gfc_genpoint** out) {
  return guard([&] {
    require(net && grid && out, "null argument");
    *out = new gfc_genpoint{
        GenPoint(net->n.net(), CompactSet(k_lo, k_hi), make_omega(omega_lo, omega_hi), grid->grid)};
  });
}

void gfc_genpoint_free(gfc_genpoint* p) { delete p; }

gfc_status gfc_genfunction_eval_at(const gfc_genfunction* u, const gfc_genpoint* x,
                                   gfc_net** out) {
  return guard([&] {
    require(u && x && out, "null argument");
    *out = new gfc_net{eval_at(u->u, x->p)};
  });
}

gfc_status gfc_genfunction_cbounded(const gfc_genfunction* u, double k_lo, double k_hi,
                                    double omega2_lo, double omega2_hi, const gfc_grid* grid,
                                    const gfc_settings* s, gfc_verdict* out, double* witness_lo,
                                    double* witness_hi) {
  return guard([&] {
    require(u && grid && out, "null argument");
    const CBoundedReport rep = is_cbounded(u->u, CompactSet(k_lo, k_hi),
                                           make_omega(omega2_lo, omega2_hi), grid->grid,
                                           settings_of(s));
    *out = to_c(rep.verdict);
    if (rep.verdict == Verdict::Yes) {
      if (witness_lo) *witness_lo = rep.witness.lo;
      if (witness_hi) *witness_hi = rep.witness.hi;
    }
  });
}

gfc_status gfc_genfunction_compose_cbounded(const gfc_genfunction* v, const gfc_genfunction* u,
                                            double k_lo, double k_hi, const gfc_grid* grid,
                                            const gfc_settings* s, gfc_genfunction** out) {
  return guard([&] {
    require(v && u && grid && out, "null argument");
    *out = new gfc_genfunction{
        compose_cbounded(v->u, u->u, CompactSet(k_lo, k_hi), grid->grid, settings_of(s))};
  });
}

gfc_status gfc_genfunction_shadow_pairing(const gfc_genfunction* u, const gfc_smoothfn* phi,
                                          double tol, gfc_net** out) {
  return guard([&] {
    require(u && phi && out, "null argument");
    *out = new gfc_net{shadow_pairing(u->u, phi->f, tol)};
  });
}

gfc_status gfc_genfunction_associates(const gfc_genfunction* u, const gfc_dist* w,
                                      const gfc_smoothfn* const* panel, size_t panel_size,
                                      const gfc_grid* grid, const gfc_settings* s,
                                      gfc_verdict* out, char** report_json) {
  return guard([&] {
    require(u && w && grid && out, "null argument");
    std::vector<SmoothFn> fns;
    if (panel && panel_size > 0) {
      for (size_t i = 0; i < panel_size; ++i) {
        require(panel[i] != nullptr, "null panel member");
        fns.push_back(panel[i]->f);
      }
    } else {
      fns = default_association_panel();
    }
    const AssociationReport rep = associates_to(u->u, w->d, fns, grid->grid, settings_of(s));
    *out = to_c(rep.verdict);
    if (report_json) {
      Json j;
      j["verdict"] = to_string(rep.verdict);
      Json per = Json::array();
      for (const auto& o : rep.per_test_fn) per.push_back(order_report_to_json(o));
      j["per_test_fn"] = std::move(per);
      *report_json = dup_string(j.dump(2));
    }
  });
}

/* --- full algebra --- */

gfc_status gfc_fullrep_iota(const gfc_dist* u, double omega_lo, double omega_hi,
                            gfc_fullrep** out) {
  return guard([&] {
    require(u && out, "null argument");
    *out = new gfc_fullrep{iota_full(u->d, make_omega(omega_lo, omega_hi))};
  });
}

gfc_status gfc_fullrep_sigma(const gfc_smoothfn* f, double omega_lo, double omega_hi,
                             gfc_fullrep** out) {
  return guard([&] {
    require(f && out, "null argument");
    *out = new gfc_fullrep{sigma_full(f->f, make_omega(omega_lo, omega_hi))};
  });
}

gfc_status gfc_fullrep_sub(const gfc_fullrep* a, const gfc_fullrep* b, gfc_fullrep** out) {
  return guard([&] {
    require(a && b && out, "null argument");
    *out = new gfc_fullrep{a->r - b->r};
  });
}

gfc_status gfc_fullrep_eval(const gfc_fullrep* r, const gfc_smoothfn* phi, double x, double* out) {
  return guard([&] {
    require(r && phi && out, "null argument");
    *out = full_eval(r->r, phi->f, x);
  });
}

void gfc_fullrep_free(gfc_fullrep* r) { delete r; }

gfc_status gfc_omega_phi(const gfc_smoothfn* phi, double omega_lo, double omega_hi, int* present,
                         double* lo, double* hi) {
  return guard([&] {
    require(phi && present, "null argument");
    const MaybeInterval dom = omega_phi(phi->f, make_omega(omega_lo, omega_hi));
    *present = dom.present ? 1 : 0;
    if (dom.present) {
      if (lo) *lo = dom.lo;
      if (hi) *hi = dom.hi;
    }
  });
}

gfc_status gfc_in_uomega(const gfc_smoothfn* phi, double x, double omega_lo, double omega_hi,
                         int* out) {
  return guard([&] {
    require(phi && out, "null argument");
    *out = in_UOmega(phi->f, x, make_omega(omega_lo, omega_hi)) ? 1 : 0;
  });
}

gfc_status gfc_panel_make(int q, int size, uint64_t seed, gfc_panel** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    *out = new gfc_panel{make_panel(q, size, seed), seed};
  });
}

gfc_status gfc_panel_size(const gfc_panel* p, size_t* out) {
  return guard([&] {
    require(p && out, "null argument");
    *out = p->members.size();
  });
}

gfc_status gfc_panel_member(const gfc_panel* p, size_t index, gfc_smoothfn** out) {
  return guard([&] {
    require(p && out, "null argument");
    require(index < p->members.size(), "panel index out of range");
    *out = new gfc_smoothfn{p->members[index].phi};
  });
}

gfc_status gfc_panel_to_json(const gfc_panel* p, char** out) {
  return guard([&] {
    require(p && out, "null argument");
    *out = dup_string(panel_to_json(p->members, p->seed).dump(2));
  });
}

void gfc_panel_free(gfc_panel* p) { delete p; }

namespace {

Json full_report_json(const FullVerdictReport& rep) {
  Json j;
  j["verdict"] = to_string(rep.verdict);
  j["level"] = rep.level;
  j["grid_head_dropped"] = rep.grid_head_dropped;
  Json traces = Json::array();
  for (const auto& t : rep.traces) {
    Json tj;
    tj["member"] = t.member;
    tj["alpha"] = t.alpha;
    tj["order"] = order_report_to_json(t.order);
    traces.push_back(std::move(tj));
  }
  j["traces"] = std::move(traces);
  return j;
}

}  // namespace

gfc_status gfc_fullrep_moderate(const gfc_fullrep* r, double k_lo, double k_hi, int alpha_max,
                                int n_probe, int panel_size, uint64_t seed, const gfc_grid* grid,
                                const gfc_settings* s, gfc_verdict* out, int* level,
                                char** report_json) {
  return guard([&] {
    require(r && grid && out, "null argument");
    const FullVerdictReport rep = full_moderate(r->r, CompactSet(k_lo, k_hi), alpha_max, n_probe,
                                                panel_size, seed, grid->grid, settings_of(s));
    *out = to_c(rep.verdict);
    if (level) *level = rep.level;
    if (report_json) *report_json = dup_string(full_report_json(rep).dump(2));
  });
}

gfc_status gfc_fullrep_negligible(const gfc_fullrep* r, double k_lo, double k_hi, int alpha_max,
                                  int m, int q_max, int panel_size, uint64_t seed,
                                  const gfc_grid* grid, const gfc_settings* s, gfc_verdict* out,
                                  int* level, char** report_json) {
  return guard([&] {
    require(r && grid && out, "null argument");
    std::vector<int> schedule;
    for (int q = 1; q <= (q_max >= 1 ? q_max : 8); ++q) schedule.push_back(q);
    const FullVerdictReport rep =
        full_negligible(r->r, CompactSet(k_lo, k_hi), alpha_max, m, schedule, panel_size, seed,
                        grid->grid, settings_of(s));
    *out = to_c(rep.verdict);
    if (level) *level = rep.level;
    if (report_json) *report_json = dup_string(full_report_json(rep).dump(2));
  });
}

/* --- plots --- */

gfc_status gfc_plotfamily_make(const char* kernel_expr, double u_lo, double u_hi, double omega_lo,
                               double omega_hi, gfc_plotfamily** out) {
  return guard([&] {
    require(kernel_expr && out, "null argument");
    *out = new gfc_plotfamily{
        make_family(kernel_expr, OpenInterval(u_lo, u_hi), make_omega(omega_lo, omega_hi))};
  });
}

gfc_status gfc_plot_support_slice(const gfc_plotfamily* d, double u0, gfc_support_kind* kind,
                                  double* lo, double* hi) {
  return guard([&] {
    require(d && kind, "null argument");
    const SliceSupport s = scan_slice_support(d->fam, u0);
    if (s.kind == SliceSupport::Kind::Overflow)
      throw Error(ErrorKind::Numeric, "support overflows scan window");
    if (s.kind == SliceSupport::Kind::Empty) {
      *kind = GFC_SUPPORT_EMPTY;
    } else {
      *kind = GFC_SUPPORT_INTERVAL;
      if (lo) *lo = s.lo;
      if (hi) *hi = s.hi;
    }
  });
}

gfc_status gfc_plot_pointwise(const gfc_plotfamily* d, int samples, gfc_verdict* out) {
  return guard([&] {
    require(d && out, "null argument");
    *out = to_c(pointwise_bounded(d->fam, samples > 0 ? samples : 33));
  });
}

gfc_status gfc_plot_locally_uniform(const gfc_plotfamily* d, double u0, int shrink_steps,
                                    gfc_verdict* out) {
  return guard([&] {
    require(d && out, "null argument");
    *out = to_c(locally_uniform_bounded(d->fam, u0, shrink_steps > 0 ? shrink_steps : 8));
  });
}

gfc_status gfc_plot_uniform(const gfc_plotfamily* d, gfc_verdict* out) {
  return guard([&] {
    require(d && out, "null argument");
    *out = to_c(uniform_bounded(d->fam));
  });
}

gfc_status gfc_plot_classify(const gfc_plotfamily* d, gfc_plot_class* out, char** report_json) {
  return guard([&] {
    require(d && out, "null argument");
    const PlotReport rep = plot_verdict(d->fam);
    switch (rep.cls) {
      case PlotClass::PlotOfD: *out = GFC_PLOT_OF_D; break;
      case PlotClass::PointwiseOnly: *out = GFC_PLOT_POINTWISE_ONLY; break;
      default: *out = GFC_PLOT_NOT_POINTWISE; break;
    }
    if (report_json) {
      Json j;
      j["class"] = to_string(rep.cls);
      j["pointwise"] = to_string(rep.pointwise);
      Json locals = Json::array();
      for (const auto& [u0, v] : rep.local_checks) {
        Json lj;
        lj["u0"] = u0;
        lj["verdict"] = to_string(v);
        locals.push_back(std::move(lj));
      }
      j["local_checks"] = std::move(locals);
      *report_json = dup_string(j.dump(2));
    }
  });
}

gfc_status gfc_plot_check_k(const gfc_plotfamily* d, double k_lo, double k_hi, gfc_verdict* out) {
  return guard([&] {
    require(d && out, "null argument");
    *out = to_c(plot_verdict_K(d->fam, CompactSet(k_lo, k_hi)));
  });
}

void gfc_plotfamily_free(gfc_plotfamily* d) { delete d; }

}  // extern "C"
