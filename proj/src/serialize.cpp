#include "gfcalc/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "gfcalc/smoothfn_node.hpp"

namespace gfcalc {

namespace {

const char* kind_tag(NodeKind k) {
  switch (k) {
    case NodeKind::Const: return "const";
    case NodeKind::Id: return "x";
    case NodeKind::VarU: return "u";
    case NodeKind::Affine: return "affine";
    case NodeKind::Sum: return "sum";
    case NodeKind::Prod: return "prod";
    case NodeKind::IntPow: return "intpow";
    case NodeKind::Sin: return "sin";
    case NodeKind::Cos: return "cos";
    case NodeKind::Exp: return "exp";
    case NodeKind::BumpDeriv: return "bump_deriv";
    case NodeKind::Antideriv: return "antideriv";
    case NodeKind::Poly: return "poly";
    case NodeKind::Conv: return "conv";
    case NodeKind::Compose: return "compose";
  }
  return "?";
}

Json support_to_json(const Support& s) {
  Json j;
  if (s.is_empty()) {
    j["kind"] = "empty";
  } else if (s.is_interval()) {
    j["kind"] = "interval";
    j["lo"] = s.lo;
    j["hi"] = s.hi;
  } else {
    j["kind"] = "all";
  }
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Json smoothfn_to_json(const SmoothFn& f) {
  const auto& n = *f.node();
  Json j;
  j["node"] = kind_tag(n.kind);
  switch (n.kind) {
    case NodeKind::Const:
      j["value"] = n.a;
      break;
    case NodeKind::Affine:
      j["a"] = n.a;
      j["b"] = n.b;
      break;
    case NodeKind::IntPow:
      j["k"] = n.ipar;
      break;
    case NodeKind::BumpDeriv:
      j["m"] = n.ipar;
      break;
    case NodeKind::Poly:
      j["coeffs"] = n.coeffs;
      break;
    case NodeKind::Conv: {
      const auto* src = dynamic_cast<const DistConvSource*>(n.source.get());
      if (!src)
        throw Error(ErrorKind::Argument, "only distribution-backed conv nodes serialize");
      j["dist"] = distribution_to_json(src->distribution());
      j["deriv_order"] = n.ipar;
      break;
    }
    default:
      break;
  }
  if (!n.kids.empty()) {
    Json kids = Json::array();
    for (const auto& k : n.kids) kids.push_back(smoothfn_to_json(k));
    j["kids"] = std::move(kids);
  }
  j["support"] = support_to_json(f.support());
  return j;
}

SmoothFn smoothfn_from_json(const Json& j) {
  const std::string tag = j.at("node").get<std::string>();
  std::vector<SmoothFn> kids;
  if (j.contains("kids")) {
    for (const auto& kj : j.at("kids")) kids.push_back(smoothfn_from_json(kj));
  }
  auto kid = [&](std::size_t i) -> SmoothFn {
    if (i >= kids.size()) throw Error(ErrorKind::Parse, "missing child in expression JSON");
    return kids[i];
  };

  SmoothFn f;
  if (tag == "const") {
    f = constant(j.at("value").get<double>());
  } else if (tag == "x") {
    f = identity();
  } else if (tag == "u") {
    f = var_u();
  } else if (tag == "affine") {
    f = affine(j.at("a").get<double>(), j.at("b").get<double>());
  } else if (tag == "sum") {
    f = sum(kids);
  } else if (tag == "prod") {
    f = prod(kids);
  } else if (tag == "intpow") {
    f = int_pow(j.at("k").get<int>(), kid(0));
  } else if (tag == "sin") {
    f = sin_of(kid(0));
  } else if (tag == "cos") {
    f = cos_of(kid(0));
  } else if (tag == "exp") {
    f = exp_of(kid(0));
  } else if (tag == "bump_deriv") {
    f = bump_deriv(j.at("m").get<int>(), kid(0));
  } else if (tag == "antideriv") {
    f = antideriv(kid(0));
  } else if (tag == "poly") {
    f = polynomial(j.at("coeffs").get<std::vector<double>>(), kid(0));
  } else if (tag == "conv") {
    f = conv(std::make_shared<DistConvSource>(distribution_from_json(j.at("dist"))), kid(0),
             j.value("deriv_order", 0));
  } else if (tag == "compose") {
    f = compose(kid(0), kid(1));
  } else {
    throw Error(ErrorKind::Parse, "unknown expression node '" + tag + "'");
  }

  // Validate recorded support metadata against the rebuilt tree.
  if (j.contains("support")) {
    const Json& sj = j.at("support");
    const Support s = f.support();
    const std::string kind = sj.at("kind").get<std::string>();
    const bool match = (kind == "empty" && s.is_empty()) || (kind == "all" && s.is_all()) ||
                       (kind == "interval" && s.is_interval() &&
                        std::abs(sj.at("lo").get<double>() - s.lo) <= 1e-12 &&
                        std::abs(sj.at("hi").get<double>() - s.hi) <= 1e-12);
    if (!match) throw Error(ErrorKind::Parse, "support metadata does not match the rebuilt tree");
  }
  return f;
}

Json distribution_to_json(const Distribution& u) {
  Json terms = Json::array();
  for (const auto& t : u.terms()) {
    Json tj;
    tj["coeff"] = t.coeff;
    if (std::holds_alternative<DeltaDerivAtom>(t.atom)) {
      const auto& d = std::get<DeltaDerivAtom>(t.atom);
      tj["atom"] = "delta";
      tj["k"] = d.k;
      tj["x0"] = d.x0;
    } else if (std::holds_alternative<HeavisideAtom>(t.atom)) {
      tj["atom"] = "heaviside";
      tj["x0"] = std::get<HeavisideAtom>(t.atom).x0;
    } else if (std::holds_alternative<RegularAtom>(t.atom)) {
      tj["atom"] = "regular";
      tj["density"] = smoothfn_to_json(std::get<RegularAtom>(t.atom).density);
    } else {
      tj["atom"] = "pv";
    }
    terms.push_back(std::move(tj));
  }
  Json j;
  j["terms"] = std::move(terms);
  return j;
}

Distribution distribution_from_json(const Json& j) {
  std::vector<DistTerm> terms;
  for (const auto& tj : j.at("terms")) {
    DistTerm t;
    t.coeff = tj.at("coeff").get<double>();
    const std::string atom = tj.at("atom").get<std::string>();
    if (atom == "delta") {
      t.atom = DeltaDerivAtom{tj.at("k").get<int>(), tj.at("x0").get<double>()};
    } else if (atom == "heaviside") {
      t.atom = HeavisideAtom{tj.at("x0").get<double>()};
    } else if (atom == "regular") {
      t.atom = RegularAtom{smoothfn_from_json(tj.at("density"))};
    } else if (atom == "pv") {
      t.atom = PrincipalValueAtom{};
    } else {
      throw Error(ErrorKind::Parse, "unknown distribution atom '" + atom + "'");
    }
    terms.push_back(std::move(t));
  }
  return Distribution(std::move(terms));
}

Json mollifier_to_json(const Mollifier& m) {
  Json j;
  j["q"] = m.q;
  j["coefficients"] = m.poly_coeffs;
  j["l1_mass"] = m.l1_mass;
  return j;
}

Json schedule_to_json(const MollifierNet& net) {
  Json j;
  j["q_max"] = static_cast<int>(net.stages.size()) - 1;
  j["thresholds"] = net.thresholds;
  Json stages = Json::array();
  for (const auto& st : net.stages) stages.push_back(mollifier_to_json(st));
  j["stages"] = std::move(stages);
  return j;
}

MollifierNet schedule_from_json(const Json& j) {
  return make_schedule(j.at("q_max").get<int>(),
                       j.at("thresholds").get<std::vector<double>>());
}

Json panel_to_json(const std::vector<TestFnA>& panel, std::uint64_t seed) {
  Json j;
  j["q"] = panel.empty() ? 0 : panel.front().q;
  j["seed"] = seed;
  j["size"] = panel.size();
  Json members = Json::array();
  for (const auto& m : panel) members.push_back(m.poly_coeffs);
  j["members"] = std::move(members);
  return j;
}

std::vector<TestFnA> panel_from_json(const Json& j) {
  std::vector<TestFnA> panel;
  const int q = j.at("q").get<int>();
  for (const auto& mj : j.at("members")) {
    TestFnA m;
    m.q = q;
    m.poly_coeffs = mj.get<std::vector<double>>();
    m.phi = prod({bump(), polynomial(m.poly_coeffs, identity())});
    panel.push_back(std::move(m));
  }
  return panel;
}

Json order_report_to_json(const OrderReport& rep) {
  Json j;
  if (rep.all_zero) {
    j["slope"] = "inf";
  } else {
    j["slope"] = rep.slope;
  }
  j["intercept"] = rep.all_zero ? Json("-inf") : Json(rep.intercept);
  j["r2"] = rep.r2;
  j["window"] = rep.window;
  j["zeros_dropped"] = rep.zeros_dropped;
  return j;
}

Json verdict_report_to_json(const VerdictReport& rep) {
  Json j;
  j["verdict"] = to_string(rep.verdict);
  Json per_alpha = Json::array();
  for (const auto& av : rep.per_alpha) {
    Json aj;
    aj["alpha"] = av.alpha;
    aj["order"] = order_report_to_json(av.order);
    aj["verdict"] = to_string(av.verdict);
    per_alpha.push_back(std::move(aj));
  }
  j["per_alpha"] = std::move(per_alpha);
  return j;
}

std::string order_samples_csv(const std::vector<LogSample>& samples) {
  std::string out = "eps,value_sign,log_abs\n";
  for (const auto& s : samples) {
    out += format_double(s.eps);
    out += ',';
    out += std::to_string(s.sign);
    out += ',';
    out += s.sign == 0 ? "-inf" : format_double(s.log_abs);
    out += '\n';
  }
  return out;
}

std::string sup_table_csv(const std::vector<std::pair<int, std::vector<LogSample>>>& per_alpha) {
  std::string out = "eps,log_eps,alpha,sup,log_sup\n";
  for (const auto& [alpha, samples] : per_alpha) {
    for (const auto& s : samples) {
      out += format_double(s.eps);
      out += ',';
      out += format_double(s.log_eps);
      out += ',';
      out += std::to_string(alpha);
      out += ',';
      out += s.sign == 0 ? "0" : format_double(std::exp(s.log_abs));
      out += ',';
      out += s.sign == 0 ? "-inf" : format_double(s.log_abs);
      out += '\n';
    }
  }
  return out;
}

}  // namespace gfcalc
