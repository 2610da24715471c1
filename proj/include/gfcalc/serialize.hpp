#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gfcalc/asymptotics.hpp"
#include "gfcalc/distributions.hpp"
#include "gfcalc/full_alg.hpp"
#include "gfcalc/mollifier.hpp"
#include "gfcalc/smoothfn.hpp"
#include "gfcalc/special_alg.hpp"

namespace gfcalc {

// Reports use insertion-ordered JSON so reruns are byte-identical.
using Json = nlohmann::ordered_json;

// Node-tagged expression trees; round-trip stable. The deserializer
// revalidates support metadata against the rebuilt tree.
Json smoothfn_to_json(const SmoothFn& f);
SmoothFn smoothfn_from_json(const Json& j);

Json distribution_to_json(const Distribution& u);
Distribution distribution_from_json(const Json& j);

// {q, coefficients of p, l1_mass}; schedules add thresholds.
Json mollifier_to_json(const Mollifier& m);
Json schedule_to_json(const MollifierNet& net);
MollifierNet schedule_from_json(const Json& j);

// Panel serialization: {q, seed, size, members: [coefficients]}.
Json panel_to_json(const std::vector<TestFnA>& panel, std::uint64_t seed);
std::vector<TestFnA> panel_from_json(const Json& j);

Json order_report_to_json(const OrderReport& rep);
Json verdict_report_to_json(const VerdictReport& rep);

// CSV row block for an order report: eps, value_sign, log_abs.
std::string order_samples_csv(const std::vector<LogSample>& samples);

// Fixed CLI sup-table columns: eps, log_eps, alpha, sup, log_sup.
std::string sup_table_csv(const std::vector<std::pair<int, std::vector<LogSample>>>& per_alpha);

}  // namespace gfcalc
