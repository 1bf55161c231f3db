#pragma once

// JSON wire formats: the distribution DAG (stable field names, documented in
// the README), convergence and tail reports, and the limit-experiment
// configuration consumed by the CLI.

#include "json.hpp"  // vendored nlohmann/json single header

#include "maxalg/distfn.hpp"
#include "maxalg/limit_lab.hpp"
#include "maxalg/tails.hpp"

namespace maxalg::json_io {

using json = nlohmann::json;

json to_json(const DistFn& f);
DistFn distfn_from_json(const json& j);

json to_json(const limit_lab::ConvergenceReport& r);
json to_json(const limit_lab::TheoremCheck& c);
json to_json(const limit_lab::CounterexampleReport& r);
json to_json(const tails::TailReport& r);

}  // namespace maxalg::json_io
