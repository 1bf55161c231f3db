#pragma once

// Named limit experiments runnable from the CLI. Each scenario wires a
// sequence constructor to its convolution(s) and candidate limit(s) and
// returns the report as JSON.

#include <optional>
#include <string>
#include <vector>

#include "maxalg/json_io.hpp"
#include "maxalg/limit_lab.hpp"

namespace maxalg::scenarios {

std::vector<std::string> names();

struct Overrides {
  std::optional<limit_lab::KnSchedule> schedule;
  std::optional<double> threshold;
};

// Throws DomainError for an unknown name.
json_io::json run(const std::string& name, const Overrides& o = {});

}  // namespace maxalg::scenarios
