#pragma once

// Self-check suite behind `maxalg check`: semigroup laws, homomorphisms,
// power laws, the exchange identity, the bn semigroup/factorization, the
// extreme-value pairings, and the stability rescalings, each reported with
// its maximum observed deviation.

#include <string>
#include <vector>

namespace maxalg::check {

struct IdentityResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Deterministic (fixed seed). Setting the environment variable
// MAXALG_CHECK_FAULT=<identity-name> injects a unit deviation into that
// identity; a test hook for the failure path.
std::vector<IdentityResult> run_check_suite();

}  // namespace maxalg::check
