#pragma once

// Property suites behind `hyptm verify`. Each suite evaluates a fixed
// built-in family of fields and returns a JSON summary, CSV details and the
// list of failed checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyptm/field.hpp"
#include "hyptm/report.hpp"
#include "hyptm/tolerances.hpp"

namespace hyptm {

/// Optional overrides of a command's default grid.
struct GridChoice {
  std::optional<std::size_t> n_rho;
  std::optional<std::size_t> n_theta;
  std::optional<double> rho_max;

  GridPtr hyperbolic(double rho_max_default, std::size_t n_rho_default, std::size_t n_theta_default) const;
};

struct SuiteSettings {
  GridChoice grid;
  std::uint64_t seed = 1;
  Tolerances tol;
  std::string nonlinearity = "quartic";
  /// local-bound only: evaluate every test field at this window norm.
  std::optional<double> local_norm_sq;
};

struct SuiteReport {
  std::string kind;
  Json summary;
  std::string csv;
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

SuiteReport hardy_suite(const SuiteSettings& s);
SuiteReport invariance_suite(const SuiteSettings& s);
SuiteReport dilation_suite(const SuiteSettings& s);
/// Throws HypothesisError when a requested window norm is >= 1.
SuiteReport local_bound_suite(const SuiteSettings& s);
SuiteReport brezis_lieb_suite(const SuiteSettings& s);

/// Dispatch on "hardy", "invariance", "dilation", "local-bound" or
/// "brezis-lieb". Throws std::invalid_argument for other names.
SuiteReport run_suite(const std::string& kind, const SuiteSettings& s);

const std::vector<std::string>& suite_names();

}  // namespace hyptm
