#pragma once

#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyptm/field.hpp"

namespace hyptm {

/// Exponent arguments above this value are capped and flagged.
inline constexpr double kExpSaturation = 700.0;

/// A nonlinearity F together with the growth constants of
/// |F(s)| <= C |s|^r exp(p s^2) (C > 0, r > 2, 0 <= p < 4 pi) and whether the
/// strict convexity-type hypothesis
///   F(sqrt(t a^2 + (1-t) b^2)) > F(sqrt(t) a) + F(sqrt(1-t) b)
/// is claimed for (a, b) != (0, 0).
struct Nonlinearity {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double)> deriv;
  double growth_c = 1.0;
  double growth_r = 4.0;
  double growth_p = 0.0;
  bool convexity_claim = false;
};

/// F(s) = s^4; growth (1, 4, 0), convexity claimed.
Nonlinearity quartic();
/// F(s) = |s|^r for r > 2.
Nonlinearity power_nonlinearity(double r);
/// F(s) = exp(p s^2) - 1 - p s^2 for 0 < p < 4 pi.
Nonlinearity tm_subcritical(double p = 2.0 * std::numbers::pi);
/// "quartic", "sextic", "power:<r>", "tm-sub", "tm-sub:<p>". Throws
/// std::invalid_argument on unknown names.
Nonlinearity nonlinearity_by_name(std::string_view name);

struct NonlinearityCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Spot checks: F(0) = 0, the growth bound on s in [-3, 3], the derivative
/// against central differences, and the convexity claim on a sample grid.
NonlinearityCheck validate(const Nonlinearity& f);

struct TmValue {
  double value = 0.0;
  bool saturated = false;
  std::size_t saturated_nodes = 0;
  bool tail_warning = false;
};

/// Quadrature of exp(p u^2) - 1 against Euclidean dx.
TmValue tm_euclidean(const Field& u, double p);
/// Quadrature of exp(p u^2) - 1 against d(mu).
TmValue tm_invariant(const Field& u, double p);

/// Quadrature of F(u) against d(mu). Saturation is flagged when
/// growth_p u^2 exceeds kExpSaturation or F returns a non-finite value.
TmValue f_integral(const Field& u, const Nonlinearity& f);

/// Integral of F(u_k) - F(u_k - u) - F(u) against d(mu), evaluated node by
/// node so that the identity cases vanish exactly.
TmValue brezis_lieb_defect(const Field& u_k, const Field& u, const Nonlinearity& f);

}  // namespace hyptm
