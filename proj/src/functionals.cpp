#include "hyptm/functionals.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hyptm/field_ops.hpp"
#include "hyptm/parallel.hpp"

namespace hyptm {

Nonlinearity quartic() {
  Nonlinearity f;
  f.name = "quartic";
  f.eval = [](double s) { return s * s * s * s; };
  f.deriv = [](double s) { return 4.0 * s * s * s; };
  f.growth_c = 1.0;
  f.growth_r = 4.0;
  f.growth_p = 0.0;
  f.convexity_claim = true;
  return f;
}

Nonlinearity power_nonlinearity(double r) {
  if (!(r > 2.0)) throw std::invalid_argument("power_nonlinearity: exponent must exceed 2");
  Nonlinearity f;
  std::ostringstream name;
  name << "power:" << r;
  f.name = name.str();
  f.eval = [r](double s) { return std::pow(std::abs(s), r); };
  f.deriv = [r](double s) { return s == 0.0 ? 0.0 : r * std::pow(std::abs(s), r - 1.0) * (s > 0 ? 1.0 : -1.0); };
  f.growth_c = 1.0;
  f.growth_r = r;
  f.growth_p = 0.0;
  f.convexity_claim = true;
  return f;
}

Nonlinearity tm_subcritical(double p) {
  if (!(p > 0.0) || !(p < 4.0 * std::numbers::pi)) {
    throw std::invalid_argument("tm_subcritical: p must lie in (0, 4 pi)");
  }
  Nonlinearity f;
  std::ostringstream name;
  name << "tm-sub:" << p;
  f.name = name.str();
  f.eval = [p](double s) {
    const double x = p * s * s;
    return std::expm1(x) - x;
  };
  f.deriv = [p](double s) { return 2.0 * p * s * std::expm1(p * s * s); };
  // e^x - 1 - x <= x^2 e^x / 2
  f.growth_c = 0.5 * p * p;
  f.growth_r = 4.0;
  f.growth_p = p;
  f.convexity_claim = true;
  return f;
}

Nonlinearity nonlinearity_by_name(std::string_view name) {
  if (name == "quartic" || name == "s4") return quartic();
  if (name == "sextic" || name == "s6") {
    Nonlinearity f = power_nonlinearity(6.0);
    f.name = "sextic";
    return f;
  }
  if (name == "tm-sub") return tm_subcritical();
  auto parse_suffix = [&](std::string_view prefix) -> double {
    const std::string rest(name.substr(prefix.size()));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size()) {
      throw std::invalid_argument("unknown nonlinearity '" + std::string(name) + "'");
    }
    return v;
  };
  if (name.starts_with("power:")) return power_nonlinearity(parse_suffix("power:"));
  if (name.starts_with("tm-sub:")) return tm_subcritical(parse_suffix("tm-sub:"));
  throw std::invalid_argument("unknown nonlinearity '" + std::string(name) + "'");
}

NonlinearityCheck validate(const Nonlinearity& f) {
  NonlinearityCheck out;
  auto fail = [&out](std::string msg) {
    out.ok = false;
    out.failures.push_back(std::move(msg));
  };
  if (!f.eval || !f.deriv) {
    fail("missing evaluation or derivative");
    return out;
  }
  if (!(f.growth_c > 0.0)) fail("growth constant C must be positive");
  if (!(f.growth_r > 2.0)) fail("growth exponent r must exceed 2");
  if (!(f.growth_p >= 0.0 && f.growth_p < 4.0 * std::numbers::pi)) fail("growth exponent p must lie in [0, 4 pi)");
  if (f.eval(0.0) != 0.0) fail("F(0) must vanish");

  for (int k = -30; k <= 30; ++k) {
    const double s = 0.1 * k;
    const double v = f.eval(s);
    const double bound = f.growth_c * std::pow(std::abs(s), f.growth_r) * std::exp(f.growth_p * s * s);
    if (std::abs(v) > bound * (1.0 + 1e-12)) {
      fail("growth bound violated at s = " + std::to_string(s));
      break;
    }
  }
  for (int k = -30; k <= 30; ++k) {
    const double s = 0.1 * k;
    const double h = 1e-5 * std::max(1.0, std::abs(s));
    const double fd = (f.eval(s + h) - f.eval(s - h)) / (2.0 * h);
    const double d = f.deriv(s);
    if (std::abs(fd - d) > 1e-6 * std::max(std::abs(d), 1e-6)) {
      fail("derivative mismatch at s = " + std::to_string(s));
      break;
    }
  }
  if (f.convexity_claim) {
    // The strict inequality degenerates to equality whenever a b = 0, so it
    // is sampled on a, b != 0.
    bool bad = false;
    for (int ia = -4; ia <= 4 && !bad; ++ia) {
      for (int ib = -4; ib <= 4 && !bad; ++ib) {
        if (ia == 0 || ib == 0) continue;
        const double a = 0.5 * ia;
        const double b = 0.5 * ib;
        for (int it = 1; it <= 9; ++it) {
          const double t = 0.1 * it;
          const double lhs = f.eval(std::sqrt(t * a * a + (1.0 - t) * b * b));
          const double rhs = f.eval(std::sqrt(t) * a) + f.eval(std::sqrt(1.0 - t) * b);
          if (!(lhs > rhs)) {
            fail("convexity hypothesis fails at a = " + std::to_string(a) + ", b = " + std::to_string(b));
            bad = true;
            break;
          }
        }
      }
    }
  }
  return out;
}

namespace {

// Sums w_i * term(u_ij) with saturation bookkeeping; term reports saturation
// through its second argument.
template <class Term>
TmValue integrate_terms(const Field& u, bool euclid, Term&& term) {
  const PolarGrid& g = u.grid();
  const std::size_t n = g.n_rho();
  std::vector<double> rows(n, 0.0);
  std::vector<std::size_t> sat(n, 0);
  std::vector<double> abs_rows(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    double a = 0.0;
    std::size_t count = 0;
    const auto r = u.ring(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      bool flag = false;
      const double v = term(i * g.n_theta() + j, r[j], flag);
      if (flag) ++count;
      s += v;
      a += std::abs(v);
    }
    rows[i] = s * (euclid ? g.euclid_weight(i) : g.weight(i));
    abs_rows[i] = a;
    sat[i] = count;
  }
  TmValue out;
  out.value = ordered_sum(rows);
  for (std::size_t c : sat) out.saturated_nodes += c;
  out.saturated = out.saturated_nodes > 0;
  const std::size_t tail_ring = g.dirichlet_outer() && n >= 2 ? n - 2 : n - 1;
  out.tail_warning = abs_rows[tail_ring] * g.dtheta() * g.metric_a(tail_ring) > kDefaultTailTol;
  return out;
}

TmValue tm_value(const Field& u, double p, bool euclid) {
  if (!(p > 0.0)) throw std::invalid_argument("Trudinger-Moser integral: p must be positive");
  return integrate_terms(u, euclid, [p](std::size_t, double v, bool& flag) {
    double a = p * v * v;
    if (a > kExpSaturation) {
      a = kExpSaturation;
      flag = true;
    }
    return std::expm1(a);
  });
}

double guarded_eval(const Nonlinearity& f, double s, bool& flag) {
  if (f.growth_p * s * s > kExpSaturation) {
    flag = true;
    const double cap = std::sqrt(kExpSaturation / f.growth_p);
    return f.eval(s > 0 ? cap : -cap);
  }
  const double v = f.eval(s);
  if (!std::isfinite(v)) {
    flag = true;
    return std::numeric_limits<double>::max() * (v < 0 ? -1.0 : 1.0);
  }
  return v;
}

}  // namespace

TmValue tm_euclidean(const Field& u, double p) { return tm_value(u, p, true); }
TmValue tm_invariant(const Field& u, double p) { return tm_value(u, p, false); }

TmValue f_integral(const Field& u, const Nonlinearity& f) {
  return integrate_terms(u, false, [&f](std::size_t, double v, bool& flag) { return guarded_eval(f, v, flag); });
}

TmValue brezis_lieb_defect(const Field& u_k, const Field& u, const Nonlinearity& f) {
  if (!same_grid(u_k.grid(), u.grid())) throw std::invalid_argument("brezis_lieb_defect: fields live on different grids");
  const auto base = u.values();
  return integrate_terms(u_k, false, [&](std::size_t idx, double a, bool& flag) {
    const double b = base[idx];
    return guarded_eval(f, a, flag) - guarded_eval(f, a - b, flag) - guarded_eval(f, b, flag);
  });
}

}  // namespace hyptm
