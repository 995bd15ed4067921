#include "idpack/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace idpack {

namespace {

void require_above_one(std::initializer_list<double> vals, const char* where) {
  for (double v : vals)
    if (!(v > 1.0))
      throw DomainError(std::string(where) + ": inversive distance " +
                        std::to_string(v) + " is not > 1");
}

void require_positive(std::initializer_list<double> vals, const char* where) {
  for (double v : vals)
    if (!(v > 0.0))
      throw DomainError(std::string(where) + ": radius " + std::to_string(v) +
                        " is not positive");
}

}  // namespace

double ptolemy_f(double a, double b, double c, double d, double e) {
  require_above_one({a, b, c, d, e}, "ptolemy_f");
  const double root =
      std::sqrt(discriminant(a, d, e)) * std::sqrt(discriminant(b, c, e));
  return (a * b + c * d + a * c * e + b * d * e + root) / (e * e - 1.0);
}

double ptolemy_residual(double a, double b, double c, double d, double e,
                        double f) {
  return a * a + b * b + c * c + d * d + e * e + f * f +
         2.0 * (a * d * e + b * c * e + a * b * f + c * d * f + a * b * c * d +
                a * c * e * f + b * d * e * f) -
         a * a * c * c - b * b * d * d - e * e * f * f - 1.0;
}

std::pair<double, double> delta_propagation(double a, double b, double c,
                                            double d, double e) {
  require_above_one({a, b, c, d, e}, "delta_propagation");
  const double sde_ade = std::sqrt(discriminant(a, d, e));
  const double sde_bce = std::sqrt(discriminant(b, c, e));
  const double denom = e * e - 1.0;
  return {((d + a * e) * sde_bce + (c + b * e) * sde_ade) / denom,
          ((a + d * e) * sde_bce + (b + c * e) * sde_ade) / denom};
}

double local_delaunay_slack(const HingeData& h) {
  require_above_one({h.a, h.b, h.c, h.d, h.e}, "local_delaunay_slack");
  require_positive({h.p, h.q, h.r, h.s}, "local_delaunay_slack");
  const auto [sd_abf, sd_cdf] = delta_propagation(h.a, h.b, h.c, h.d, h.e);
  return sd_cdf / h.q + sd_abf / h.s -
         std::sqrt(discriminant(h.b, h.c, h.e)) / h.p -
         std::sqrt(discriminant(h.a, h.d, h.e)) / h.r;
}

double local_delaunay_scale(const HingeData& h) {
  const auto [sd_abf, sd_cdf] = delta_propagation(h.a, h.b, h.c, h.d, h.e);
  return std::max({sd_cdf / h.q, sd_abf / h.s,
                   std::sqrt(discriminant(h.b, h.c, h.e)) / h.p,
                   std::sqrt(discriminant(h.a, h.d, h.e)) / h.r});
}

double delaunay_equality_radius(double q, double r, double s, double a,
                                double b, double c, double d, double e) {
  require_above_one({a, b, c, d, e}, "delaunay_equality_radius");
  require_positive({q, r, s}, "delaunay_equality_radius");
  const auto [sd_abf, sd_cdf] = delta_propagation(a, b, c, d, e);
  const double denom =
      sd_cdf / q + sd_abf / s - std::sqrt(discriminant(a, d, e)) / r;
  if (!(denom > 0.0))
    throw NonpositiveDenominatorError(
        "Delaunay equality wall unreachable by varying the apex radius");
  return std::sqrt(discriminant(b, c, e)) / denom;
}

double degeneracy_radius(double q, double s, double a, double d, double e) {
  require_above_one({a, d, e}, "degeneracy_radius");
  require_positive({q, s}, "degeneracy_radius");
  const double qs_len = std::sqrt(q * q + s * s + 2.0 * e * q * s);
  return (e * e - 1.0) * q * s /
         (qs_len * std::sqrt(discriminant(a, d, e)) + (a * e + d) * q +
          (d * e + a) * s);
}

std::array<double, 4> ushijima_forms(double a, double b, double c, double d,
                                     double e) {
  require_above_one({a, b, c, d, e}, "ushijima_forms");
  const double f = ptolemy_f(a, b, c, d, e);
  const double sd_ade = std::sqrt(discriminant(a, d, e));
  const double sd_bce = std::sqrt(discriminant(b, c, e));
  const auto [sd_abf, sd_cdf] = delta_propagation(a, b, c, d, e);
  return {
      (1.0 + a + d - e) * std::sqrt((1.0 + b) * (1.0 + c)) +
          (1.0 + b + c - e) * std::sqrt((1.0 + a) * (1.0 + d)),
      (1.0 + a + d - e) * sd_bce + (1.0 + b + c - e) * sd_ade,
      // per-face products: the flipped faces weighted by 1+f against the
      // current faces weighted by 1+e
      std::sqrt((1.0 + a) * (1.0 + b) * (1.0 + f)) +
          std::sqrt((1.0 + c) * (1.0 + d) * (1.0 + f)) -
          std::sqrt((1.0 + a) * (1.0 + d) * (1.0 + e)) -
          std::sqrt((1.0 + b) * (1.0 + c) * (1.0 + e)),
      sd_abf + sd_cdf - sd_ade - sd_bce,
  };
}

DelaunayResult delaunayize(Packing pk, double rel_tol, long flip_budget) {
  pk.validate();
  if (flip_budget < 0) flip_budget = 100L * pk.tri.num_edges();

  DelaunayResult out;
  bool again = true;
  while (again) {
    again = false;
    for (Index e = 0; e < pk.tri.num_edges(); ++e) {
      const HingeData h = hinge_data(pk, e);
      const double slack = local_delaunay_slack(h);
      if (slack >= -rel_tol * local_delaunay_scale(h)) continue;

      // the inner edge of a self-folded triangle has no diagonal switch;
      // it also never fails the predicate on data reachable from I > 1
      if (!pk.tri.flippable(e))
        throw DomainError("edge " + std::to_string(e) +
                          " is non-Delaunay but bounds a self-folded "
                          "triangle and cannot be flipped");

      if (static_cast<long>(out.flips.size()) >= flip_budget)
        throw FlipBudgetError("flip budget of " + std::to_string(flip_budget) +
                              " exhausted; suspected numerical cycling");
      const double f = ptolemy_f(h.a, h.b, h.c, h.d, h.e);
      if (!(f > 1.0 + 1e-12))
        throw DomainError("flip produced inversive distance " +
                          std::to_string(f) + " at the I > 1 boundary");
      pk.tri = pk.tri.flip(e);
      pk.inv_dist[e] = f;
      out.flips.push_back({e, h.e, f});
      again = true;
      break;  // restart the scan from edge 0
    }
  }
  out.packing = std::move(pk);
  return out;
}

double wall_gradient_deviation(double q, double r, double s, double a,
                               double b, double c, double d, double e,
                               double step) {
  const double p = delaunay_equality_radius(q, r, s, a, b, c, d, e);
  std::array<double, 9> v = {p, q, r, s, a, b, c, d, e};

  auto dev_value = [](const std::array<double, 9>& w) {
    HingeData h{w[4], w[5], w[6], w[7], w[8], w[0], w[1], w[2], w[3]};
    return develop_hinge(h).apex_inversive;
  };
  auto flip_value = [](const std::array<double, 9>& w) {
    return ptolemy_f(w[4], w[5], w[6], w[7], w[8]);
  };

  double max_dev = 0.0;
  for (int i = 0; i < 9; ++i) {
    std::array<double, 9> hi = v, lo = v;
    hi[i] += step;
    lo[i] -= step;
    const double dF = (dev_value(hi) - dev_value(lo)) / (2.0 * step);
    const double df = (flip_value(hi) - flip_value(lo)) / (2.0 * step);
    max_dev = std::max(max_dev, std::abs(dF - df));
  }
  return max_dev;
}

}  // namespace idpack
