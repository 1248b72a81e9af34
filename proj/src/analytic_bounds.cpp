#include "semlim/analytic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace semlim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_interferers(int u) {
  if (u <= 1)
    throw ConditionError(ConditionId::PowerBudget,
                         "Markov bound needs U >= 2 interferers, got U = " + std::to_string(u));
}

double markov_value(double beta, double p_max_s, double p_tilde_min, int u) {
  if (beta == kInf) return 0.0;
  if (beta == 0.0) return kInf;
  return p_max_s / (beta * (u - 1) * p_tilde_min);
}

const ConditionReport& find(const std::vector<ConditionReport>& reports, ConditionId id) {
  return *std::find_if(reports.begin(), reports.end(),
                       [id](const ConditionReport& r) { return r.condition_id == id; });
}

BoundReport complement(BoundReport markov) {
  markov.value = std::max(0.0, 1.0 - markov.value);
  return markov;
}

// Adaptive Simpson on [a, b] with whole-interval estimate `whole`.
struct Simpson {
  double (*f)(double, double);
  double t;
  long budget;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(t, lm);
    const double frm = f(t, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double refined = left + right;
    --budget;
    if (depth <= 0 || budget <= 0 || std::abs(refined - whole) <= 15.0 * tol)
      return refined + (refined - whole) / 15.0;
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

// Integrand after y = tan(theta): dy / (pi (1 + y^2)) = dtheta / pi.
double arctan_integrand(double t, double theta) {
  const double y = std::tan(theta);
  const double f1 = 0.5 - std::atan(t + y) / std::numbers::pi;
  const double f2 = 0.5 - std::atan(t - y) / std::numbers::pi;
  return 0.5 * (f1 + f2) / std::numbers::pi;
}

}  // namespace

BoundReport markov_upper_bound_at(double beta, double p_max_s, double p_tilde_min, int u) {
  require_interferers(u);
  if (std::isnan(beta) || beta < 0.0)
    throw ConditionError(ConditionId::KappaAboveAlpha,
                         "threshold beta = " + std::to_string(beta) + " is negative");
  BoundReport report;
  report.beta = beta;
  report.value = markov_value(beta, p_max_s, p_tilde_min, u);
  report.conditions = check_threshold_conditions(beta, p_max_s, p_tilde_min, u);
  report.applicable = true;
  report.vacuous = report.value > 1.0;
  return report;
}

BoundReport markov_upper_bound(const LogisticParams& params, double eta_min, double p_max_s,
                               double p_tilde_min, int u) {
  params.validate();
  require_interferers(u);
  auto conditions = check_conditions(params, eta_min, p_max_s, p_tilde_min, u);
  for (ConditionId id : {ConditionId::KappaRange, ConditionId::KappaAboveAlpha}) {
    const auto& r = find(conditions, id);
    if (!r.satisfied) throw ConditionError(id, r.detail);
  }
  BoundReport report;
  report.beta = beta_threshold(params, eta_min);
  report.value = markov_value(report.beta, p_max_s, p_tilde_min, u);
  report.conditions = std::move(conditions);
  report.applicable = true;
  report.vacuous = report.value > 1.0;
  return report;
}

BoundReport outage_lower_bound(const LogisticParams& params, double eta_min, double p_max_s,
                               double p_tilde_min, int u) {
  return complement(markov_upper_bound(params, eta_min, p_max_s, p_tilde_min, u));
}

BoundReport outage_lower_bound_at(double beta, double p_max_s, double p_tilde_min, int u) {
  return complement(markov_upper_bound_at(beta, p_max_s, p_tilde_min, u));
}

double f_mean(int nu2) {
  if (nu2 <= 2) throw std::domain_error("F mean is undefined for nu2 <= 2");
  return static_cast<double>(nu2) / (nu2 - 2);
}

double arctan_integral_bound(double t) {
  if (std::isnan(t) || t < 0.0) throw std::domain_error("arctan bound needs t >= 0");
  constexpr double kTol = 1e-9;
  constexpr long kMaxSubdivisions = 1'000'000;
  const double a = -std::numbers::pi / 2;
  const double b = std::numbers::pi / 2;
  Simpson simpson{arctan_integrand, t, kMaxSubdivisions};
  // Integrate the two halves separately so the odd part of the integrand
  // cannot cancel in the first coarse estimate.
  double total = 0.0;
  for (auto [lo, hi] : {std::pair{a, 0.0}, std::pair{0.0, b}}) {
    const double fa = arctan_integrand(t, lo);
    const double fb = arctan_integrand(t, hi);
    const double fm = arctan_integrand(t, 0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson.recurse(lo, hi, fa, fm, fb, whole, 0.5 * kTol, 50);
  }
  return std::clamp(total, 0.0, 0.5);
}

double arctan_bound_argument(double sigma2, double beta, double p_max_s) {
  return std::sqrt(sigma2) * std::sqrt(beta / (2.0 * p_max_s));
}

std::optional<double> closed_form_tail(const ScenarioConfig& config, double threshold) {
  if (threshold <= 0.0) return 1.0;
  switch (config.variant) {
    case Variant::NoRfi:
      return std::pow(1.0 + threshold * config.sigma2 / (2.0 * config.p_max_s), -0.5);
    case Variant::SingleRfi:
      return std::pow(1.0 + threshold * config.p_min_i / config.p_max_s, -0.5);
    case Variant::MultiRfi:
      return std::pow(1.0 + threshold * config.p_tilde_min / config.p_max_s, -config.u);
    case Variant::PracticalSinr:
      return std::pow(1.0 + threshold, -(config.u + 1));
  }
  return std::nullopt;
}

}  // namespace semlim
