#pragma once

// Closed-form companions to the Monte Carlo estimates.

#include <optional>
#include <vector>

#include "semlim/channel_scenarios.hpp"
#include "semlim/semantic_model.hpp"

namespace semlim {

struct BoundReport {
  /// Bound value; raw Markov values above 1 are kept unclamped.
  double value = 0.0;
  /// SINR threshold the bound was evaluated at.
  double beta = 0.0;
  std::vector<ConditionReport> conditions;
  /// kappa in [alpha, 1] and U >= 2.
  bool applicable = false;
  /// The power budget fails, so the Markov value exceeds 1 and carries no
  /// information.
  bool vacuous = false;
};

/// p(eta_min) <= P_max^s / (beta_K(eta_min) (U - 1) P~_min^i).
///
/// Throws ConditionError(PowerBudget) for U <= 1, and ConditionError naming
/// KappaRange or KappaAboveAlpha when kappa_K(eta_min) is outside [alpha, 1].
BoundReport markov_upper_bound(const LogisticParams& params, double eta_min, double p_max_s,
                               double p_tilde_min, int u);

/// Markov bound at an SINR threshold given directly. Throws for U <= 1 or
/// beta < 0 (the threshold-form of kappa < alpha).
BoundReport markov_upper_bound_at(double beta, double p_max_s, double p_tilde_min, int u);

/// P_out(eta_min) >= max(0, 1 - Markov value).
BoundReport outage_lower_bound(const LogisticParams& params, double eta_min, double p_max_s,
                               double p_tilde_min, int u);
BoundReport outage_lower_bound_at(double beta, double p_max_s, double p_tilde_min, int u);

/// Mean of F_{nu1, nu2}: nu2 / (nu2 - 2). Throws std::domain_error for nu2 <= 2.
double f_mean(int nu2);

/// (1/2) Int [f1(t,y) + f2(t,y)] dy / (pi (1 + y^2)) with
/// f1 = 1/2 - arctan(t + y)/pi and f2 = 1/2 - arctan(t - y)/pi, integrated by
/// adaptive Simpson after y = tan(theta). Throws std::domain_error for t < 0.
double arctan_integral_bound(double t);

/// The argument t = sigma sqrt(beta / (2 P_max^s)) of arctan_integral_bound.
double arctan_bound_argument(double sigma2, double beta, double p_max_s);

/// Exact tail P(statistic >= threshold) for the scenario; 1 for threshold <= 0.
std::optional<double> closed_form_tail(const ScenarioConfig& config, double threshold);

}  // namespace semlim
