#include "semlim/semantic_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace semlim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void LogisticParams::validate() const {
  if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(c1) || !std::isfinite(c2))
    throw std::invalid_argument("logistic parameters must be finite");
  if (!(c1 > 0.0)) throw std::invalid_argument("logistic growth rate c1 must be > 0");
  if (!(a1 < a2)) throw std::invalid_argument("logistic asymptotes must satisfy a1 < a2");
  if (k_label < 1) throw std::invalid_argument("k_label must be >= 1");
}

const char* to_string(ConditionId id) {
  switch (id) {
    case ConditionId::KappaRange:
      return "KappaRange";
    case ConditionId::KappaAboveAlpha:
      return "KappaAboveAlpha";
    case ConditionId::PowerBudget:
      return "PowerBudget";
  }
  return "unknown";
}

double similarity(const LogisticParams& params, double gamma) {
  return params.a1 +
         (params.a2 - params.a1) / (1.0 + std::exp(-(params.c1 * gamma + params.c2)));
}

double kappa_of(const LogisticParams& params, double eta_min) {
  return (eta_min - params.a1) / (params.a2 - params.a1);
}

double alpha_of(const LogisticParams& params) {
  // e^c2 / (1 + e^c2), written to stay finite for large |c2|.
  return 1.0 / (1.0 + std::exp(-params.c2));
}

double beta_threshold(const LogisticParams& params, double eta_min) {
  const double kappa = kappa_of(params, eta_min);
  if (!(kappa >= 0.0 && kappa <= 1.0))
    throw ConditionError(ConditionId::KappaRange,
                         "kappa_K(eta_min) = " + fmt_num(kappa) + " is outside [0, 1] for K = " +
                             std::to_string(params.k_label));
  if (kappa == 1.0) return kInf;
  if (kappa == 0.0) return -kInf;
  return std::log(kappa / (1.0 - kappa)) / params.c1 - params.c2 / params.c1;
}

SemanticThreshold semantic_threshold(const LogisticParams& params, double eta_min) {
  return {eta_min, kappa_of(params, eta_min), alpha_of(params), beta_threshold(params, eta_min)};
}

std::vector<ConditionReport> check_conditions(const LogisticParams& params, double eta_min,
                                              double p_max_s, double p_tilde_min, int u) {
  const double kappa = kappa_of(params, eta_min);
  const double alpha = alpha_of(params);
  std::vector<ConditionReport> reports;

  const bool in_range = kappa >= 0.0 && kappa <= 1.0;
  reports.push_back({ConditionId::KappaRange, in_range,
                     "kappa_K = " + fmt_num(kappa) + (in_range ? " in [0, 1]" : " not in [0, 1]")});

  const bool above = kappa >= alpha;
  reports.push_back({ConditionId::KappaAboveAlpha, above,
                     "kappa_K = " + fmt_num(kappa) + (above ? " >= " : " < ") + "alpha = " +
                         fmt_num(alpha)});

  if (!in_range) {
    reports.push_back({ConditionId::PowerBudget, false, "beta_K undefined (kappa_K outside [0, 1])"});
    return reports;
  }
  const double beta = beta_threshold(params, eta_min);
  if (!std::isfinite(beta)) {
    reports.push_back({ConditionId::PowerBudget, false,
                       "beta_K is not finite (kappa_K = " + fmt_num(kappa) + ")"});
    return reports;
  }
  const auto budget = check_threshold_conditions(beta, p_max_s, p_tilde_min, u);
  reports.push_back(budget[2]);
  return reports;
}

std::vector<ConditionReport> check_threshold_conditions(double beta, double p_max_s,
                                                        double p_tilde_min, int u) {
  std::vector<ConditionReport> reports;
  const bool in_range = !std::isnan(beta);
  reports.push_back({ConditionId::KappaRange, in_range,
                     in_range ? "threshold given directly" : "threshold is NaN"});
  const bool above = beta >= 0.0;
  reports.push_back({ConditionId::KappaAboveAlpha, above,
                     "beta = " + fmt_num(beta) + (above ? " >= 0" : " < 0")});

  if (u <= 1) {
    reports.push_back({ConditionId::PowerBudget, false,
                       "U = " + std::to_string(u) + " gives (U - 1) = 0 interferer factor"});
  } else if (!std::isfinite(beta)) {
    reports.push_back({ConditionId::PowerBudget, false, "beta is not finite"});
  } else {
    const double budget = beta * (u - 1) * p_tilde_min;
    const bool ok = p_max_s <= budget;
    reports.push_back({ConditionId::PowerBudget, ok,
                       "P_max^s = " + fmt_num(p_max_s) + (ok ? " <= " : " > ") +
                           "beta (U - 1) P~_min^i = " + fmt_num(budget)});
  }
  return reports;
}

bool all_satisfied(std::span<const ConditionReport> reports) {
  for (const auto& r : reports)
    if (!r.satisfied) return false;
  return true;
}

int select_optimal_k(std::span<const LogisticParams> family, double eta_min) {
  if (family.empty()) throw std::invalid_argument("K-selection needs a non-empty family");
  int best_k = 0;
  double best_beta = kInf;
  bool first = true;
  for (const auto& member : family) {
    const double kappa = kappa_of(member, eta_min);
    if (!(kappa > 0.0 && kappa < 1.0))
      throw ConditionError(ConditionId::KappaRange,
                           "K = " + std::to_string(member.k_label) + " has kappa_K(eta_min) = " +
                               fmt_num(kappa) + " outside (0, 1)");
    const double beta = beta_threshold(member, eta_min);
    if (first || beta < best_beta || (beta == best_beta && member.k_label > best_k)) {
      best_beta = beta;
      best_k = member.k_label;
      first = false;
    }
  }
  return best_k;
}

std::vector<LogisticParams> synthetic_family() {
  std::vector<LogisticParams> family;
  for (int k = 1; k <= 5; ++k) {
    family.push_back({k, 0.1, 0.90 + 0.015 * k, 6.0 * std::pow(1.4, k - 1), -0.5});
  }
  return family;
}

}  // namespace semlim
