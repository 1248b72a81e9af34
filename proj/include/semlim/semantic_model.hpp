#pragma once

// Generalized-logistic semantic-similarity surrogate and its threshold algebra.
//
//   similarity(gamma) = a1 + (a2 - a1) / (1 + exp(-(c1 * gamma + c2)))
//
// The similarity event {similarity(gamma) >= eta_min} is equivalent to the SINR
// event {gamma >= beta_K(eta_min)} whenever kappa_K(eta_min) lies in (0, 1).

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace semlim {

struct LogisticParams {
  int k_label = 1;  ///< semantic symbols per word (K)
  double a1 = 0.0;  ///< lower asymptote
  double a2 = 1.0;  ///< upper asymptote
  double c1 = 1.0;  ///< logistic growth rate, > 0
  double c2 = 0.0;  ///< logistic midpoint control

  /// Throws std::invalid_argument unless c1 > 0, a1 < a2 and all finite.
  void validate() const;
};

struct SemanticThreshold {
  double eta_min = 0.0;
  double kappa = 0.0;
  double alpha = 0.0;
  double beta = 0.0;  ///< +inf at kappa == 1, -inf at kappa == 0
};

enum class ConditionId { KappaRange, KappaAboveAlpha, PowerBudget };

const char* to_string(ConditionId id);

struct ConditionReport {
  ConditionId condition_id = ConditionId::KappaRange;
  bool satisfied = false;
  std::string detail;
};

/// Raised when an operation's validity condition fails.
class ConditionError : public std::domain_error {
 public:
  ConditionError(ConditionId id, const std::string& what)
      : std::domain_error(std::string(to_string(id)) + ": " + what), id_(id) {}

  [[nodiscard]] ConditionId condition() const { return id_; }

 private:
  ConditionId id_;
};

double similarity(const LogisticParams& params, double gamma);
double kappa_of(const LogisticParams& params, double eta_min);
double alpha_of(const LogisticParams& params);

/// SINR threshold equivalent to the similarity threshold eta_min.
/// Throws ConditionError(KappaRange) when kappa_K(eta_min) is outside [0, 1].
double beta_threshold(const LogisticParams& params, double eta_min);

SemanticThreshold semantic_threshold(const LogisticParams& params, double eta_min);

/// Reports, in order, KappaRange, KappaAboveAlpha and PowerBudget.
std::vector<ConditionReport> check_conditions(const LogisticParams& params, double eta_min,
                                              double p_max_s, double p_tilde_min, int u);

/// Same reports for a threshold given directly in SINR units: kappa in
/// [alpha, 1] is equivalent to beta >= 0.
std::vector<ConditionReport> check_threshold_conditions(double beta, double p_max_s,
                                                        double p_tilde_min, int u);

bool all_satisfied(std::span<const ConditionReport> reports);

/// k_label minimizing beta_K(eta_min); ties go to the largest k_label.
/// Throws ConditionError(KappaRange) naming the k_label of any member whose
/// kappa_K(eta_min) is outside (0, 1).
int select_optimal_k(std::span<const LogisticParams> family, double eta_min);

/// Synthetic demonstration family, K = 1..5, with beta_K(eta_min) decreasing
/// in K for eta_min in [0.6, 0.9]. Not fitted to any measurement.
std::vector<LogisticParams> synthetic_family();

}  // namespace semlim
