#include "semlim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

namespace semlim {

using nlohmann::json;

namespace {

// 1-2-5 ladder from `lo` to `hi` inclusive.
std::vector<double> ladder_125(int lo_exp, int hi_exp) {
  std::vector<double> out;
  for (int e = lo_exp; e <= hi_exp; ++e) {
    const double base = std::pow(10.0, e);
    for (double m : {1.0, 2.0, 5.0}) out.push_back(m * base);
  }
  out.push_back(std::pow(10.0, hi_exp + 1));
  return out;
}

std::vector<double> linear_grid(double first, double step, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(first + step * i);
  return out;
}

std::string label_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

ScenarioConfig no_rfi(double p_max_s, double sigma2) {
  ScenarioConfig c;
  c.variant = Variant::NoRfi;
  c.p_max_s = p_max_s;
  c.sigma2 = sigma2;
  return c;
}

ScenarioConfig single_rfi(double p_max_s, double p_min_i) {
  ScenarioConfig c;
  c.variant = Variant::SingleRfi;
  c.p_max_s = p_max_s;
  c.p_min_i = p_min_i;
  return c;
}

ScenarioConfig multi(Variant v, double p_max_s, double p_tilde_min, int u) {
  ScenarioConfig c;
  c.variant = v;
  c.p_max_s = p_max_s;
  c.p_tilde_min = p_tilde_min;
  c.u = u;
  return c;
}

std::vector<Preset> build_registry() {
  // Series levels and threshold grids are reconstructions. Fixed powers and
  // sample counts are pinned by verify_registry.
  const auto power_grid = ladder_125(-2, 1);  // 0.01 .. 100
  const auto multi_grid = ladder_125(-1, 2);  // 0.1 .. 1000
  const auto practical_grid = linear_grid(0.02, 0.02, 15);

  std::vector<Preset> r;
  {
    Preset p{"fig3", "NoRfi, fixed P_max^s = 5 W, varying sigma^2", {}, power_grid, 10'000'000};
    for (double s2 : {10.0, 100.0, 1000.0, 10000.0})
      p.series.push_back({"sigma2=" + label_num(s2), no_rfi(5.0, s2)});
    r.push_back(p);
  }
  {
    Preset p{"fig4", "NoRfi, fixed sigma^2 = 100 W, varying P_max^s", {}, power_grid, 10'000'000};
    for (double pm : {100.0, 10.0, 1.0, 0.1})
      p.series.push_back({"p_max_s=" + label_num(pm), no_rfi(pm, 100.0)});
    r.push_back(p);
  }
  {
    Preset p{"fig5", "SingleRfi, fixed P_max^s = 10 W, varying P_min^i", {}, power_grid,
             10'000'000};
    for (double pi : {1.0, 10.0, 100.0, 1000.0})
      p.series.push_back({"p_min_i=" + label_num(pi), single_rfi(10.0, pi)});
    r.push_back(p);
  }
  {
    Preset p{"fig6", "SingleRfi, fixed P_min^i = 10 W, varying P_max^s", {}, power_grid,
             10'000'000};
    for (double pm : {100.0, 10.0, 1.0, 0.1})
      p.series.push_back({"p_max_s=" + label_num(pm), single_rfi(pm, 10.0)});
    r.push_back(p);
  }
  for (auto [name, pt] : {std::pair{"fig7", 0.1}, std::pair{"fig8", 0.15}}) {
    Preset p{name,
             "MultiRfi, fixed P~_min^i = " + label_num(pt) + " W, fixed P_max^s = 10 W, varying U",
             {},
             multi_grid,
             1'000'000};
    for (int u : {10, 25, 50, 100})
      p.series.push_back({"u=" + std::to_string(u), multi(Variant::MultiRfi, 10.0, pt, u)});
    r.push_back(p);
  }
  for (auto [name, pt] : {std::pair{"fig9", 0.8}, std::pair{"fig10", 1.0}}) {
    Preset p{name,
             "PracticalSinr, (P~_min^i, P_max^s) = (" + label_num(pt) + ", 1.5) W, U in {25, 50, 100}",
             {},
             practical_grid,
             1'000'000};
    for (int u : {25, 50, 100})
      p.series.push_back({"u=" + std::to_string(u), multi(Variant::PracticalSinr, 1.5, pt, u)});
    r.push_back(p);
  }
  {
    Preset p{"mi-pmax", "MultiRfi, fixed P~_min^i = 10 W, fixed U = 3, varying P_max^s", {},
             power_grid, 1'000'000};
    for (double pm : {1000.0, 100.0, 10.0, 1.0})
      p.series.push_back({"p_max_s=" + label_num(pm), multi(Variant::MultiRfi, pm, 10.0, 3)});
    r.push_back(p);
  }
  {
    Preset p{"mi-ptilde", "MultiRfi, fixed P_max^s = 10 W, fixed U = 3, varying P~_min^i", {},
             power_grid, 1'000'000};
    for (double pt : {0.1, 1.0, 10.0, 100.0})
      p.series.push_back(
          {"p_tilde_min=" + label_num(pt), multi(Variant::MultiRfi, 10.0, pt, 3)});
    r.push_back(p);
  }
  return r;
}

struct PresetFact {
  const char* preset;
  const char* field;
  Variant variant;
  double value;  // NaN when only the variant / u-set is checked
};

double field_of(const ScenarioConfig& c, const std::string& field) {
  if (field == "p_max_s") return c.p_max_s;
  if (field == "sigma2") return c.sigma2;
  if (field == "p_min_i") return c.p_min_i;
  if (field == "p_tilde_min") return c.p_tilde_min;
  if (field == "u") return c.u;
  return std::nan("");
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json conditions_json(const std::vector<ConditionReport>& reports) {
  json out = json::array();
  for (const auto& r : reports)
    out.push_back({{"condition", to_string(r.condition_id)},
                   {"satisfied", r.satisfied},
                   {"detail", r.detail}});
  return out;
}

template <typename T>
T required(const json& doc, const char* key) {
  if (!doc.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T optional_field(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("field '") + key + "' has the wrong type");
  }
}

std::string default_label(const ScenarioConfig& c) {
  switch (c.variant) {
    case Variant::NoRfi:
      return "p_max_s=" + label_num(c.p_max_s) + ";sigma2=" + label_num(c.sigma2);
    case Variant::SingleRfi:
      return "p_max_s=" + label_num(c.p_max_s) + ";p_min_i=" + label_num(c.p_min_i);
    case Variant::MultiRfi:
    case Variant::PracticalSinr:
      return "p_max_s=" + label_num(c.p_max_s) + ";p_tilde_min=" + label_num(c.p_tilde_min) +
             ";u=" + std::to_string(c.u);
  }
  return "series";
}

std::string csv_cell(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

const std::vector<Preset>& preset_registry() {
  static const std::vector<Preset> registry = build_registry();
  return registry;
}

const Preset* find_preset(const std::string& name, std::span<const Preset> registry) {
  for (const auto& p : registry)
    if (p.name == name) return &p;
  return nullptr;
}

const Preset* find_preset(const std::string& name) { return find_preset(name, preset_registry()); }

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : preset_registry()) names.push_back(p.name);
  return names;
}

std::vector<std::string> verify_registry(std::span<const Preset> registry) {
  static const PresetFact facts[] = {
      {"fig3", "p_max_s", Variant::NoRfi, 5.0},
      {"fig4", "sigma2", Variant::NoRfi, 100.0},
      {"fig5", "p_max_s", Variant::SingleRfi, 10.0},
      {"fig6", "p_min_i", Variant::SingleRfi, 10.0},
      {"fig7", "p_tilde_min", Variant::MultiRfi, 0.1},
      {"fig7", "p_max_s", Variant::MultiRfi, 10.0},
      {"fig8", "p_tilde_min", Variant::MultiRfi, 0.15},
      {"fig8", "p_max_s", Variant::MultiRfi, 10.0},
      {"fig9", "p_tilde_min", Variant::PracticalSinr, 0.8},
      {"fig9", "p_max_s", Variant::PracticalSinr, 1.5},
      {"fig10", "p_tilde_min", Variant::PracticalSinr, 1.0},
      {"fig10", "p_max_s", Variant::PracticalSinr, 1.5},
      {"mi-pmax", "p_tilde_min", Variant::MultiRfi, 10.0},
      {"mi-pmax", "u", Variant::MultiRfi, 3.0},
      {"mi-ptilde", "p_max_s", Variant::MultiRfi, 10.0},
      {"mi-ptilde", "u", Variant::MultiRfi, 3.0},
  };
  static const std::pair<const char*, std::uint64_t> sample_counts[] = {
      {"fig3", 10'000'000}, {"fig4", 10'000'000}, {"fig5", 10'000'000},
      {"fig6", 10'000'000}, {"fig7", 1'000'000},  {"fig8", 1'000'000},
      {"fig9", 1'000'000},  {"fig10", 1'000'000}, {"mi-pmax", 1'000'000},
      {"mi-ptilde", 1'000'000}};

  std::vector<std::string> issues;
  for (const auto& [name, n] : sample_counts) {
    const Preset* p = find_preset(name, registry);
    if (!p) {
      issues.push_back(std::string(name) + ": preset missing from registry");
      continue;
    }
    if (p->n != n)
      issues.push_back(std::string(name) + ": N = " + std::to_string(p->n) + ", expected " +
                       std::to_string(n));
    if (p->series.empty()) issues.push_back(std::string(name) + ": no series");
  }
  for (const auto& fact : facts) {
    const Preset* p = find_preset(fact.preset, registry);
    if (!p) continue;
    for (const auto& s : p->series) {
      if (s.config.variant != fact.variant)
        issues.push_back(std::string(fact.preset) + ": series " + s.label + " has variant " +
                         to_string(s.config.variant));
      const double actual = field_of(s.config, fact.field);
      if (actual != fact.value)
        issues.push_back(std::string(fact.preset) + ": series " + s.label + " has " + fact.field +
                         " = " + format_real(actual) + ", expected " +
                         format_real(fact.value));
    }
  }
  for (const char* name : {"fig9", "fig10"}) {
    const Preset* p = find_preset(name, registry);
    if (!p) continue;
    std::set<int> us;
    for (const auto& s : p->series) us.insert(s.config.u);
    if (us != std::set<int>{25, 50, 100})
      issues.push_back(std::string(name) + ": U set differs from {25, 50, 100}");
  }
  return issues;
}

std::vector<SweepSeries> run_preset(const Preset& preset, const RunOptions& options) {
  const std::uint64_t n = options.samples.value_or(preset.n);
  std::vector<SweepSeries> out;
  for (const auto& s : preset.series) {
    out.push_back({s.label, sweep_tail(s.config, preset.thresholds, n, options.seed, {},
                                       {options.workers, 0.95})});
  }
  return out;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, std::span<const SweepSeries> series) {
  out << kCsvHeader << '\n';
  for (const auto& s : series) {
    for (const auto& point : s.result.grid) {
      const auto& e = point.estimate;
      out << to_string(s.result.config.variant) << ',' << csv_text(s.label) << ','
          << format_real(point.threshold) << ',' << e.n << ',' << e.hits << ','
          << format_real(e.p_hat) << ',' << format_real(e.ci_low) << ','
          << format_real(e.ci_high) << ',' << csv_cell(point.markov_bound) << ','
          << csv_cell(point.closed_form) << ',' << csv_cell(point.outage_lower_bound) << ','
          << e.master_seed << '\n';
    }
  }
}

std::string to_csv(std::span<const SweepSeries> series) {
  std::ostringstream os;
  write_csv(os, series);
  return os.str();
}

LogisticParams parse_logistic(const json& doc) {
  LogisticParams p;
  p.k_label = optional_field<int>(doc, "k_label", 1);
  p.a1 = required<double>(doc, "a1");
  p.a2 = required<double>(doc, "a2");
  p.c1 = required<double>(doc, "c1");
  p.c2 = required<double>(doc, "c2");
  p.validate();
  return p;
}

ScenarioConfig parse_scenario(const json& doc) {
  ScenarioConfig c;
  const auto name = required<std::string>(doc, "variant");
  const auto variant = parse_variant(name);
  if (!variant) throw std::invalid_argument("unknown variant '" + name + "'");
  c.variant = *variant;
  c.p_max_s = required<double>(doc, "p_max_s");
  switch (c.variant) {
    case Variant::NoRfi:
      c.sigma2 = required<double>(doc, "sigma2");
      break;
    case Variant::SingleRfi:
      c.p_min_i = required<double>(doc, "p_min_i");
      break;
    case Variant::MultiRfi:
    case Variant::PracticalSinr:
      c.p_tilde_min = required<double>(doc, "p_tilde_min");
      break;
  }
  c.u = optional_field<int>(doc, "u", 1);
  if (doc.contains("p_max_i")) c.p_max_i = required<double>(doc, "p_max_i");
  return c;
}

SweepConfig parse_sweep_config(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("sweep config must be a JSON object");
  SweepConfig cfg;
  auto add_series = [&cfg](const json& entry) {
    SeriesSpec spec;
    spec.config = parse_scenario(entry);
    spec.label = optional_field<std::string>(entry, "label", default_label(spec.config));
    cfg.series.push_back(spec);
  };
  if (doc.contains("series")) {
    if (!doc.at("series").is_array()) throw std::invalid_argument("field 'series' must be an array");
    for (const auto& entry : doc.at("series")) add_series(entry);
  } else if (doc.contains("scenario")) {
    add_series(doc.at("scenario"));
  } else {
    throw std::invalid_argument("missing field 'series' (or 'scenario')");
  }
  if (cfg.series.empty()) throw std::invalid_argument("field 'series' is empty");

  cfg.thresholds = optional_field<std::vector<double>>(doc, "thresholds", {});
  if (doc.contains("logistic")) cfg.logistic = parse_logistic(doc.at("logistic"));
  cfg.eta_min = optional_field<std::vector<double>>(doc, "eta_min", {});
  if (cfg.thresholds.empty() && (!cfg.logistic || cfg.eta_min.empty()))
    throw std::invalid_argument("need 'thresholds', or 'logistic' together with 'eta_min'");
  if (!cfg.thresholds.empty() && !cfg.eta_min.empty())
    throw std::invalid_argument("give either 'thresholds' or 'eta_min', not both");

  const auto samples = optional_field<std::int64_t>(doc, "samples", 1'000'000);
  if (samples < 1) throw std::invalid_argument("field 'samples' must be >= 1");
  cfg.n = static_cast<std::uint64_t>(samples);
  cfg.bounds = optional_field<bool>(doc, "bounds", false);
  cfg.shared_samples = optional_field<bool>(doc, "shared_samples", true);
  if (doc.contains("seed")) cfg.seed = required<std::uint64_t>(doc, "seed");
  return cfg;
}

std::vector<SweepSeries> run_sweep(const SweepConfig& cfg, const RunOptions& options) {
  std::vector<double> thresholds = cfg.thresholds;
  if (thresholds.empty()) {
    for (double eta : cfg.eta_min) thresholds.push_back(beta_threshold(*cfg.logistic, eta));
  }

  for (const auto& s : cfg.series) {
    if (cfg.bounds) {
      if (s.config.variant != Variant::MultiRfi && s.config.variant != Variant::PracticalSinr)
        throw std::invalid_argument("series '" + s.label +
                                    "': bound columns exist only for MultiRfi / PracticalSinr");
      if (s.config.u <= 1)
        throw ConditionError(ConditionId::PowerBudget,
                             "series '" + s.label + "': bound columns need U >= 2, got U = " +
                                 std::to_string(s.config.u));
      if (cfg.logistic) {
        for (double eta : cfg.eta_min) {
          const auto reports =
              check_conditions(*cfg.logistic, eta, s.config.p_max_s, s.config.p_tilde_min, s.config.u);
          for (std::size_t i = 0; i < 2; ++i)
            if (!reports[i].satisfied)
              throw ConditionError(reports[i].condition_id,
                                   "series '" + s.label + "', eta_min = " + format_real(eta) +
                                       ": " + reports[i].detail);
        }
      } else {
        for (double beta : thresholds)
          if (beta < 0.0)
            throw ConditionError(ConditionId::KappaAboveAlpha,
                                 "series '" + s.label + "': threshold " + format_real(beta) +
                                     " < 0");
      }
    }
    s.config.validate();
  }

  const std::uint64_t seed = cfg.seed.value_or(options.seed);
  const std::uint64_t n = options.samples.value_or(cfg.n);
  std::vector<SweepSeries> out;
  for (const auto& s : cfg.series) {
    out.push_back({s.label, sweep_tail(s.config, thresholds, n, seed,
                                       {cfg.shared_samples, cfg.bounds}, {options.workers, 0.95})});
  }
  return out;
}

json to_json(const BoundReport& report) {
  return {{"value", finite_or_string(report.value)},
          {"beta", finite_or_string(report.beta)},
          {"applicable", report.applicable},
          {"vacuous", report.vacuous},
          {"conditions", conditions_json(report.conditions)}};
}

json bound_report_json(const json& doc) {
  const double p_max_s = required<double>(doc, "p_max_s");
  const double p_tilde_min = required<double>(doc, "p_tilde_min");
  const int u = required<int>(doc, "u");
  json out;
  out["p_max_s"] = p_max_s;
  out["p_tilde_min"] = p_tilde_min;
  out["u"] = u;

  try {
    if (doc.contains("logistic")) {
      const auto params = parse_logistic(doc.at("logistic"));
      const double eta = required<double>(doc, "eta_min");
      out["k_label"] = params.k_label;
      out["eta_min"] = eta;
      out["kappa"] = finite_or_string(kappa_of(params, eta));
      out["alpha"] = finite_or_string(alpha_of(params));
      out["conditions"] = conditions_json(check_conditions(params, eta, p_max_s, p_tilde_min, u));
      out["markov_upper_bound"] = to_json(markov_upper_bound(params, eta, p_max_s, p_tilde_min, u));
      out["outage_lower_bound"] = to_json(outage_lower_bound(params, eta, p_max_s, p_tilde_min, u));
    } else {
      const double beta = required<double>(doc, "beta");
      out["conditions"] = conditions_json(check_threshold_conditions(beta, p_max_s, p_tilde_min, u));
      out["markov_upper_bound"] = to_json(markov_upper_bound_at(beta, p_max_s, p_tilde_min, u));
      out["outage_lower_bound"] = to_json(outage_lower_bound_at(beta, p_max_s, p_tilde_min, u));
    }
  } catch (const ConditionError& e) {
    out["error"] = {{"condition", to_string(e.condition())}, {"message", e.what()}};
  }

  if (doc.contains("family")) {
    std::vector<LogisticParams> family;
    for (const auto& m : doc.at("family")) family.push_back(parse_logistic(m));
    const double eta = required<double>(doc, "eta_min");
    try {
      out["optimal_k"] = select_optimal_k(family, eta);
    } catch (const ConditionError& e) {
      out["optimal_k_error"] = e.what();
    }
  }
  return out;
}

}  // namespace semlim
