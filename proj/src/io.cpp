#include "seqlab/io.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "seqlab/error.hpp"

namespace seqlab {

namespace {

using nlohmann::json;

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("space field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

WeightRule weights_from_json(const json& w) {
  if (!w.is_object() || !w.contains("rule") || !w.at("rule").is_string()) {
    throw ConfigError("weights must be an object with a string 'rule'");
  }
  const std::string rule = w.at("rule").get<std::string>();
  if (rule == "harmonic") return WeightRule::harmonic();
  if (rule == "power") {
    if (!w.contains("s")) throw ConfigError("power weights need 's'");
    return WeightRule::power(number(w, "s", 0.0));
  }
  if (rule == "list") {
    if (!w.contains("values") || !w.at("values").is_array()) throw ConfigError("list weights need a 'values' array");
    std::vector<double> values;
    for (const json& v : w.at("values")) {
      if (!v.is_number()) throw ConfigError("weight values must be numbers");
      values.push_back(v.get<double>());
    }
    return WeightRule::list(std::move(values));
  }
  throw ConfigError("unknown weight rule '" + rule + "'");
}

json weights_to_json(const WeightRule& w) {
  switch (w.kind()) {
    case WeightRule::Kind::Harmonic:
      return {{"rule", "harmonic"}};
    case WeightRule::Kind::Power:
      return {{"rule", "power"}, {"s", w.exponent()}};
    case WeightRule::Kind::List:
      return {{"rule", "list"}, {"values", w.values()}};
  }
  return {};
}

}  // namespace

SpaceSpec space_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("space description must be a JSON object");
  if (!j.contains("family") || !j.at("family").is_string()) throw ConfigError("space description needs a 'family'");
  static const std::set<std::string> known = {"family", "p", "weights", "theta", "unconditional", "symmetric"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown space field '" + key + "'");
  }
  const std::string family = j.at("family").get<std::string>();
  auto reject = [&](const char* key) {
    if (j.contains(key)) throw ConfigError(std::string("field '") + key + "' does not apply to family " + family);
  };
  SpaceSpec spec = [&] {
    if (family == "lp") {
      reject("weights");
      reject("theta");
      if (!j.contains("p")) throw ConfigError("lp needs 'p'");
      return SpaceSpec::lp(number(j, "p", 0.0));
    }
    if (family == "c0" || family == "summing") {
      reject("p");
      reject("weights");
      reject("theta");
      return family == "c0" ? SpaceSpec::c0() : SpaceSpec::summing();
    }
    if (family == "lorentz") {
      reject("theta");
      const WeightRule w = j.contains("weights") ? weights_from_json(j.at("weights")) : WeightRule::harmonic();
      return SpaceSpec::lorentz(w, number(j, "p", 1.0));
    }
    if (family == "tsirelson") {
      reject("p");
      reject("weights");
      return SpaceSpec::tsirelson(number(j, "theta", 0.5));
    }
    throw ConfigError("unknown family '" + family + "'");
  }();
  for (const char* flag : {"unconditional", "symmetric"}) {
    if (!j.contains(flag)) continue;
    if (!j.at(flag).is_boolean()) throw ConfigError(std::string("'") + flag + "' must be a boolean");
    const bool expected = std::string(flag) == "unconditional" ? spec.unconditional() : spec.symmetric();
    if (j.at(flag).get<bool>() != expected) {
      throw ConfigError(std::string("'") + flag + "' contradicts family " + family);
    }
  }
  return spec;
}

json to_json(const SpaceSpec& spec) {
  json j;
  j["family"] = family_name(spec.family());
  switch (spec.family()) {
    case Family::Lp:
      j["p"] = spec.p();
      break;
    case Family::Lorentz:
      j["p"] = spec.p();
      j["weights"] = weights_to_json(spec.weights());
      break;
    case Family::Tsirelson:
      j["theta"] = spec.theta();
      break;
    default:
      break;
  }
  j["unconditional"] = spec.unconditional();
  j["symmetric"] = spec.symmetric();
  return j;
}

SpaceSpec load_space(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open space file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return space_from_json(j);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_vector(const CoeffVector& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) out += ';';
    out += format_double(v[k]);
  }
  return out;
}

json to_json(const CoeffVector& v) { return json(v.data()); }

json to_json(const GrowthTable& table) {
  json rows = json::array();
  for (const GrowthRow& r : table.rows) {
    rows.push_back({{"n", r.n}, {"lambda", r.lambda}, {"mu", r.mu}, {"bracket", r.bracket}, {"mu_exact", r.mu_exact}});
  }
  json ratios = json::array();
  for (const auto& [mn, value] : table.ratios) ratios.push_back({{"m", mn.first}, {"n", mn.second}, {"ratio", value}});
  return {{"rows", rows}, {"ratios", ratios}};
}

json to_json(const PowerFit& fit) {
  json j{{"slope", fit.slope}, {"intercept", fit.intercept}, {"max_deviation", fit.max_deviation}, {"c0_flag", fit.c0_flag}};
  j["exponent"] = fit.exponent ? json(*fit.exponent) : json(nullptr);
  return j;
}

json to_json(const SandwichResult& s) {
  return {{"upper_ok", s.upper_ok},   {"lower_ok", s.lower_ok},   {"max_ratio", s.max_ratio},
          {"min_ratio", s.min_ratio}, {"max_witness_length", s.max_witness.size()},
          {"min_witness_length", s.min_witness.size()},           {"tested", s.tested}};
}

json to_json(const EquivalenceEstimate& e) {
  return {{"K_lower", e.k_lower},
          {"ratio_up", e.ratio_up},
          {"ratio_down", e.ratio_down},
          {"witness_up", to_json(e.witness_up)},
          {"witness_down", to_json(e.witness_down)},
          {"samples", e.samples},
          {"seed", e.seed},
          {"exhausted", e.exhausted}};
}

json to_json(const ClassifyConfig& c) {
  return {{"n_values", c.n_values},
          {"n_max", c.n_max},
          {"lambda_bound", c.lambda_bound},
          {"K_threshold", c.k_threshold},
          {"dev_threshold", c.dev_threshold},
          {"sweep_N", c.sweep_n},
          {"m_max", c.m_max},
          {"evaluations", c.evaluations},
          {"dual_evaluations", c.dual.evaluations},
          {"dual_restarts", c.dual.restarts},
          {"sandwich_samples", c.sandwich_samples},
          {"scale", c.scale},
          {"seed", c.seed}};
}

json to_json(const Verdict& v) {
  json evidence;
  evidence["lambda_at_n_max"] = v.lambda_at_max;
  evidence["growth_table"] = to_json(v.table);
  evidence["lambda_fit"] = v.fit ? to_json(*v.fit) : json(nullptr);
  evidence["mu_fit"] = v.dual_fit ? to_json(*v.dual_fit) : json(nullptr);
  evidence["sweep"] = {{"generators", v.generators},
                       {"K_sup", v.k_evidence},
                       {"worst_generator", v.worst.generator},
                       {"worst_alpha", to_json(v.worst.alpha)},
                       {"estimate", to_json(v.worst.estimate)}};
  evidence["sandwich"] = v.sandwich ? to_json(*v.sandwich) : json(nullptr);
  json j;
  j["class"] = verdict_name(v.verdict);
  j["p_hat"] = v.p_hat ? json(*v.p_hat) : json(nullptr);
  j["K_evidence"] = v.k_evidence;
  j["summary"] = v.summary;
  j["witnesses"] = evidence;
  j["config_echo"] = to_json(v.config);
  return j;
}

}  // namespace seqlab
