#include "replidyn/config.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace replidyn {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key))
    throw ConfigError("missing required field \"" + key + "\"");
  if (!j.at(key).is_number())
    throw ConfigError("field \"" + key + "\" must be a number");
  return j.at(key).get<double>();
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ConfigError("unknown field \"" + item.key() + "\" in " + where);
}

IntegratorConfig parse_integrator(const json& j) {
  if (!j.is_object())
    throw ConfigError("field \"integrator\" must be an object");
  reject_unknown(j, {"h", "t_max", "eps_conv", "record_stride"},
                 "\"integrator\"");
  IntegratorConfig cfg;
  if (j.contains("h")) cfg.h = require_number(j, "h");
  if (j.contains("t_max")) cfg.t_max = require_number(j, "t_max");
  if (j.contains("eps_conv")) cfg.eps_conv = require_number(j, "eps_conv");
  if (j.contains("record_stride")) {
    if (!j.at("record_stride").is_number_integer())
      throw ConfigError("field \"record_stride\" must be an integer");
    cfg.record_stride = j.at("record_stride").get<int>();
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"alpha", "beta", "gamma", "delta", "epsilon", "eta", "l", "n",
                  "integrator", "resolution", "seed"},
                 "config");

  const double alpha = require_number(j, "alpha");
  const double beta = require_number(j, "beta");
  const double gamma = require_number(j, "gamma");
  const double delta = require_number(j, "delta");
  const double epsilon = require_number(j, "epsilon");
  const double eta = require_number(j, "eta");
  const double l = require_number(j, "l");
  const double n = require_number(j, "n");
  const ModelParams params = [&] {
    try {
      return ModelParams(alpha, beta, gamma, delta, epsilon, eta, l, n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  RunConfig cfg{params, {}, 100, 42};
  if (j.contains("integrator")) cfg.integrator = parse_integrator(j.at("integrator"));
  if (j.contains("resolution")) {
    if (!j.at("resolution").is_number_integer())
      throw ConfigError("field \"resolution\" must be an integer");
    cfg.resolution = j.at("resolution").get<int>();
    if (cfg.resolution < 10)
      throw ConfigError("field \"resolution\" must be at least 10");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer() || j.at("seed").get<long long>() < 0)
      throw ConfigError("field \"seed\" must be a nonnegative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace replidyn
