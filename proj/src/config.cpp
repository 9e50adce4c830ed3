#include "seqtest/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace seqtest {

using nlohmann::json;

namespace {

const json& require_key(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError("config: missing key '" + where + key + "'");
    }
    return obj.at(key);
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    const json& v = require_key(obj, key, where);
    if (!v.is_number()) throw ConfigError("config: key '" + where + key + "' must be a number");
    return v.get<double>();
}

long require_integer(const json& obj, const std::string& key, const std::string& where) {
    const json& v = require_key(obj, key, where);
    if (!v.is_number_integer()) {
        throw ConfigError("config: key '" + where + key + "' must be an integer");
    }
    return v.get<long>();
}

LossModel parse_loss(const json& obj) {
    const json& variant = require_key(obj, "variant", "loss.");
    if (!variant.is_string()) throw ConfigError("config: key 'loss.variant' must be a string");
    const std::string name = variant.get<std::string>();
    if (name == "cross_entropy") return LossModel::cross_entropy();
    if (name == "scaled_quadratic") {
        const json& params = require_key(obj, "params", "loss.");
        return LossModel::scaled_quadratic(require_number(params, "beta", "loss.params."));
    }
    if (name == "classic") {
        const json& params = require_key(obj, "params", "loss.");
        return LossModel::classic(require_number(params, "a1", "loss.params."),
                                  require_number(params, "a2", "loss.params."));
    }
    throw ConfigError("config: unknown loss.variant '" + name +
                      "' (expected cross_entropy, scaled_quadratic or classic)");
}

} // namespace

void ProblemConfig::validate() const {
    if (!(cost > 0.0)) throw ConfigError("config: c must be positive");
    if (!(horizon > 0.0)) throw ConfigError("config: T must be positive");
    if (!(prior > 0.0) || !(prior < 1.0)) {
        throw ConfigError("config: prior must lie strictly inside (0,1)");
    }
    if (!(mollifier_width > 0.0)) throw ConfigError("config: mollifier.width must be positive");
    if (grid.n_space < 2 || grid.n_time < 2) {
        throw ConfigError("config: grid.n_space and grid.n_time must be at least 2");
    }
    if (mc.paths < 1) throw ConfigError("config: mc.paths must be positive");
    if (!(mc.dt > 0.0) || mc.dt > horizon / 10.0) {
        throw ConfigError("config: mc.dt must lie in (0, T/10]");
    }
    if (!(fixed_point.damping > 0.0) || !(fixed_point.damping <= 1.0)) {
        throw ConfigError("config: fixed_point.damping must lie in (0,1]");
    }
    if (!(fixed_point.tol > 0.0)) throw ConfigError("config: fixed_point.tol must be positive");
    if (fixed_point.max_iter < 1) throw ConfigError("config: fixed_point.max_iter must be positive");
}

ProblemConfig parse_config_json(const std::string& text) {
    json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded()) throw ConfigError("config: file is not valid JSON");
    if (root.is_object() && root.contains("config")) root = root.at("config");

    ProblemConfig cfg;
    try {
        cfg.loss = parse_loss(require_key(root, "loss", ""));
        const json& sig = require_key(root, "signal", "");
        cfg.signal = SignalModel(require_number(sig, "lambda0", "signal."),
                                 require_number(sig, "lambda1", "signal."));
        cfg.mollifier_width = require_number(require_key(root, "mollifier", ""), "width",
                                             "mollifier.");
        cfg.cost = require_number(root, "c", "");
        cfg.horizon = require_number(root, "T", "");
        cfg.prior = require_number(root, "prior", "");
        const json& grid = require_key(root, "grid", "");
        cfg.grid.n_space = static_cast<int>(require_integer(grid, "n_space", "grid."));
        cfg.grid.n_time = static_cast<int>(require_integer(grid, "n_time", "grid."));
        const json& mc = require_key(root, "mc", "");
        cfg.mc.paths = require_integer(mc, "paths", "mc.");
        cfg.mc.dt = require_number(mc, "dt", "mc.");
        cfg.mc.seed = static_cast<std::uint64_t>(require_integer(mc, "seed", "mc."));
        const json& fp = require_key(root, "fixed_point", "");
        cfg.fixed_point.damping = require_number(fp, "damping", "fixed_point.");
        cfg.fixed_point.tol = require_number(fp, "tol", "fixed_point.");
        cfg.fixed_point.max_iter = static_cast<int>(require_integer(fp, "max_iter", "fixed_point."));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ProblemConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

std::string config_to_json_string(const ProblemConfig& cfg) {
    json j;
    json loss;
    loss["variant"] = cfg.loss.name();
    if (cfg.loss.variant() == LossVariant::kScaledQuadratic) {
        loss["params"] = json{{"beta", cfg.loss.beta()}};
    } else if (cfg.loss.variant() == LossVariant::kClassic) {
        loss["params"] = json{{"a1", cfg.loss.a1()}, {"a2", cfg.loss.a2()}};
    }
    j["loss"] = loss;
    j["signal"] = json{{"lambda0", cfg.signal.lambda0}, {"lambda1", cfg.signal.lambda1}};
    j["mollifier"] = json{{"width", cfg.mollifier_width}};
    j["c"] = cfg.cost;
    j["T"] = cfg.horizon;
    j["prior"] = cfg.prior;
    j["grid"] = json{{"n_space", cfg.grid.n_space}, {"n_time", cfg.grid.n_time}};
    j["mc"] = json{{"paths", cfg.mc.paths}, {"dt", cfg.mc.dt},
                   {"seed", static_cast<std::int64_t>(cfg.mc.seed)}};
    j["fixed_point"] = json{{"damping", cfg.fixed_point.damping},
                            {"tol", cfg.fixed_point.tol},
                            {"max_iter", cfg.fixed_point.max_iter}};
    return j.dump(2);
}

std::string apply_override(const std::string& json_text, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("config: override must look like key.path=value, got '" + assignment +
                          "'");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json root = json::parse(json_text, nullptr, false);
    if (root.is_discarded()) throw ConfigError("config: file is not valid JSON");
    json* node = root.is_object() && root.contains("config") ? &root.at("config") : &root;

    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
        if (key.empty()) throw ConfigError("config: empty key segment in override '" + path + "'");
        if (dot == std::string::npos) {
            json value = json::parse(raw, nullptr, false);
            if (value.is_discarded()) value = raw;  // treat unparseable values as strings
            (*node)[key] = value;
            break;
        }
        if (!node->contains(key) || !(*node)[key].is_object()) (*node)[key] = json::object();
        node = &(*node)[key];
        start = dot + 1;
    }
    return root.dump(2);
}

} // namespace seqtest
