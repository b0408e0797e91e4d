#include "chain_rivalry/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace chain_rivalry {

namespace {

using nlohmann::json;

double read_number(const json& doc, const char* key, bool required) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        if (required) throw ConfigError(std::string("config is missing required key '") + key + "'");
        return 0.0;
    }
    if (!it->is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
    return it->get<double>();
}

}  // namespace

ModelParams params_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    for (const auto& [key, _] : doc.items()) {
        bool known = key == "d_applies_to";
        for (auto name : kParamNames) known = known || key == name;
        if (!known) throw ConfigError("config has unknown key '" + key + "'");
    }

    ModelParams p;
    p.alpha = read_number(doc, "alpha", true);
    p.s = read_number(doc, "s", true);
    p.k = read_number(doc, "k", true);
    p.n1 = read_number(doc, "n1", true);
    p.n2 = read_number(doc, "n2", true);
    p.n3 = read_number(doc, "n3", true);
    p.d = read_number(doc, "d", false);
    p.subsidy_p2 = read_number(doc, "subsidy_p2", false);
    p.subsidy_p3 = read_number(doc, "subsidy_p3", false);
    if (auto it = doc.find("d_applies_to"); it != doc.end()) {
        if (!it->is_string()) throw ConfigError("config key 'd_applies_to' must be a string");
        try {
            p.d_scope = parse_quality_scope(it->get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    return p;
}

ModelParams load_params(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return params_from_json_text(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string params_to_json_text(const ModelParams& p, int indent) {
    json doc = json::object();
    for (auto name : kParamNames) doc[std::string(name)] = p.get(name);
    doc["d_applies_to"] = std::string(to_string(p.d_scope));
    return doc.dump(indent);
}

}  // namespace chain_rivalry
