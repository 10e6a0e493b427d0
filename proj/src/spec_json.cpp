#include "flowca/spec_json.hpp"

#include <set>

#include "json.hpp"

namespace flowca {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, std::string_view where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw error(errc::bad_format, "unknown field '" + key + "' in " + std::string(where));
        }
    }
}

const json& require(const json& obj, const char* key, std::string_view where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw error(errc::bad_format, "missing field '" + std::string(key) + "' in " + std::string(where));
    }
    return *it;
}

} // namespace

RuleSpec parse_spec_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw error(errc::bad_format, std::string("spec is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw error(errc::bad_format, "spec must be a JSON object");
        reject_unknown(doc, {"neighborhood", "omega", "lambda"}, "spec");
        RuleSpec spec;
        spec.kind = parse_neighborhood(require(doc, "neighborhood", "spec").get<std::string>());
        spec.omega = parse_omega(require(doc, "omega", "spec").get<std::string>());
        const json& lambda = require(doc, "lambda", "spec");
        if (!lambda.is_array()) throw error(errc::bad_format, "'lambda' must be an array");
        for (const json& item : lambda) {
            if (!item.is_object()) throw error(errc::bad_format, "lambda entries must be objects");
            reject_unknown(item, {"direction", "shifted", "condition"}, "lambda entry");
            TrafficRule rule;
            rule.direction = parse_direction(require(item, "direction", "lambda entry").get<std::string>());
            rule.shifted = require(item, "shifted", "lambda entry").get<bool>();
            const auto patterns = require(item, "condition", "lambda entry").get<std::vector<std::string>>();
            rule.condition = Condition::from_strings(patterns);
            spec.lambda.push_back(rule);
        }
        return spec;
    } catch (const json::exception& e) {
        throw error(errc::bad_format, std::string("malformed spec: ") + e.what());
    }
}

std::string spec_to_json(const RuleSpec& spec, int indent) {
    const RuleSpec c = spec.canonical();
    nlohmann::ordered_json lambda = nlohmann::ordered_json::array();
    for (const TrafficRule& r : c.lambda) {
        nlohmann::ordered_json item;
        item["direction"] = std::string(to_string(r.direction));
        item["shifted"] = r.shifted;
        item["condition"] = r.condition.to_strings();
        lambda.push_back(std::move(item));
    }
    nlohmann::ordered_json doc;
    doc["neighborhood"] = std::string(to_string(spec.kind));
    doc["omega"] = to_string(spec.omega);
    doc["lambda"] = lambda;
    return doc.dump(indent);
}

} // namespace flowca
