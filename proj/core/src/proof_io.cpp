#include <nlohmann/json.hpp>

#include "pcr/calculus.hpp"
#include "pcr/parse.hpp"

namespace pcr {

namespace {

using Json = nlohmann::ordered_json;

Json encode(const Proof& p) {
  Json j;
  j["conclusion"] = to_string(p.conclusion);
  j["rule"] = std::string(to_string(p.rule));
  Json params = Json::object();
  switch (p.rule) {
    case RuleTag::ExchL:
    case RuleTag::ExchR:
      params["index"] = p.params.index;
      break;
    case RuleTag::Cut:
      if (p.params.cut) params["cut"] = to_string(*p.params.cut);
      break;
    case RuleTag::AllL:
    case RuleTag::ExR:
      if (!p.params.var.empty()) params["var"] = p.params.var;
      if (p.params.instance) params["instance"] = to_string(*p.params.instance);
      break;
    case RuleTag::AllR:
    case RuleTag::ExL:
      params["eigen"] = p.params.eigen;
      break;
    case RuleTag::AxRSubst:
      if (p.params.position) params["position"] = *p.params.position;
      break;
    default:
      break;
  }
  j["params"] = std::move(params);
  Json premises = Json::array();
  for (const auto& q : p.premises) premises.push_back(encode(q));
  j["premises"] = std::move(premises);
  return j;
}

std::string text_field(const Json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_string())
    throw MalformedProof(path + ": missing string field '" + key + "'");
  return j[key].get<std::string>();
}

std::size_t index_field(const Json& j, const char* key, const std::string& path) {
  if (!j[key].is_number_unsigned()) throw MalformedProof(path + ": field '" + key + "' must be a natural number");
  return j[key].get<std::size_t>();
}

Formula formula_field(const Json& j, const char* key, const std::string& path) {
  try {
    return parse_formula(text_field(j, key, path));
  } catch (const ParseError& e) {
    throw MalformedProof(path + ": field '" + key + "': " + e.what());
  }
}

Proof decode(const Json& j, const std::string& path) {
  if (!j.is_object()) throw MalformedProof(path + ": proof node must be an object");
  Proof p;
  try {
    p.conclusion = parse_sequent(text_field(j, "conclusion", path));
  } catch (const ParseError& e) {
    throw MalformedProof(path + ": conclusion: " + e.what());
  }
  const std::string rule = text_field(j, "rule", path);
  auto tag = rule_from_string(rule);
  if (!tag) throw MalformedProof(path + ": unknown rule '" + rule + "'");
  p.rule = *tag;
  if (j.contains("params")) {
    const Json& params = j["params"];
    if (!params.is_object()) throw MalformedProof(path + ": params must be an object");
    if (params.contains("index")) p.params.index = index_field(params, "index", path);
    if (params.contains("position")) p.params.position = index_field(params, "position", path);
    if (params.contains("cut")) p.params.cut = formula_field(params, "cut", path);
    if (params.contains("instance")) p.params.instance = formula_field(params, "instance", path);
    if (params.contains("var")) p.params.var = text_field(params, "var", path);
    if (params.contains("eigen")) p.params.eigen = text_field(params, "eigen", path);
  }
  if (j.contains("premises")) {
    const Json& premises = j["premises"];
    if (!premises.is_array()) throw MalformedProof(path + ": premises must be an array");
    for (std::size_t i = 0; i < premises.size(); ++i)
      p.premises.push_back(decode(premises[i], path + "." + std::to_string(i)));
  }
  return p;
}

}  // namespace

std::string proof_to_json(const Proof& p, int indent) { return encode(p).dump(indent); }

Proof proof_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedProof(std::string("invalid JSON: ") + e.what());
  }
  return decode(j, "root");
}

}  // namespace pcr
