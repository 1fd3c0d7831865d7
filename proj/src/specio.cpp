#include "docforge/specio.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <json.hpp>
#include <sstream>

#include "docforge/error.hpp"
#include "docforge/scan.hpp"
#include "docforge/url.hpp"

namespace docforge {
namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string lowercase_method(HttpMethod m) { return to_lower(to_string(m)); }

}  // namespace

void normalize_endpoints(std::vector<Endpoint>& endpoints) {
  std::map<std::string, Endpoint> merged;
  for (auto& e : endpoints) {
    auto [it, inserted] = merged.try_emplace(e.path_template.canonical(), e);
    if (!inserted) it->second.methods.insert(e.methods.begin(), e.methods.end());
  }
  endpoints.clear();
  for (auto& [_, e] : merged) endpoints.push_back(std::move(e));
}

void validate_spec(const ApiSpec& spec) {
  std::set<std::string> seen;
  for (const auto& e : spec.endpoints) {
    auto canonical = e.path_template.canonical();
    if (!seen.insert(canonical).second) throw Error("duplicate path template " + canonical);
    if (e.methods.empty()) throw Error("no method for " + canonical);
    for (const auto& seg : e.path_template.segments) {
      if (seg.text.empty()) throw Error("empty segment in " + canonical);
      if (seg.text.find('/') != std::string::npos || contains_marker(seg.text)) {
        throw Error("segment cannot be serialized in " + canonical);
      }
      if (!seg.is_parameter() && seg.text.front() == ':') {
        throw Error("literal segment starting with ':' in " + canonical);
      }
    }
  }
}

std::string emit_spec(const ApiSpec& spec) {
  validate_spec(spec);
  json paths = json::object();
  for (const auto& e : spec.endpoints) {
    json parameters = json::array();
    for (const auto& seg : e.path_template.segments) {
      if (!seg.is_parameter()) continue;
      parameters.push_back({{"name", seg.text}, {"in", "path"}, {"required", true}, {"type", "string"}});
    }
    json operations = json::object();
    for (auto m : e.methods) {
      json op = json::object();
      if (!parameters.empty()) op["parameters"] = parameters;
      operations[lowercase_method(m)] = std::move(op);
    }
    paths[e.path_template.canonical()] = std::move(operations);
  }
  json doc = {
      {"swagger", "2.0"},
      {"schemes", json::array({spec.base.scheme})},
      {"host", spec.base.host},
      {"basePath", spec.base.base_path.empty() ? std::string("/") : spec.base.base_path},
      {"info", {{"title", spec.source}, {"version", "extracted"}}},
      {"paths", std::move(paths)},
  };
  return doc.dump(2) + "\n";
}

ApiSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error("invalid JSON at line " + std::to_string(line) + ", column " + std::to_string(column));
  }
  if (!doc.is_object()) throw Error("spec document is not a JSON object");
  if (!doc.contains("host") || !doc["host"].is_string()) throw Error("spec document has no host");
  if (!doc.contains("paths") || !doc["paths"].is_object()) throw Error("spec document has no paths");

  std::string scheme = "https";
  if (doc.contains("schemes") && doc["schemes"].is_array() && !doc["schemes"].empty() &&
      doc["schemes"][0].is_string()) {
    scheme = to_lower(doc["schemes"][0].get<std::string>());
  }
  std::string base_path;
  if (doc.contains("basePath") && doc["basePath"].is_string()) base_path = doc["basePath"].get<std::string>();
  auto base = parse_base_url(scheme + "://" + doc["host"].get<std::string>() + base_path);
  if (!base) throw Error("spec document has an unusable host or basePath");

  ApiSpec spec;
  spec.base = *base;
  if (doc.contains("info") && doc["info"].is_object() && doc["info"].contains("title") &&
      doc["info"]["title"].is_string()) {
    spec.source = doc["info"]["title"].get<std::string>();
  }
  for (const auto& [key, item] : doc["paths"].items()) {
    if (!item.is_object()) continue;
    MethodSet methods;
    for (const auto& [name, _] : item.items()) {
      if (auto m = parse_method(name)) methods.insert(*m);
    }
    if (methods.empty()) continue;
    spec.endpoints.push_back({parse_template(key), std::move(methods)});
  }
  normalize_endpoints(spec.endpoints);
  return spec;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("cannot write " + path.string());
}

ApiSpec read_spec_file(const std::filesystem::path& path) {
  try {
    return parse_spec(read_text_file(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace docforge
