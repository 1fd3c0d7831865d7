#include <doctest.h>

#include <json.hpp>

#include <random>

#include "docforge/error.hpp"
#include "docforge/specio.hpp"

using namespace docforge;

namespace {

ApiSpec github() {
  ApiSpec s;
  s.base = *parse_base_url("https://api.github.com");
  s.endpoints = {{parse_template("/users/{username}/orgs"), {HttpMethod::Get}}};
  s.source = "github";
  return s;
}

}  // namespace

TEST_CASE("emit writes a swagger document") {
  auto doc = nlohmann::json::parse(emit_spec(github()));
  CHECK(doc["swagger"] == "2.0");
  CHECK(doc["host"] == "api.github.com");
  CHECK(doc["schemes"] == nlohmann::json::array({"https"}));
  CHECK(doc["info"]["title"] == "github");
  CHECK(doc["info"]["version"] == "extracted");
  REQUIRE(doc["paths"].size() == 1);
  const auto& op = doc["paths"]["/users/{username}/orgs"];
  REQUIRE(op.size() == 1);
  REQUIRE(op.contains("get"));
  REQUIRE(op["get"]["parameters"].size() == 1);
  CHECK(op["get"]["parameters"][0]["name"] == "username");
  CHECK(op["get"]["parameters"][0]["in"] == "path");
  CHECK(op["get"]["parameters"][0]["required"] == true);
}

TEST_CASE("emit layout is stable") {
  auto text = emit_spec(github());
  CHECK(text.back() == '\n');
  CHECK(text.find("\n  \"basePath\"") != std::string::npos);
  CHECK(text.find("\"basePath\"") < text.find("\"host\""));
  CHECK(text == emit_spec(github()));
  ApiSpec empty = github();
  empty.endpoints.clear();
  CHECK(nlohmann::json::parse(emit_spec(empty))["paths"] == nlohmann::json::object());
}

TEST_CASE("parse reads base URLs and endpoints") {
  auto s = parse_spec(R"({"schemes": ["https"], "host": "api.instagram.com", "basePath": "/v1", "paths": {}})");
  CHECK(s.base.full() == "https://api.instagram.com/v1");
  CHECK(parse_spec(R"({"host": "slack.com", "paths": {}})").base.scheme == "https");
  auto slack = parse_spec(R"({"host": "slack.com", "basePath": "/api", "x-extra": 1,
                              "paths": {"/users.list": {"get": {}, "parameters": []}}})");
  REQUIRE(slack.endpoints.size() == 1);
  CHECK(slack.endpoints[0].path_template.canonical() == "/users.list");
  CHECK(slack.endpoints[0].methods == MethodSet{HttpMethod::Get});
  auto colon = parse_spec(R"({"host": "h", "paths": {"/a/:id": {"DELETE": {}}}})");
  CHECK(colon.endpoints[0].path_template.canonical() == "/a/{id}");
  CHECK(colon.endpoints[0].methods == MethodSet{HttpMethod::Delete});
}

TEST_CASE("parse errors") {
  try {
    parse_spec("{\n  \"host\": \"x\",\n  \"paths\": {,}\n}");
    FAIL("expected an error");
  } catch (const Error& e) {
    std::string what = e.what();
    CHECK(what.find("line 3") != std::string::npos);
    CHECK(what.find("column") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_spec(R"({"paths": {}})"), Error);
  CHECK_THROWS_AS(parse_spec(R"({"host": "x"})"), Error);
  CHECK_THROWS_AS(parse_spec("[]"), Error);
}

TEST_CASE("validate_spec") {
  auto s = github();
  CHECK_NOTHROW(validate_spec(s));
  auto dup = s;
  dup.endpoints.push_back(s.endpoints[0]);
  CHECK_THROWS_AS(validate_spec(dup), Error);
  auto empty_methods = s;
  empty_methods.endpoints[0].methods.clear();
  CHECK_THROWS_AS(validate_spec(empty_methods), Error);
  auto bad_literal = s;
  bad_literal.endpoints[0].path_template.segments[0].text = ":x";
  CHECK_THROWS_AS(validate_spec(bad_literal), Error);
  CHECK_THROWS_AS(emit_spec(dup), Error);
}

TEST_CASE("normalize_endpoints merges duplicates") {
  std::vector<Endpoint> eps{{parse_template("/b"), {HttpMethod::Get}},
                            {parse_template("/a"), {HttpMethod::Post}},
                            {parse_template("/b"), {HttpMethod::Put}}};
  normalize_endpoints(eps);
  REQUIRE(eps.size() == 2);
  CHECK(eps[0].path_template.canonical() == "/a");
  CHECK(eps[1].methods == MethodSet{HttpMethod::Get, HttpMethod::Put});
}

TEST_CASE("parse inverts emit") {
  std::mt19937 rng(21);
  const std::vector<std::string> words{"users", "repos", "{id}", "{name}", "users.list", "v2", "a-b"};
  for (int n = 0; n < 200; ++n) {
    ApiSpec s;
    s.base = *parse_base_url(rng() % 2 ? "https://api.example.com/v1" : "http://localhost:8080");
    s.source = "random";
    std::vector<Endpoint> eps;
    for (int k = rng() % 6; k > 0; --k) {
      std::string text;
      std::set<std::string> used;
      for (int len = 1 + rng() % 4; len > 0; --len) {
        auto w = words[rng() % words.size()];
        if (w.front() == '{' && !used.insert(w).second) w = "lit";
        text += "/" + w;
      }
      MethodSet m;
      for (auto x : kAllMethods)
        if (rng() % 4 == 0) m.insert(x);
      if (m.empty()) m.insert(HttpMethod::Get);
      eps.push_back({parse_template(text), m});
    }
    normalize_endpoints(eps);
    s.endpoints = eps;
    auto text = emit_spec(s);
    auto back = parse_spec(text);
    CHECK(back.base == s.base);
    CHECK(back.endpoints == s.endpoints);
    CHECK(emit_spec(back) == text);
  }
}
