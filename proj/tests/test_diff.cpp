#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <random>

#include "docforge/diff.hpp"

namespace fs = std::filesystem;
using namespace docforge;

namespace {

ApiSpec spec(std::string_view base, std::initializer_list<std::pair<std::string_view, MethodSet>> eps) {
  ApiSpec s;
  s.base = *parse_base_url(base);
  for (const auto& [t, m] : eps) s.endpoints.push_back({parse_template(t), m});
  normalize_endpoints(s.endpoints);
  return s;
}

const MethodSet kGet{HttpMethod::Get};

std::set<std::string> canon(const std::vector<PathTemplate>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(t.canonical());
  return out;
}

ApiSpec random_spec(std::mt19937& rng) {
  const std::vector<std::string> words{"users", "repos", "{id}", "{x}", "orgs", "v2"};
  ApiSpec s;
  s.base = *parse_base_url("https://api.example.com");
  for (int k = rng() % 6; k > 0; --k) {
    std::string text;
    for (int len = 1 + rng() % 3; len > 0; --len) text += "/" + words[rng() % words.size()];
    auto t = parse_template(text);
    for (std::size_t i = 0; i < t.segments.size(); ++i)
      if (t.segments[i].is_parameter()) t.segments[i].text = "p" + std::to_string(i);
    MethodSet m{rng() % 2 ? HttpMethod::Get : HttpMethod::Post};
    s.endpoints.push_back({t, m});
  }
  normalize_endpoints(s.endpoints);
  return s;
}

}  // namespace

TEST_CASE("parameter names are ignored") {
  auto r = diff_specs(spec("https://api.github.com", {{"/users/{username}/orgs", kGet}}),
                      spec("https://api.github.com", {{"/users/{login}/orgs", kGet}}));
  CHECK(r.template_matches.size() == 1);
  CHECK(r.generated_only.empty());
  CHECK(r.existing_only.empty());
  CHECK(r.clean());
  CHECK(same_shape(parse_template("/a/{x}"), parse_template("/a/{y}")));
  CHECK_FALSE(same_shape(parse_template("/a/{x}"), parse_template("/a/x")));
  CHECK_FALSE(same_shape(parse_template("/a/{x}"), parse_template("/a/{x}/b")));
}

TEST_CASE("missing and misspelled templates") {
  auto r = diff_specs(spec("https://slack.com/api", {{"/users.info", kGet}, {"/users.list", kGet}}),
                      spec("https://slack.com/api", {{"/users.list", kGet}}));
  CHECK(canon(r.generated_only) == std::set<std::string>{"/users.info"});
  CHECK_FALSE(r.clean());

  auto typo = diff_specs(spec("https://x.io", {{"/datapoints/{id}", kGet}}),
                         spec("https://x.io", {{"/datatpoints/{id}", kGet}}));
  CHECK(canon(typo.generated_only) == std::set<std::string>{"/datapoints/{id}"});
  CHECK(canon(typo.existing_only) == std::set<std::string>{"/datatpoints/{id}"});
  CHECK(typo.template_matches.empty());
}

TEST_CASE("method and base URL mismatches") {
  auto r = diff_specs(spec("https://x.io", {{"/a", {HttpMethod::Post}}}), spec("https://x.io/", {{"/a", kGet}}));
  CHECK(r.base_url_match);
  REQUIRE(r.method_mismatches.size() == 1);
  CHECK(r.method_mismatches[0].generated_methods == MethodSet{HttpMethod::Post});
  CHECK_FALSE(r.clean());
  auto base = diff_specs(spec("https://x.io/v1", {}), spec("https://X.io:443/v2", {}));
  CHECK_FALSE(base.base_url_match);
  CHECK_FALSE(base.clean());
  CHECK(diff_specs(spec("https://x.io/v1", {}), spec("https://X.io:443/v1/", {})).base_url_match);
}

TEST_CASE("report rendering") {
  auto existing = spec("https://x.io", {{"/a", kGet}, {"/b", kGet}, {"/c/{id}", kGet}});
  auto none = spec("https://x.io", {});
  auto doc = nlohmann::json::parse(render_report(diff_specs(none, existing)));
  CHECK(doc["counts"]["existing_only"] == 3);
  CHECK(doc["counts"]["matches"] == 0);
  CHECK(doc["details"]["existing_only"] == nlohmann::json::array({"/a", "/b", "/c/{id}"}));
  auto self = nlohmann::json::parse(render_report(diff_specs(existing, existing)));
  CHECK(self["counts"]["matches"] == 3);
  CHECK(self["counts"]["generated_only"] == 0);
  CHECK(self["counts"]["existing_only"] == 0);
  CHECK(self["counts"]["method_mismatches"] == 0);
  CHECK(render_report(diff_specs(none, existing)) == render_report(diff_specs(none, existing)));
  CHECK(render_summary(diff_specs(none, existing)).find("existing only: 3") != std::string::npos);
}

TEST_CASE("slack fixture") {
  const fs::path dir = fs::path(DOCFORGE_FIXTURE_DIR) / "slack";
  auto truth = read_spec_file(dir / "ground_truth.json");
  auto existing = read_spec_file(dir / "existing.json");
  auto r = diff_specs(truth, existing);
  CHECK(r.generated_only.size() == 7);
  CHECK(r.template_matches.size() == 1);
  CHECK(r.existing_only.empty());
}

TEST_CASE("self diff, symmetry and renaming invariance") {
  std::mt19937 rng(33);
  for (int n = 0; n < 300; ++n) {
    auto a = random_spec(rng);
    auto b = random_spec(rng);
    auto self = diff_specs(a, a);
    CHECK(self.clean());
    CHECK(self.template_matches.size() == a.endpoints.size());

    auto ab = diff_specs(a, b);
    auto ba = diff_specs(b, a);
    CHECK(ab.template_matches.size() + ab.generated_only.size() == a.endpoints.size());
    CHECK(ab.template_matches.size() + ab.existing_only.size() == b.endpoints.size());
    CHECK(canon(ab.generated_only) == canon(ba.existing_only));
    CHECK(canon(ab.existing_only) == canon(ba.generated_only));
    CHECK(ab.method_mismatches.size() == ba.method_mismatches.size());

    auto renamed = b;
    for (auto& e : renamed.endpoints)
      for (auto& s : e.path_template.segments)
        if (s.is_parameter()) s.text = "renamed_" + s.text;
    auto ar = diff_specs(a, renamed);
    CHECK(ar.template_matches.size() == ab.template_matches.size());
    CHECK(ar.generated_only.size() == ab.generated_only.size());
    CHECK(ar.existing_only.size() == ab.existing_only.size());
    CHECK(ar.method_mismatches.size() == ab.method_mismatches.size());
    CHECK(ar.clean() == ab.clean());
  }
}
