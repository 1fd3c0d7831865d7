#include <doctest.h>

#include <chrono>
#include <random>

#include "docforge/harvest.hpp"
#include "docforge/scan.hpp"
#include "test_server.hpp"

using namespace docforge;

namespace {
Page page_of(std::string html, std::string url = "https://docs.example.com/ref.html") {
  return Page{std::move(url), std::move(html), 0};
}
CandidateUrl candidate(std::string raw, std::string page = "https://docs.example.com/ref.html") {
  return CandidateUrl{std::move(raw), std::move(page), false, false, false};
}
}  // namespace

TEST_CASE("candidate in a code tag") {
  auto c = extract_candidates(page_of("<pre><code>curl https://api.github.com/users/alice/orgs</code></pre>"));
  REQUIRE(c.size() == 1);
  CHECK(c[0].raw == "https://api.github.com/users/alice/orgs");
  CHECK(c[0].in_code_tag);
  CHECK_FALSE(c[0].clickable);
  CHECK(c[0].page_url == "https://docs.example.com/ref.html");
}

TEST_CASE("clickable link text, but never the href value") {
  auto c = extract_candidates(page_of("<a href=\"https://example.com/docs\">https://example.com/docs</a>"));
  REQUIRE(c.size() == 1);
  CHECK(c[0].clickable);
  CHECK(extract_candidates(page_of("<a href=\"https://example.com/docs\">the docs</a>")).empty());
  CHECK(extract_candidates(page_of("<a name=\"x\">https://example.com/docs</a>"))[0].clickable == false);
}

TEST_CASE("script and style content never yield candidates") {
  CHECK(extract_candidates(page_of("<script>fetch(\"https://x.com/api\")</script>")).empty());
  CHECK(extract_candidates(page_of("<style>@import url(https://x.com/a.css);</style>")).empty());
}

TEST_CASE("within_json") {
  auto c = extract_candidates(page_of("<pre>{\n  \"url\": \"https://api.x.com/repos/1\"\n}</pre>"));
  REQUIRE(c.size() == 1);
  CHECK(c[0].within_json);
  auto arr = extract_candidates(page_of("<div><pre>[\"https://api.x.com/a\"]</pre></div>"));
  REQUIRE(arr.size() == 1);
  CHECK(arr[0].within_json);
  auto prose = extract_candidates(page_of("<p>{ not json https://api.x.com/a }</p>"));
  REQUIRE(prose.size() == 1);
  CHECK_FALSE(prose[0].within_json);
}

TEST_CASE("candidates are deduplicated by context") {
  auto c = extract_candidates(page_of(
      "<p>https://api.x.com/a</p><p>https://api.x.com/a</p><code>https://api.x.com/a</code>"));
  CHECK(c.size() == 2);
}

TEST_CASE("featurize") {
  auto f = featurize(candidate("https://api.github.com/repos/vmg/redcarpet/issues?state=closed"),
                     ProbeResult::NotProbed);
  CHECK(f.query_parameter == 1);
  CHECK(featurize(candidate("https://api.example.com/rest/v2/items"), ProbeResult::NotProbed).api_convention == 3);
  CHECK(featurize(candidate("https://api.github.com/users/{username}/orgs"), ProbeResult::NotProbed).path_template ==
        1);
  CHECK(featurize(candidate("https://api.github.com/users/:name"), ProbeResult::NotProbed).path_template == 1);
  CHECK(featurize(candidate("https://api.github.com/users/alice"), ProbeResult::NotProbed).path_template == 0);

  auto same = featurize(candidate("https://docs.example.com/a"), ProbeResult::NotProbed);
  CHECK(same.same_domain_with_doc_link == 1);
  auto offline = featurize(candidate("https://docs.example.com/a", "file:///ref.html"), ProbeResult::NotProbed);
  CHECK(offline.same_domain_with_doc_link == 0);

  auto c = candidate("https://x.example/a");
  c.clickable = true;
  c.in_code_tag = true;
  c.within_json = true;
  auto g = featurize(c, ProbeResult::AuthError);
  CHECK(g.clickable == 1);
  CHECK(g.code_tag == 1);
  CHECK(g.within_json == 1);
  CHECK(g.probe_auth == 1);
  CHECK(g.probe_json + g.probe_other == 0);
  CHECK(featurize(c, ProbeResult::AuthError) == g);  // pure
}

TEST_CASE("probe features are one-hot") {
  for (auto r : {ProbeResult::NotProbed, ProbeResult::JsonBody, ProbeResult::AuthError, ProbeResult::Other}) {
    auto f = featurize(candidate("https://x.example/a"), r);
    CHECK(f.probe_json + f.probe_auth + f.probe_other == (r == ProbeResult::NotProbed ? 0 : 1));
  }
}

TEST_CASE("feature vector round trip") {
  FeatureVector f{1, 0, 1, 0, 1, 3, 0, 0, 1, 0};
  CHECK(FeatureVector::from_values(f.values()) == f);
  CHECK(kFeatureNames[5] == "api_convention");
}

TEST_CASE("api_convention stays within 0..3 and never drops when a convention is added") {
  CHECK(api_convention_score("https://x.example/a") == 0);
  CHECK(api_convention_score("https://x.example/version2.1/a") == 1);
  CHECK(api_convention_score("https://x.example/v1.2") == 1);
  CHECK(api_convention_score("https://x.example/av1/b") == 0);
  CHECK(api_convention_score("https://API.x.example/REST") == 2);
  std::mt19937 rng(3);
  const std::vector<std::string> parts{"users", "rest", "api", "v2", "items", "x1", "apis", "version3"};
  for (int n = 0; n < 300; ++n) {
    std::string url = "https://h" + std::to_string(rng() % 5) + ".example";
    for (int k = rng() % 4; k > 0; --k) url += "/" + parts[rng() % parts.size()];
    int score = api_convention_score(url);
    CHECK(score >= 0);
    CHECK(score <= 3);
    for (const auto* extra : {"/rest", "/api", "/v9"}) CHECK(api_convention_score(url + extra) >= score);
  }
}

TEST_CASE("query parameter and path template predicates") {
  CHECK(has_query_parameter("https://x.example/a?b"));
  CHECK(has_query_parameter("https://x.example/a?b=1"));
  CHECK_FALSE(has_query_parameter("https://x.example/a"));
  CHECK(has_path_template("https://x.example/a/[id]"));
  CHECK(has_path_template("https://x.example/a/<id>/b"));
  CHECK_FALSE(has_path_template("https://x.example:8080/a"));
}

TEST_CASE("classify_probe_response: AuthError iff 401/407 or certificate complaint") {
  CHECK(classify_probe_response(200, "{\"a\":1}") == ProbeResult::JsonBody);
  CHECK(classify_probe_response(200, "[1,2]") == ProbeResult::JsonBody);
  CHECK(classify_probe_response(401, "") == ProbeResult::AuthError);
  CHECK(classify_probe_response(407, "{\"error\":\"proxy\"}") == ProbeResult::AuthError);
  CHECK(classify_probe_response(403, "{\"error\":\"Invalid certificate\"}") == ProbeResult::AuthError);
  CHECK(classify_probe_response(200, "<html>hi</html>") == ProbeResult::Other);
  CHECK(classify_probe_response(404, "not found") == ProbeResult::Other);
  for (int status : {200, 201, 301, 400, 401, 403, 404, 407, 500}) {
    for (std::string body : {"", "{}", "oops", "Invalid certificate", "{\"m\":\"Invalid certificate\"}"}) {
      bool auth = status == 401 || status == 407 || body.find("Invalid certificate") != std::string::npos;
      CHECK((classify_probe_response(status, body) == ProbeResult::AuthError) == auth);
    }
  }
}

TEST_CASE("probe against a local server") {
  TestServer server;
  server.server().Get("/json", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"a\":1}", "application/json");
  });
  server.server().Get("/auth", [](const httplib::Request&, httplib::Response& res) {
    res.status = 401;
    res.set_content("{\"message\":\"Requires authentication\"}", "application/json");
  });
  server.server().Get("/html", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("<p>hi</p>", "text/html");
  });
  auto base = server.start();
  CHECK(probe(base + "/json", true) == ProbeResult::JsonBody);
  CHECK(probe(base + "/auth", true) == ProbeResult::AuthError);
  CHECK(probe(base + "/html", true) == ProbeResult::Other);
  CHECK(probe(base + "/json", false) == ProbeResult::NotProbed);
  CHECK(probe(base + "/users/{id}", true) == ProbeResult::NotProbed);
  CHECK(server.hits().empty());  // recorded only by page(); handlers above don't record
  server.stop();
  CHECK(probe(base + "/json", true, std::chrono::milliseconds(500)) == ProbeResult::Other);
}
