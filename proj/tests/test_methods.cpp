#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <random>

#include "docforge/methods.hpp"

namespace fs = std::filesystem;
using namespace docforge;

namespace {

const BaseUrl kGithub{"https", "api.github.com", ""};

html::NodeId find_tag(const html::Document& dom, std::string_view tag, std::size_t nth = 0) {
  for (html::NodeId id = 0; id < dom.size(); ++id)
    if (dom.node(id).tag == tag && nth-- == 0) return id;
  FAIL("no " << tag);
  return 0;
}

MethodSet methods_for(const std::string& html, const std::string& tmpl, const BaseUrl& base = kGithub) {
  auto dom = html::Document::parse(html);
  return extract_methods(locate_description_block(dom, parse_template(tmpl), base));
}

}  // namespace

TEST_CASE("method names") {
  for (auto m : kAllMethods) CHECK(parse_method(to_string(m)) == m);
  CHECK(parse_method("get") == HttpMethod::Get);
  CHECK_FALSE(parse_method("FETCH"));
}

TEST_CASE("template_matches") {
  auto orgs = parse_template("/users/{username}/orgs");
  CHECK(template_matches("https://api.github.com/users/alice/orgs", orgs, kGithub));
  CHECK(template_matches("/users/{username}/orgs", orgs, kGithub));
  CHECK(template_matches("/users/:login/orgs?per_page=5", orgs, kGithub));
  CHECK_FALSE(template_matches("/users/alice", orgs, kGithub));
  CHECK_FALSE(template_matches("/users/alice/repos", orgs, kGithub));
  CHECK_FALSE(template_matches("https://example.com/users/alice/orgs", orgs, kGithub));
  BaseUrl v1{"https", "api.x.com", "/v1"};
  auto items = parse_template("/items/{id}");
  CHECK(template_matches("/v1/items/3", items, v1));
  CHECK(template_matches("https://api.x.com/v1/items/3", items, v1));
  CHECK_FALSE(template_matches("https://api.x.com/items/3", items, v1));
}

TEST_CASE("one gray node: siblings and parent join the block") {
  const std::string page =
      "<div><p>Update a user with PUT.</p><code>https://api.github.com/users/alice</code><p>Also PATCH.</p></div>"
      "<p>Unrelated DELETE</p>";
  auto dom = html::Document::parse(page);
  auto block = locate_description_block(dom, parse_template("/users/{id}"), kGithub);
  REQUIRE(block);
  CHECK(block->text.find("Update a user") != std::string::npos);
  CHECK(block->text.find("Also PATCH") != std::string::npos);
  CHECK(block->text.find("Unrelated") == std::string::npos);
  CHECK(extract_methods(block) == MethodSet{HttpMethod::Put, HttpMethod::Patch});
}

TEST_CASE("two gray nodes with one parent do not engulf each other") {
  const std::string page =
      "<section>"
      "<p>Create one with POST</p><code>/users/{id}/keys</code>"
      "<p>remove with DELETE</p>"
      "<code>/users/{id}/emails</code><p>trailing PUT never reached</p>"
      "</section>";
  std::vector<PathTemplate> ts{parse_template("/users/{id}/keys"), parse_template("/users/{id}/emails")};
  auto located = locate_description_blocks(std::vector<Page>{{"file:///p.html", page, 0}}, ts, kGithub);
  REQUIRE(located.size() == 2);
  CHECK(extract_methods(located[0]) == MethodSet{HttpMethod::Post});
  CHECK(extract_methods(located[1]) == MethodSet{HttpMethod::Delete});

  auto dom = html::Document::parse(page);
  auto blocks = gray_blocks(dom, ts, kGithub);
  REQUIRE(blocks.size() == 2);
  auto section = find_tag(dom, "section");
  for (const auto& b : blocks) CHECK(std::find(b.nodes.begin(), b.nodes.end(), section) == b.nodes.end());
}

TEST_CASE("a matched ancestor is not gray; only the deepest node is") {
  auto dom = html::Document::parse("<div><p>see <code>/pets</code></p></div>");
  auto blocks = gray_blocks(dom, std::vector<PathTemplate>{parse_template("/pets")}, kGithub);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].gray_node == find_tag(dom, "code"));
}

TEST_CASE("no match anywhere") {
  auto dom = html::Document::parse("<p>nothing to see</p>");
  CHECK_FALSE(locate_description_block(dom, parse_template("/pets"), kGithub));
  CHECK(extract_methods(std::nullopt) == MethodSet{HttpMethod::Get});
  CHECK(methods_for("<p>nothing to see</p>", "/pets") == MethodSet{HttpMethod::Get});
}

TEST_CASE("method tokens are uppercase whole words") {
  CHECK(find_method_tokens("Use POST or PUT to update") == MethodSet{HttpMethod::Post, HttpMethod::Put});
  CHECK(find_method_tokens("get the user, then post it").empty());
  CHECK(find_method_tokens("GETTER PUTS xPOST HEAD_ref").empty());
  CHECK(find_method_tokens("curl -X DELETE").count(HttpMethod::Delete) == 1);
  CHECK(find_method_tokens("(OPTIONS) HEAD, PATCH.") ==
        MethodSet{HttpMethod::Options, HttpMethod::Head, HttpMethod::Patch});
  DescriptionBlock plain{parse_template("/x"), "no verbs here", {}};
  CHECK(extract_methods(plain) == MethodSet{HttpMethod::Get});
  DescriptionBlock both{parse_template("/x"), "Use POST or PUT to update", {}};
  CHECK(extract_methods(both) == MethodSet{HttpMethod::Post, HttpMethod::Put});
}

TEST_CASE("a method stated outside every block is missed") {
  std::vector<Page> pages{{"file:///mandrill.html", "", 0}};
  std::ifstream in(fs::path(DOCFORGE_FIXTURE_DIR) / "methods" / "mandrill" / "mandrill.html");
  pages[0].html.assign(std::istreambuf_iterator<char>(in), {});
  BaseUrl base{"https", "mailer.example", "/api/1.0"};
  std::vector<PathTemplate> ts{parse_template("/users/ping.json"), parse_template("/users/senders.json")};
  auto blocks = locate_description_blocks(pages, ts, base);
  REQUIRE(blocks.size() == 2);
  for (const auto& b : blocks) {
    REQUIRE(b);
    CHECK(extract_methods(b) == MethodSet{HttpMethod::Get});
  }
}

TEST_CASE("blocks from several pages are combined in fetch order") {
  std::vector<Page> pages{
      {"file:///b.html", "<p>Remove with DELETE: <code>/pets/{id}</code></p>", 1},
      {"file:///a.html", "<p>Read with GET: <code>/pets/{id}</code></p>", 0},
  };
  std::vector<PathTemplate> ts{parse_template("/pets/{id}")};
  auto blocks = locate_description_blocks(pages, ts, kGithub);
  REQUIRE(blocks[0]);
  CHECK(blocks[0]->text.find("Read") < blocks[0]->text.find("Remove"));
  CHECK(blocks[0]->source_pages == std::set<std::string>{"file:///a.html", "file:///b.html"});
  CHECK(extract_methods(blocks[0]) == MethodSet{HttpMethod::Get, HttpMethod::Delete});
}

TEST_CASE("blocks of distinct gray nodes on one page are disjoint") {
  std::mt19937 rng(12);
  const std::vector<std::string> fillers{"<p>text POST</p>", "<span>x</span>", "plain words ", "<div><b>deep</b></div>",
                                         "<h3>Heading</h3>"};
  const std::vector<std::string> mentions{"<code>/a/{id}</code>", "<code>/b</code>", "<p>see /a/7 here</p>",
                                          "<pre><code>https://api.github.com/b</code></pre>"};
  std::vector<PathTemplate> ts{parse_template("/a/{id}"), parse_template("/b")};
  for (int n = 0; n < 300; ++n) {
    std::function<std::string(int)> build = [&](int depth) {
      std::string out;
      for (int k = 1 + rng() % 5; k > 0; --k) {
        auto pick = rng() % 10;
        if (pick < 3) out += mentions[rng() % mentions.size()];
        else if (pick < 5 && depth < 3) out += "<div>" + build(depth + 1) + "</div>";
        else out += fillers[rng() % fillers.size()];
      }
      return out;
    };
    auto dom = html::Document::parse("<body>" + build(0) + "</body>");
    auto blocks = gray_blocks(dom, ts, kGithub);
    std::set<html::NodeId> used;
    for (const auto& b : blocks) {
      CHECK(!b.text.empty());
      for (auto id : b.nodes) CHECK(used.insert(id).second);
    }
  }
}
