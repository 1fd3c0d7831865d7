#include "docforge/methods.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "docforge/scan.hpp"
#include "docforge/url.hpp"

namespace docforge {
namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool segments_match(const std::vector<std::string>& parts, const PathTemplate& t) {
  if (parts.size() != t.segments.size()) return false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (t.segments[i].is_parameter()) continue;
    if (parts[i] != t.segments[i].text) return false;
  }
  return true;
}

struct PageTokens {
  std::vector<TextToken> tokens;
};

std::vector<TextToken> all_tokens(std::string_view text) {
  auto tokens = scan_absolute_urls(text);
  auto relative = scan_relative_paths(text);
  tokens.insert(tokens.end(), std::make_move_iterator(relative.begin()), std::make_move_iterator(relative.end()));
  return tokens;
}

}  // namespace

std::string_view to_string(HttpMethod method) {
  switch (method) {
    case HttpMethod::Get: return "GET";
    case HttpMethod::Post: return "POST";
    case HttpMethod::Put: return "PUT";
    case HttpMethod::Delete: return "DELETE";
    case HttpMethod::Options: return "OPTIONS";
    case HttpMethod::Head: return "HEAD";
    case HttpMethod::Patch: return "PATCH";
  }
  return "GET";
}

std::optional<HttpMethod> parse_method(std::string_view name) {
  auto upper = std::string(name);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto m : kAllMethods) {
    if (to_string(m) == upper) return m;
  }
  return std::nullopt;
}

bool template_matches(std::string_view token, const PathTemplate& path_template, const BaseUrl& base) {
  if (starts_with_http_scheme(token)) {
    auto rest = residual_path(token, base);
    return rest && segments_match(split_path(*rest), path_template);
  }
  auto parts = split_path(strip_query_and_fragment(token));
  if (segments_match(parts, path_template)) return true;
  auto base_parts = split_path(base.base_path);
  if (!base_parts.empty() && parts.size() > base_parts.size() &&
      std::equal(base_parts.begin(), base_parts.end(), parts.begin())) {
    parts.erase(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(base_parts.size()));
    return segments_match(parts, path_template);
  }
  return false;
}

std::vector<GrayBlock> gray_blocks(const html::Document& dom, std::span<const PathTemplate> templates,
                                   const BaseUrl& base) {
  // Deepest element covering each matching token, with the templates it matched.
  std::map<html::NodeId, std::set<std::size_t>> hits;
  for (const auto& token : all_tokens(dom.rendered_text())) {
    std::set<std::size_t> matched;
    for (std::size_t t = 0; t < templates.size(); ++t) {
      if (template_matches(token.text, templates[t], base)) matched.insert(t);
    }
    if (matched.empty()) continue;
    auto node = dom.deepest_covering_element(token.begin, token.end);
    if (node == html::Document::root()) continue;
    hits[node].insert(matched.begin(), matched.end());
  }
  if (hits.empty()) return {};

  // An element "contains a match" when a hit lies in its subtree; gray nodes
  // are those with no matching proper descendant.
  std::vector<bool> contains(dom.size(), false);
  for (const auto& [node, _] : hits) {
    std::optional<html::NodeId> cur = node;
    while (cur && !contains[*cur]) {
      contains[*cur] = true;
      cur = dom.node(*cur).parent;
    }
  }
  std::vector<html::NodeId> gray;
  for (html::NodeId id = 1; id < dom.size(); ++id) {
    if (!contains[id]) continue;
    const auto& children = dom.node(id).children;
    bool has_matching_child = std::any_of(children.begin(), children.end(), [&](auto c) { return contains[c]; });
    if (!has_matching_child) gray.push_back(id);
  }

  auto holds_other_gray = [&](html::NodeId node, html::NodeId self) {
    return std::any_of(gray.begin(), gray.end(),
                       [&](html::NodeId g) { return g != self && dom.is_ancestor_or_self(node, g); });
  };

  std::vector<GrayBlock> blocks;
  for (auto g : gray) {
    GrayBlock block;
    block.gray_node = g;
    // Templates matched anywhere inside the gray node.
    std::set<std::size_t> matched;
    for (const auto& [node, ts] : hits) {
      if (dom.is_ancestor_or_self(g, node)) matched.insert(ts.begin(), ts.end());
    }
    block.template_indices.assign(matched.begin(), matched.end());

    std::vector<html::NodeId> included{g};
    auto parent = dom.node(g).parent;
    if (parent) {
      const auto& siblings = dom.node(*parent).children;
      const std::size_t n = dom.child_index(g);
      std::vector<std::size_t> gray_positions;
      for (std::size_t k = 0; k < siblings.size(); ++k) {
        if (k != n && holds_other_gray(siblings[k], g)) gray_positions.push_back(k);
      }
      // A sibling is claimed by the nearer gray-bearing sibling; ties go to
      // the later one.
      auto claimed_elsewhere = [&](std::size_t k) {
        const std::size_t own = k > n ? k - n : n - k;
        for (auto m : gray_positions) {
          const std::size_t other = k > m ? k - m : m - k;
          if (other < own || (other == own && m > n)) return true;
        }
        return false;
      };
      bool terminated = false;
      auto visit = [&](std::size_t k) {
        if (holds_other_gray(siblings[k], g) || claimed_elsewhere(k)) {
          terminated = true;
          return;
        }
        included.push_back(siblings[k]);
      };
      for (std::size_t k = n; k-- > 0 && !terminated;) visit(k);
      for (std::size_t k = n + 1; k < siblings.size() && !terminated; ++k) visit(k);
      if (!terminated && *parent != html::Document::root() && !holds_other_gray(*parent, g)) {
        included.push_back(*parent);
      }
    }
    std::sort(included.begin(), included.end());
    block.nodes = included;
    for (auto id : included) {
      auto text = dom.rendered_text(id);
      if (text.empty()) continue;
      if (!block.text.empty()) block.text += '\n';
      block.text += text;
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::optional<DescriptionBlock> locate_description_block(const html::Document& dom,
                                                         const PathTemplate& path_template,
                                                         const BaseUrl& base) {
  auto blocks = gray_blocks(dom, std::span<const PathTemplate>(&path_template, 1), base);
  if (blocks.empty()) return std::nullopt;
  DescriptionBlock out;
  out.path_template = path_template;
  for (const auto& b : blocks) {
    if (!out.text.empty()) out.text += '\n';
    out.text += b.text;
  }
  return out;
}

std::vector<std::optional<DescriptionBlock>> locate_description_blocks(std::span<const Page> pages,
                                                                       std::span<const PathTemplate> templates,
                                                                       const BaseUrl& base) {
  std::vector<std::optional<DescriptionBlock>> out(templates.size());
  std::vector<const Page*> ordered;
  for (const auto& p : pages) ordered.push_back(&p);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Page* a, const Page* b) { return a->fetch_order < b->fetch_order; });
  for (const Page* page : ordered) {
    auto dom = html::Document::parse(page->html);
    for (const auto& block : gray_blocks(dom, templates, base)) {
      for (auto t : block.template_indices) {
        auto& slot = out[t];
        if (!slot) slot = DescriptionBlock{templates[t], {}, {}};
        if (!slot->text.empty()) slot->text += '\n';
        slot->text += block.text;
        slot->source_pages.insert(page->url);
      }
    }
  }
  return out;
}

MethodSet find_method_tokens(std::string_view text) {
  MethodSet out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word_char(text[j])) ++j;
    auto word = text.substr(i, j - i);
    for (auto m : kAllMethods) {
      if (word == to_string(m)) out.insert(m);
    }
    i = j;
  }
  return out;
}

MethodSet extract_methods(const std::optional<DescriptionBlock>& block) {
  MethodSet out;
  if (block) out = find_method_tokens(block->text);
  if (out.empty()) out.insert(HttpMethod::Get);
  return out;
}

}  // namespace docforge
