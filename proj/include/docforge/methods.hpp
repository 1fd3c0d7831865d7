#pragma once

#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/baseurl.hpp"
#include "docforge/corpus.hpp"
#include "docforge/html.hpp"
#include "docforge/templates.hpp"

namespace docforge {

enum class HttpMethod { Get, Post, Put, Delete, Options, Head, Patch };

inline constexpr std::array<HttpMethod, 7> kAllMethods = {
    HttpMethod::Get,     HttpMethod::Post, HttpMethod::Put,  HttpMethod::Delete,
    HttpMethod::Options, HttpMethod::Head, HttpMethod::Patch};

std::string_view to_string(HttpMethod method);  // "GET", ...
std::optional<HttpMethod> parse_method(std::string_view name);  // case-insensitive

using MethodSet = std::set<HttpMethod>;

struct Endpoint {
  PathTemplate path_template;
  MethodSet methods;  // never empty
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct DescriptionBlock {
  PathTemplate path_template;
  std::string text;
  std::set<std::string> source_pages;
};

// The expansion around one gray node of one page.
struct GrayBlock {
  html::NodeId gray_node = 0;
  std::vector<html::NodeId> nodes;             // document order
  std::vector<std::size_t> template_indices;   // templates this gray node matches
  std::string text;
};

// True iff the token (an absolute URL or a relative path) has the template's
// shape once the base URL, query and fragment are removed.
bool template_matches(std::string_view token, const PathTemplate& path_template, const BaseUrl& base);

// Gray nodes are the deepest elements whose rendered text contains a token
// matching any of `templates`. Each expands over its siblings (nearest
// first: n-1 down to 0, then n+1 upward) and then its parent; reaching a
// sibling that holds another gray node ends the expansion, and a parent that
// holds another gray node is not included. A sibling lying nearer to another
// gray node of the same parent belongs to that node's block instead.
std::vector<GrayBlock> gray_blocks(const html::Document& dom, std::span<const PathTemplate> templates,
                                   const BaseUrl& base);

// Block of one template on one page, with gray nodes computed from that
// template alone.
std::optional<DescriptionBlock> locate_description_block(const html::Document& dom,
                                                         const PathTemplate& path_template,
                                                         const BaseUrl& base);

// Blocks for every template across all pages (page order), gray nodes
// computed against all templates together. Index i belongs to templates[i].
std::vector<std::optional<DescriptionBlock>> locate_description_blocks(std::span<const Page> pages,
                                                                       std::span<const PathTemplate> templates,
                                                                       const BaseUrl& base);

// Whole-word, uppercase method names in `text`.
MethodSet find_method_tokens(std::string_view text);

// Methods named in the block, or {GET} when there are none or no block.
MethodSet extract_methods(const std::optional<DescriptionBlock>& block);

}  // namespace docforge
