// Copyright 2026 The ssogate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ssogate/openid/discovery.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "ssogate/error.hpp"
#include "ssogate/url.hpp"

namespace ssogate::openid {

namespace {

namespace pt = boost::property_tree;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view local_name(std::string_view name) {
  auto colon = name.find(':');
  return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

std::optional<std::uint32_t> parse_priority(const pt::ptree& node) {
  auto attr = node.get_optional<std::string>("<xmlattr>.priority");
  if (!attr) return std::nullopt;
  try {
    long v = std::stol(*attr);
    if (v < 0) return std::nullopt;
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// --- tolerant HTML head scanner ---

struct Tag {
  std::string name;  // lower-case, "/x" for end tags
  std::vector<std::pair<std::string, std::string>> attrs;
};

std::string decode_entities(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '&') {
      static constexpr std::pair<std::string_view, char> kEntities[] = {
          {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&#39;", '\''}, {"&#039;", '\''}};
      bool matched = false;
      for (const auto& [ent, ch] : kEntities) {
        if (s.substr(i, ent.size()) == ent) {
          out.push_back(ch);
          i += ent.size() - 1;
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    out.push_back(s[i]);
  }
  return out;
}

// Parses the tag starting at html[pos] == '<'; returns the position after it.
std::size_t read_tag(std::string_view html, std::size_t pos, Tag& tag) {
  std::size_t i = pos + 1;
  auto at_end = [&] { return i >= html.size(); };
  auto is_space = [&](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };

  if (html.substr(i, 3) == "!--") {
    auto end = html.find("-->", i + 3);
    tag.name = "!--";
    return end == std::string_view::npos ? html.size() : end + 3;
  }
  std::size_t start = i;
  if (!at_end() && html[i] == '/') ++i;
  while (!at_end() && !is_space(html[i]) && html[i] != '>' && html[i] != '/') ++i;
  tag.name = lower(html.substr(start, i - start));

  while (!at_end() && html[i] != '>') {
    while (!at_end() && (is_space(html[i]) || html[i] == '/')) ++i;
    if (at_end() || html[i] == '>') break;
    std::size_t ns = i;
    while (!at_end() && !is_space(html[i]) && html[i] != '=' && html[i] != '>' && html[i] != '/') ++i;
    std::string name = lower(html.substr(ns, i - ns));
    while (!at_end() && is_space(html[i])) ++i;
    std::string value;
    if (!at_end() && html[i] == '=') {
      ++i;
      while (!at_end() && is_space(html[i])) ++i;
      if (!at_end() && (html[i] == '"' || html[i] == '\'')) {
        char q = html[i++];
        std::size_t vs = i;
        while (!at_end() && html[i] != q) ++i;
        value = decode_entities(html.substr(vs, i - vs));
        if (!at_end()) ++i;
      } else {
        std::size_t vs = i;
        while (!at_end() && !is_space(html[i]) && html[i] != '>') ++i;
        value = decode_entities(html.substr(vs, i - vs));
      }
    }
    if (!name.empty()) tag.attrs.emplace_back(std::move(name), std::move(value));
  }
  return at_end() ? html.size() : i + 1;
}

std::optional<std::string> attr(const Tag& tag, std::string_view name) {
  for (const auto& [k, v] : tag.attrs) {
    if (k == name) return v;
  }
  return std::nullopt;
}

// Link and meta tags up to </head> or <body>.
std::vector<Tag> head_tags(std::string_view html) {
  std::vector<Tag> out;
  std::size_t pos = 0;
  while ((pos = html.find('<', pos)) != std::string_view::npos) {
    Tag tag;
    pos = read_tag(html, pos, tag);
    if (tag.name == "/head" || tag.name == "body") break;
    if (tag.name == "link" || tag.name == "meta") out.push_back(std::move(tag));
  }
  return out;
}

std::optional<std::string> meta_xrds_location(std::string_view html) {
  for (const auto& tag : head_tags(html)) {
    if (tag.name != "meta") continue;
    auto equiv = attr(tag, "http-equiv");
    auto content = attr(tag, "content");
    if (equiv && content && lower(*equiv) == "x-xrds-location") return std::string(trim(*content));
  }
  return std::nullopt;
}

}  // namespace

ClaimedIdentifier normalize(std::string_view raw) {
  std::string_view input = trim(raw);
  if (input.empty()) fail(Errc::validation, "empty-identifier", "Expected an OpenID URL.");
  if (lower(input.substr(0, 6)) == "xri://" || std::string_view("=@+$!(").find(input.front()) != std::string_view::npos) {
    fail(Errc::validation, "unsupported-identifier", "XRI identifiers are not supported: '" + std::string(input) + "'");
  }
  std::string text(input);
  auto scheme_end = text.find("://");
  if (scheme_end == std::string::npos) {
    text = "http://" + text;
  } else {
    auto scheme = lower(text.substr(0, scheme_end));
    if (scheme != "http" && scheme != "https") {
      fail(Errc::validation, "invalid-identifier", "identifier must be an http(s) URL: '" + std::string(input) + "'");
    }
  }
  auto url = Url::try_parse(text);
  if (!url) fail(Errc::validation, "invalid-identifier", "not a valid identifier URL: '" + std::string(input) + "'");
  url->fragment.reset();
  if (url->path.empty()) url->path = "/";
  return ClaimedIdentifier{std::string(raw), url->to_string()};
}

std::vector<OPEndpoint> XrdsDocument::endpoints(const std::string& claimed_id) const {
  struct Ranked {
    std::uint64_t service_priority;
    std::uint64_t uri_priority;
    std::size_t order;
    OPEndpoint endpoint;
  };
  constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();

  std::vector<Ranked> ranked;
  std::size_t order = 0;
  for (const auto& svc : services) {
    auto has = [&](std::string_view t) { return std::find(svc.types.begin(), svc.types.end(), t) != svc.types.end(); };
    std::optional<ProtocolVersion> version;
    if (has(kTypeSignon20)) {
      version = ProtocolVersion::v2_0;
    } else if (has(kTypeSignon11) || has(kTypeSignon10)) {
      version = ProtocolVersion::v1_1;
    }
    if (!version) continue;
    for (const auto& [uri, uri_priority] : svc.uris) {
      if (!Url::try_parse(uri)) continue;
      OPEndpoint ep{uri, *version, svc.local_id, svc.priority.value_or(std::numeric_limits<std::uint32_t>::max()),
                    claimed_id};
      ranked.push_back({svc.priority ? *svc.priority : kUnset, uri_priority ? *uri_priority : kUnset, order++, ep});
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    return std::tie(a.service_priority, a.uri_priority, a.order) < std::tie(b.service_priority, b.uri_priority, b.order);
  });
  std::vector<OPEndpoint> out;
  for (auto& r : ranked) out.push_back(std::move(r.endpoint));
  return out;
}

XrdsDocument parse_xrds(std::string_view xml) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    fail(Errc::discovery, "malformed-xrds", std::string("XRDS is not well-formed XML: ") + e.what());
  }

  const pt::ptree* root = nullptr;
  for (const auto& [name, child] : tree) {
    if (local_name(name) == "XRDS") root = &child;
  }
  if (!root) fail(Errc::discovery, "malformed-xrds", "document has no XRDS root element");

  // The final XRD element describes the resolved identifier.
  const pt::ptree* xrd = nullptr;
  for (const auto& [name, child] : *root) {
    if (local_name(name) == "XRD") xrd = &child;
  }
  XrdsDocument doc;
  if (!xrd) return doc;

  for (const auto& [name, node] : *xrd) {
    if (local_name(name) != "Service") continue;
    XrdsService svc;
    svc.priority = parse_priority(node);
    std::optional<std::string> delegate;
    for (const auto& [child_name, child] : node) {
      auto local = local_name(child_name);
      auto text = std::string(trim(child.data()));
      if (local == "Type") {
        svc.types.push_back(text);
      } else if (local == "URI") {
        svc.uris.emplace_back(text, parse_priority(child));
      } else if (local == "LocalID") {
        svc.local_id = text;
      } else if (local == "Delegate") {
        delegate = text;
      }
    }
    if (!svc.local_id && delegate) svc.local_id = delegate;
    doc.services.push_back(std::move(svc));
  }
  return doc;
}

std::optional<XrdsDocument> yadis_discover(const HttpResponse& response, Fetcher& fetcher) {
  auto content_type = lower(response.header("Content-Type").value_or(""));
  if (content_type.rfind(kXrdsContentType, 0) == 0) return parse_xrds(response.body);

  auto location = response.header("X-XRDS-Location");
  if (!location) location = meta_xrds_location(response.body);
  if (!location) return std::nullopt;

  HttpResponse xrds = fetcher.get(*location, Headers{{"Accept", std::string(kXrdsContentType)}});
  if (!xrds.ok()) fail(Errc::discovery, "xrds-fetch-failed", "XRDS fetch returned HTTP " + std::to_string(xrds.status));
  return parse_xrds(xrds.body);
}

std::vector<OPEndpoint> html_discover(std::string_view html, const std::string& claimed_id) {
  std::optional<std::string> provider, local_id, server, delegate;
  for (const auto& tag : head_tags(html)) {
    if (tag.name != "link") continue;
    auto rel = attr(tag, "rel");
    auto href = attr(tag, "href");
    if (!rel || !href) continue;
    std::istringstream rels(lower(*rel));
    std::string r;
    std::string target(trim(*href));
    while (rels >> r) {
      if (r == "openid2.provider" && !provider) provider = target;
      if (r == "openid2.local_id" && !local_id) local_id = target;
      if (r == "openid.server" && !server) server = target;
      if (r == "openid.delegate" && !delegate) delegate = target;
    }
  }
  std::vector<OPEndpoint> out;
  if (provider && Url::try_parse(*provider)) {
    out.push_back({*provider, ProtocolVersion::v2_0, local_id, 0, claimed_id});
  }
  if (server && Url::try_parse(*server)) {
    out.push_back({*server, ProtocolVersion::v1_1, delegate, 1, claimed_id});
  }
  return out;
}

std::vector<OPEndpoint> discover(const ClaimedIdentifier& id, Fetcher& fetcher) {
  HttpResponse response;
  try {
    response = fetcher.get(id.normalized, Headers{{"Accept", std::string(kXrdsContentType) + ", text/html;q=0.9"}});
  } catch (const Error& e) {
    fail(Errc::discovery, "discovery-failed", std::string("cannot fetch identifier: ") + e.what());
  }
  if (!response.ok()) {
    fail(Errc::discovery, "discovery-failed", "identifier fetch returned HTTP " + std::to_string(response.status));
  }
  std::string claimed = id.normalized;
  if (!response.final_url.empty()) {
    try {
      claimed = normalize(response.final_url).normalized;
    } catch (const Error&) {
      fail(Errc::discovery, "discovery-failed", "redirected to an unusable URL");
    }
  }

  try {
    if (auto doc = yadis_discover(response, fetcher)) {
      auto endpoints = doc->endpoints(claimed);
      if (!endpoints.empty()) return endpoints;
    }
  } catch (const Error&) {
    // Malformed or unreachable XRDS: fall back to HTML discovery.
  }

  auto endpoints = html_discover(response.body, claimed);
  if (endpoints.empty()) fail(Errc::discovery, "discovery-failed", "no OpenID provider found for " + claimed);
  return endpoints;
}

std::vector<OPEndpoint> DiscoveryCache::discover(const ClaimedIdentifier& id, Fetcher& fetcher) {
  {
    std::lock_guard lock(mu_);
    auto it = results_.find(id.normalized);
    if (it != results_.end()) return it->second;
  }
  auto endpoints = openid::discover(id, fetcher);
  std::lock_guard lock(mu_);
  results_[id.normalized] = endpoints;
  return endpoints;
}

bool CaseInsensitiveLess::operator()(std::string_view a, std::string_view b) const noexcept {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](unsigned char x, unsigned char y) {
    return std::tolower(x) < std::tolower(y);
  });
}

std::optional<std::string> HttpResponse::header(std::string_view name) const {
  auto it = headers.find(name);
  if (it == headers.end()) return std::nullopt;
  return it->second;
}

}  // namespace ssogate::openid
