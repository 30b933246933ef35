// Copyright 2026 The Tempora Authors.
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

// Text, JSON and Graphviz renderings of analysis results.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tempora/builder.hpp"
#include "tempora/discourse_model.hpp"

namespace tempora {

enum class Format { kText, kJson, kDot };

inline std::optional<Format> parse_format(std::string_view s) {
  if (s == "text") return Format::kText;
  if (s == "json") return Format::kJson;
  if (s == "dot") return Format::kDot;
  return std::nullopt;
}

namespace internal {

inline std::string join_ids(const std::vector<std::string> &ids,
                            std::string_view sep = " ") {
  std::string out;
  for (const auto &id : ids) {
    if (!out.empty()) out += sep;
    out += id;
  }
  return out;
}

inline std::string format_anchor(const Anchor &a) {
  return a.id + (a.kind == AnchorKind::kTF1 ? "(TF1)" : "");
}

inline std::string site_summary(const Dcu &d) {
  std::string out = d.annotation.id + ": ";
  if (d.rhet_reln && d.anchor) {
    out += d.rhet_reln->name() + "@" + format_anchor(*d.anchor) + " ";
  }
  out += std::string(to_string(d.action)) + " " + thread_name(d.thread);
  return out;
}

inline std::string format_threads(const std::vector<Thread> &threads,
                                  std::optional<std::size_t> current) {
  if (threads.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < threads.size(); ++i) {
    const Thread &t = threads[i];
    if (i) out += "; ";
    out += thread_name(t.label) + " [" + join_ids(t.members) + "]";
    if (t.tempfoc) out += " tf=" + *t.tempfoc;
    if (current && *current == i) out += " (current)";
  }
  return out;
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace internal

// One block per reading: the eventuality ordering as `eX relation eY` lines,
// then per-clause decisions and the thread structure.
inline std::string render_text(const AnalysisResult &result, bool with_log) {
  std::string out;
  const std::size_t n = result.readings.size();
  for (std::size_t i = 0; i < n; ++i) {
    const AnalysisState &s = result.readings[i];
    if (i) out += "\n";
    out += "reading " + std::to_string(i + 1) + " of " + std::to_string(n) +
           "  score=" + internal::format_rating(s.score) + "\n";
    for (const auto &r : eventuality_order(s)) out += format_relation(r) + "\n";
    for (std::size_t k = 1; k < s.dcus.size(); ++k) {
      out += "  " + internal::site_summary(s.dcus[k]) + "\n";
    }
    out += "  open: " +
           internal::format_threads(s.center.fwd_center, s.center.bkwd_center) +
           "\n";
    out += "  closed: " +
           internal::format_threads(s.center.closed_threads, std::nullopt) +
           "\n";
    if (with_log) {
      for (const auto &line : s.log) out += "  | " + line + "\n";
    }
  }
  if (result.underspec) {
    out += "\nunderspecified (" + std::to_string(n) + " readings)\n";
    for (const auto &site : result.underspec->sites) {
      out += site.id + " " + (site.node ? site.node->name() : "-") + " {";
      for (std::size_t k = 0; k < site.relations.size(); ++k) {
        out += (k ? ", " : "") + site.relations[k].name();
      }
      out += "} anchors:";
      for (const auto &[anchor, count] : site.anchors) {
        out += " " + internal::format_anchor(anchor) + "x" +
               std::to_string(count);
      }
      if (site.unanchored) {
        out += " new-thread x" + std::to_string(site.unanchored);
      }
      out += "\n";
    }
  }
  return out;
}

inline nlohmann::ordered_json thread_json(const Thread &t) {
  nlohmann::ordered_json j;
  j["label"] = thread_name(t.label);
  j["members"] = t.members;
  j["tempfoc"] = t.tempfoc ? nlohmann::ordered_json(*t.tempfoc) : nullptr;
  j["last_tense"] = std::string(to_string(t.last_tense));
  j["last_aspect"] = std::string(to_string(t.last_aspect));
  j["content_words"] = std::vector<std::string>(t.content_words.begin(),
                                                t.content_words.end());
  return j;
}

inline nlohmann::ordered_json reading_json(const AnalysisState &s,
                                           std::size_t rank, bool with_log) {
  nlohmann::ordered_json j;
  j["rank"] = rank;
  j["score"] = std::llround(s.score * 1e6) / 1e6;
  j["relations"] = nlohmann::ordered_json::array();
  for (const auto &r : eventuality_order(s)) {
    j["relations"].push_back({{"from", r.from},
                              {"relation", std::string(to_string(r.relation))},
                              {"to", r.to}});
  }
  j["sites"] = nlohmann::ordered_json::array();
  for (const Dcu &d : s.dcus) {
    nlohmann::ordered_json site;
    site["id"] = d.annotation.id;
    site["rhet_reln"] = d.rhet_reln ? nlohmann::ordered_json(d.rhet_reln->name())
                                    : nullptr;
    if (d.anchor) {
      site["anchor"] = {{"id", d.anchor->id},
                        {"kind", std::string(to_string(d.anchor->kind))}};
    } else {
      site["anchor"] = nullptr;
    }
    site["thread"] = thread_name(d.thread);
    site["tier"] = d.tier;
    site["action"] = std::string(to_string(d.action));
    j["sites"].push_back(std::move(site));
  }
  j["open_threads"] = nlohmann::ordered_json::array();
  for (const Thread &t : s.center.fwd_center) {
    j["open_threads"].push_back(thread_json(t));
  }
  j["current_thread"] =
      thread_name(s.center.fwd_center[s.center.bkwd_center].label);
  j["closed_threads"] = nlohmann::ordered_json::array();
  for (const Thread &t : s.center.closed_threads) {
    j["closed_threads"].push_back(thread_json(t));
  }
  if (with_log) j["log"] = s.log;
  return j;
}

inline std::string render_json(const AnalysisResult &result, bool with_log) {
  nlohmann::ordered_json j;
  j["mode"] = std::string(to_string(result.mode));
  j["readings"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.readings.size(); ++i) {
    j["readings"].push_back(reading_json(result.readings[i], i + 1, with_log));
  }
  if (result.underspec) {
    nlohmann::ordered_json sites = nlohmann::ordered_json::array();
    for (const auto &site : result.underspec->sites) {
      nlohmann::ordered_json js;
      js["id"] = site.id;
      js["node"] = site.node ? nlohmann::ordered_json(site.node->name()) : nullptr;
      js["relations"] = nlohmann::ordered_json::array();
      for (const auto &r : site.relations) js["relations"].push_back(r.name());
      js["anchors"] = nlohmann::ordered_json::array();
      for (const auto &[anchor, count] : site.anchors) {
        js["anchors"].push_back(
            {{"id", anchor.id},
             {"kind", std::string(to_string(anchor.kind))},
             {"count", count}});
      }
      js["unanchored"] = site.unanchored;
      sites.push_back(std::move(js));
    }
    j["underspecified"] = std::move(sites);
  }
  j["warnings"] = result.warnings;
  return j.dump(2) + "\n";
}

// One digraph per reading. Eventualities are nodes grouped into a cluster
// per thread; each attachment is an edge from the new clause to its anchor.
inline std::string render_dot(const AnalysisResult &result) {
  std::string out;
  for (std::size_t i = 0; i < result.readings.size(); ++i) {
    const AnalysisState &s = result.readings[i];
    out += "digraph reading_" + std::to_string(i + 1) + " {\n";
    out += "  rankdir=RL;\n  node [shape=box];\n";
    std::vector<Thread> threads = s.center.closed_threads;
    threads.insert(threads.end(), s.center.fwd_center.begin(),
                   s.center.fwd_center.end());
    std::sort(threads.begin(), threads.end(),
              [](const Thread &a, const Thread &b) { return a.label < b.label; });
    for (const Thread &t : threads) {
      out += "  subgraph cluster_" + thread_name(t.label) + " {\n";
      out += "    label=" + internal::dot_quote(thread_name(t.label)) + ";\n";
      for (const auto &m : t.members) {
        const Dcu *d = s.find(m);
        std::string label = m;
        if (d) {
          label += "\\n" + std::string(to_string(d->annotation.sem_aspect));
        }
        out += "    " + internal::dot_quote(m) + " [label=\"" + label + "\"];\n";
      }
      out += "  }\n";
    }
    for (const Dcu &d : s.dcus) {
      for (const auto &r : d.temp_relns) {
        std::string label(to_string(r.relation));
        if (d.rhet_reln && d.rhet_reln->name() != label) {
          label += " (" + d.rhet_reln->name() + ")";
        }
        out += "  " + internal::dot_quote(r.from) + " -> " +
               internal::dot_quote(r.to) + " [label=" +
               internal::dot_quote(label) +
               (d.anchor && d.anchor->kind == AnchorKind::kTF1
                    ? ", style=dashed"
                    : "") +
               "];\n";
      }
    }
    out += "}\n";
  }
  return out;
}

}  // namespace tempora
