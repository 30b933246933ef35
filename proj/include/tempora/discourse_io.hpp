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

// Reading and writing discourse files.
//
// One clause per line:
//
//   clause id=e1 tense=past aspect=simple sem=event cue=because
//          temprel=precede@e1 words=door,open text="John opened the door."
//
// id, tense, aspect and sem are required; the rest are optional. A `#`
// outside a quoted value starts a comment. Inside text="...", \" and \\ are
// the only escapes.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tempora/discourse_model.hpp"

namespace tempora {

// A parsed discourse plus the `# expect ...` directives found in comments.
struct DiscourseFile {
  std::vector<ClauseAnnotation> clauses;
  std::vector<std::string> directives;  // text after "# expect "
};

namespace internal {

inline bool plain_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '"' || c == '#' || c == '=' ||
        c == ',' || c == '\\') {
      return false;
    }
  }
  return true;
}

// Splits a line into whitespace-separated fields, honouring quotes and
// stopping at an unquoted '#'. Returns the comment text (without '#').
inline std::string split_fields(const std::string &line, const std::string &where,
                                std::vector<std::string> &fields) {
  std::string cur;
  bool quoted = false, in_field = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '\\') {
        if (i + 1 >= line.size() ||
            (line[i + 1] != '"' && line[i + 1] != '\\')) {
          throw InputError(where + "bad escape in quoted value");
        }
        cur += line[++i];
      } else if (c == '"') {
        quoted = false;
        if (i + 1 < line.size() && line[i + 1] != ' ' && line[i + 1] != '\t') {
          throw InputError(where + "text after closing quote");
        }
      } else {
        cur += c;
      }
      continue;
    }
    if (c == '#') {
      if (in_field) fields.push_back(cur);
      return line.substr(i + 1);
    }
    if (c == ' ' || c == '\t') {
      if (in_field) fields.push_back(cur);
      cur.clear();
      in_field = false;
      continue;
    }
    in_field = true;
    if (c == '"') {
      if (cur.empty() || cur.back() != '=') {
        throw InputError(where + "unexpected quote");
      }
      quoted = true;
      cur += '\x01';  // marks a quoted value
      continue;
    }
    cur += c;
  }
  if (quoted) throw InputError(where + "unterminated quoted value");
  if (in_field) fields.push_back(cur);
  return {};
}

}  // namespace internal

inline ClauseAnnotation parse_clause_fields(
    const std::vector<std::string> &fields, const std::string &where) {
  if (fields.front() != "clause") {
    throw InputError(where + "expected 'clause', found '" + fields.front() +
                     "'");
  }
  std::map<std::string, std::pair<std::string, bool>> kv;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    auto eq = fields[i].find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InputError(where + "expected key=value, found '" + fields[i] + "'");
    }
    std::string key = fields[i].substr(0, eq);
    std::string value = fields[i].substr(eq + 1);
    bool quoted = !value.empty() && value.front() == '\x01';
    if (quoted) value.erase(0, 1);
    static const char *const kKeys[] = {"id",      "tense", "aspect", "sem",
                                        "cue",     "temprel", "words", "text"};
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw InputError(where + "unknown key '" + key + "'");
    }
    if (quoted != (key == "text")) {
      throw InputError(where + (quoted ? "only text may be quoted"
                                       : "text must be quoted"));
    }
    if (!kv.emplace(key, std::make_pair(value, quoted)).second) {
      throw InputError(where + "duplicate key '" + key + "'");
    }
  }
  for (const char *req : {"id", "tense", "aspect", "sem"}) {
    if (!kv.count(req)) {
      throw InputError(where + "missing required key '" + req + "'");
    }
  }
  ClauseAnnotation c;
  c.id = kv["id"].first;
  if (!internal::plain_token(c.id) || c.id.find('@') != std::string::npos) {
    throw InputError(where + "bad id '" + c.id + "'");
  }
  auto tense = parse_tense(kv["tense"].first);
  if (!tense) throw InputError(where + "bad tense '" + kv["tense"].first + "'");
  c.tense = *tense;
  auto aspect = parse_syntactic_aspect(kv["aspect"].first);
  if (!aspect) {
    throw InputError(where + "bad aspect '" + kv["aspect"].first + "'");
  }
  c.syn_aspect = *aspect;
  auto sem = parse_semantic_aspect(kv["sem"].first);
  if (!sem) throw InputError(where + "bad sem '" + kv["sem"].first + "'");
  c.sem_aspect = *sem;
  if (auto it = kv.find("cue"); it != kv.end()) {
    if (!internal::plain_token(it->second.first)) {
      throw InputError(where + "bad cue '" + it->second.first + "'");
    }
    c.cue = it->second.first;
  }
  if (auto it = kv.find("temprel"); it != kv.end()) {
    const std::string &v = it->second.first;
    auto at = v.find('@');
    TempExprDirective tx;
    auto rel = parse_core_relation(v.substr(0, at));
    if (!rel) throw InputError(where + "bad temprel relation '" + v + "'");
    tx.relation = *rel;
    if (at != std::string::npos) {
      std::string anchor = v.substr(at + 1);
      if (!internal::plain_token(anchor)) {
        throw InputError(where + "bad temprel anchor '" + v + "'");
      }
      tx.anchor = anchor;
    }
    c.temp_expr = tx;
  }
  if (auto it = kv.find("words"); it != kv.end()) {
    std::string w;
    std::istringstream ws(it->second.first);
    while (std::getline(ws, w, ',')) {
      if (!internal::plain_token(w)) {
        throw InputError(where + "bad word list '" + it->second.first + "'");
      }
      c.words.push_back(w);
    }
    if (c.words.empty() || it->second.first.back() == ',') {
      throw InputError(where + "bad word list '" + it->second.first + "'");
    }
  }
  if (auto it = kv.find("text"); it != kv.end()) c.text = it->second.first;
  return c;
}

inline DiscourseFile parse_discourse_file(std::istream &in,
                                          std::string_view source = "input") {
  DiscourseFile file;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string where = std::string(source) + ":" + std::to_string(lineno) + ": ";
    std::vector<std::string> fields;
    std::string comment = internal::split_fields(line, where, fields);
    auto start = comment.find_first_not_of(" \t");
    if (start != std::string::npos &&
        comment.compare(start, 7, "expect ") == 0) {
      file.directives.push_back(comment.substr(start + 7));
    }
    if (fields.empty()) continue;
    ClauseAnnotation c = parse_clause_fields(fields, where);
    for (const auto &prev : file.clauses) {
      if (prev.id == c.id) {
        throw InputError(where + "duplicate clause id '" + c.id + "'");
      }
    }
    file.clauses.push_back(std::move(c));
  }
  return file;
}

inline std::vector<ClauseAnnotation> parse_discourse(
    std::istream &in, std::string_view source = "input") {
  return parse_discourse_file(in, source).clauses;
}

inline std::vector<ClauseAnnotation> parse_discourse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_discourse(in);
}

inline DiscourseFile load_discourse_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open discourse file " + path.string());
  return parse_discourse_file(in, path.string());
}

inline std::string render_clause(const ClauseAnnotation &c) {
  std::string out = "clause id=" + c.id + " tense=" +
                    std::string(to_string(c.tense)) + " aspect=" +
                    std::string(to_string(c.syn_aspect)) + " sem=" +
                    std::string(to_string(c.sem_aspect));
  if (c.cue) out += " cue=" + *c.cue;
  if (c.temp_expr) {
    out += " temprel=" + std::string(to_string(c.temp_expr->relation));
    if (c.temp_expr->anchor) out += "@" + *c.temp_expr->anchor;
  }
  if (!c.words.empty()) {
    out += " words=";
    for (std::size_t i = 0; i < c.words.size(); ++i) {
      if (i) out += ',';
      out += c.words[i];
    }
  }
  if (c.text) {
    out += " text=\"";
    for (char ch : *c.text) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    out += '"';
  }
  return out;
}

inline std::string render_discourse(const std::vector<ClauseAnnotation> &d) {
  std::string out;
  for (const auto &c : d) out += render_clause(c) + "\n";
  return out;
}

}  // namespace tempora
