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

#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tempora/relation_lattice.hpp"

namespace tempora {

// Thesaurus-style association strengths between lemmas, in [0, 1].
// Symmetric; a lemma is fully close to itself and unrelated to anything not
// listed.
class Lexicon {
 public:
  Lexicon() = default;

  // Reads `lemma<TAB>lemma<TAB>score` lines. A repeated pair overrides the
  // earlier entry; a repeat with a different score in the opposite order is
  // reported in warnings().
  static Lexicon parse(std::istream &in, std::string_view source = "lexicon") {
    Lexicon lex;
    std::map<std::pair<std::string, std::string>, std::pair<double, bool>>
        seen;  // key -> (score, stored in the given order)
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      line.erase(line.find_last_not_of(" \t\r") + 1);
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      auto where = std::string(source) + ":" + std::to_string(lineno) + ": ";
      std::vector<std::string> fields;
      std::size_t start = 0;
      while (true) {
        auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
      }
      if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
        throw InputError(where + "expected lemma<TAB>lemma<TAB>score");
      }
      double score = 0;
      const std::string &s = fields[2];
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), score);
      if (ec != std::errc() || ptr != s.data() + s.size() || score < 0.0 ||
          score > 1.0) {
        throw InputError(where + "score must be a number in [0,1]");
      }
      bool forward = fields[0] <= fields[1];
      auto key = forward ? std::make_pair(fields[0], fields[1])
                         : std::make_pair(fields[1], fields[0]);
      if (auto it = seen.find(key); it != seen.end() &&
                                    it->second.second != forward &&
                                    it->second.first != score) {
        lex.warnings_.push_back(where + "asymmetric duplicate for " +
                                key.first + "/" + key.second + " (" +
                                std::to_string(it->second.first) + " vs " +
                                s + "), keeping the later score");
      }
      seen[key] = {score, forward};
      lex.scores_[key] = score;
    }
    return lex;
  }

  static Lexicon load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open lexicon file " + path.string());
    return parse(in, path.string());
  }

  double closeness(std::string_view a, std::string_view b) const {
    if (a == b) return 1.0;
    auto key = a < b ? std::make_pair(std::string(a), std::string(b))
                     : std::make_pair(std::string(b), std::string(a));
    auto it = scores_.find(key);
    return it == scores_.end() ? 0.0 : it->second;
  }

  const std::map<std::pair<std::string, std::string>, double> &entries()
      const {
    return scores_;
  }

  const std::vector<std::string> &warnings() const { return warnings_; }

 private:
  std::map<std::pair<std::string, std::string>, double> scores_;
  std::vector<std::string> warnings_;
};

// Strongest single link between a clause's words and a thread's words.
template <class ClauseWords, class ThreadWords>
double dcu_thread_closeness(const Lexicon &lex, const ClauseWords &words,
                            const ThreadWords &thread_words) {
  double best = 0.0;
  for (const auto &w : words) {
    for (const auto &t : thread_words) {
      best = std::max(best, lex.closeness(w, t));
    }
  }
  return best;
}

}  // namespace tempora
