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
#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tempora {

// Raised for malformed data files, discourse files and annotations.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The four temporal relations every rhetorical relation refines.
enum class CoreRelation { kJustAfter, kPrecede, kOverlap, kSameEvent };

inline constexpr std::array<CoreRelation, 4> kCoreRelations = {
    CoreRelation::kJustAfter, CoreRelation::kPrecede, CoreRelation::kOverlap,
    CoreRelation::kSameEvent};

inline std::string_view to_string(CoreRelation r) {
  switch (r) {
    case CoreRelation::kJustAfter: return "just_after";
    case CoreRelation::kPrecede: return "precede";
    case CoreRelation::kOverlap: return "overlap";
    case CoreRelation::kSameEvent: return "same_event";
  }
  return "???";
}

inline std::optional<CoreRelation> parse_core_relation(std::string_view s) {
  for (CoreRelation r : kCoreRelations) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

// A node of the temporal/rhetorical type hierarchy, identified by name.
// Which names exist and how they are ordered is decided by a Lattice.
class RelationNode {
 public:
  RelationNode() = default;
  explicit RelationNode(std::string name) : name_(std::move(name)) {}
  explicit RelationNode(CoreRelation r) : name_(to_string(r)) {}

  const std::string &name() const { return name_; }

  auto operator<=>(const RelationNode &) const = default;

 private:
  std::string name_;
};

inline constexpr std::string_view kTopName = "any_rel";
inline constexpr std::string_view kBottomName = "bottom";

// Finite bounded lattice of relation nodes. The partial order is read from
// `child parent` edges; the top is any_rel and an explicit bottom sits below
// every node so that meet is total.
class Lattice {
 public:
  static Lattice from_edges(
      const std::vector<std::pair<std::string, std::string>> &edges) {
    Lattice l;
    auto intern = [&l](const std::string &name) {
      auto it = l.index_.find(name);
      if (it != l.index_.end()) return it->second;
      int id = static_cast<int>(l.names_.size());
      l.names_.push_back(name);
      l.index_.emplace(name, id);
      return id;
    };
    intern(std::string(kTopName));
    for (CoreRelation r : kCoreRelations) intern(std::string(to_string(r)));
    std::vector<std::pair<int, int>> ids;
    for (const auto &[child, parent] : edges) {
      if (child == kBottomName || parent == kBottomName) {
        throw InputError("lattice: bottom is implicit and may not appear");
      }
      if (child == parent) throw InputError("lattice: self edge on " + child);
      ids.emplace_back(intern(child), intern(parent));
    }
    l.bottom_ = intern(std::string(kBottomName));
    l.top_ = l.index_.at(std::string(kTopName));

    const int n = static_cast<int>(l.names_.size());
    l.leq_.assign(n * n, false);
    for (int i = 0; i < n; ++i) l.set_leq(i, i);
    for (auto [c, p] : ids) l.set_leq(c, p);
    for (int i = 0; i < n; ++i) l.set_leq(l.bottom_, i);
    // Reflexive-transitive closure.
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        if (!l.leq_at(i, k)) continue;
        for (int j = 0; j < n; ++j) {
          if (l.leq_at(k, j)) l.set_leq(i, j);
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && l.leq_at(i, j) && l.leq_at(j, i)) {
          throw InputError("lattice: cycle through " + l.names_[i] + " and " +
                           l.names_[j]);
        }
      }
      if (!l.leq_at(i, l.top_)) {
        throw InputError("lattice: node " + l.names_[i] +
                         " is not below any_rel");
      }
    }
    l.build_tables();
    l.build_projection();
    return l;
  }

  // Parses `child parent` lines; `#` starts a comment.
  static Lattice parse(std::istream &in, std::string_view source = "lattice") {
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream fields(line);
      std::string child, parent, extra;
      if (!(fields >> child)) continue;
      if (!(fields >> parent) || (fields >> extra)) {
        throw InputError(std::string(source) + ":" + std::to_string(lineno) +
                         ": expected `child parent`");
      }
      edges.emplace_back(child, parent);
    }
    return from_edges(edges);
  }

  static Lattice load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open lattice file " + path.string());
    return parse(in, path.string());
  }

  bool contains(std::string_view name) const {
    return index_.count(std::string(name)) > 0;
  }
  bool contains(const RelationNode &n) const { return contains(n.name()); }

  RelationNode top() const { return RelationNode(names_[top_]); }
  RelationNode bottom() const { return RelationNode(names_[bottom_]); }
  bool is_top(const RelationNode &n) const { return id(n) == top_; }
  bool is_bottom(const RelationNode &n) const { return id(n) == bottom_; }

  // All nodes except bottom, in declaration order.
  std::vector<RelationNode> nodes() const {
    std::vector<RelationNode> out;
    for (int i = 0; i < size(); ++i) {
      if (i != bottom_) out.emplace_back(names_[i]);
    }
    return out;
  }

  // True when a is a subtype of (at least as specific as) b.
  bool leq(const RelationNode &a, const RelationNode &b) const {
    return leq_at(id(a), id(b));
  }

  RelationNode meet_total(const RelationNode &a, const RelationNode &b) const {
    return RelationNode(names_[meet_[id(a) * size() + id(b)]]);
  }

  // Greatest lower bound; nullopt signals inconsistent information.
  std::optional<RelationNode> meet(const RelationNode &a,
                                   const RelationNode &b) const {
    int m = meet_[id(a) * size() + id(b)];
    if (m == bottom_) return std::nullopt;
    return RelationNode(names_[m]);
  }

  RelationNode join(const RelationNode &a, const RelationNode &b) const {
    return RelationNode(names_[join_[id(a) * size() + id(b)]]);
  }

  // Maps a node to the core temporal relation it refines. Undefined (nullopt)
  // for any_rel and bottom.
  std::optional<CoreRelation> temporal_projection(const RelationNode &n) const {
    return projection_[id(n)];
  }

 private:
  int size() const { return static_cast<int>(names_.size()); }

  int id(const RelationNode &n) const {
    auto it = index_.find(n.name());
    if (it == index_.end()) {
      throw InputError("unknown relation node '" + n.name() + "'");
    }
    return it->second;
  }

  bool leq_at(int a, int b) const { return leq_[a * size() + b]; }
  void set_leq(int a, int b) { leq_[a * size() + b] = true; }

  void build_tables() {
    const int n = size();
    meet_.assign(n * n, -1);
    join_.assign(n * n, -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        int glb = -1, lub = -1;
        for (int c = 0; c < n; ++c) {
          if (leq_at(c, a) && leq_at(c, b) && (glb < 0 || leq_at(glb, c))) {
            glb = c;
          }
          if (leq_at(a, c) && leq_at(b, c) && (lub < 0 || leq_at(c, lub))) {
            lub = c;
          }
        }
        // The greedy pick is the bound only if it dominates every candidate.
        for (int c = 0; c < n; ++c) {
          if (leq_at(c, a) && leq_at(c, b) && !leq_at(c, glb)) glb = -1;
          if (leq_at(a, c) && leq_at(b, c) && !leq_at(lub, c)) lub = -1;
          if (glb < 0 || lub < 0) break;
        }
        if (glb < 0 || lub < 0) {
          throw InputError("lattice: " + names_[a] + " and " + names_[b] +
                           " have no unique meet/join");
        }
        meet_[a * n + b] = glb;
        join_[a * n + b] = lub;
      }
    }
  }

  void build_projection() {
    projection_.assign(size(), std::nullopt);
    for (int i = 0; i < size(); ++i) {
      if (i == top_ || i == bottom_) continue;
      for (CoreRelation r : kCoreRelations) {
        if (!leq_at(i, index_.at(std::string(to_string(r))))) continue;
        if (projection_[i]) {
          throw InputError("lattice: " + names_[i] +
                           " refines more than one core relation");
        }
        projection_[i] = r;
      }
      if (!projection_[i]) {
        throw InputError("lattice: " + names_[i] +
                         " does not refine a core relation");
      }
    }
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<bool> leq_;
  std::vector<int> meet_;
  std::vector<int> join_;
  std::vector<std::optional<CoreRelation>> projection_;
  int top_ = 0;
  int bottom_ = 0;
};

// Cue word (or phrase, joined with underscores) together with the relation
// node it marks.
struct CueMarker {
  std::string token;
  RelationNode node;
};

// Maps lowercase cue tokens to the rhetorical relation they signal.
class CueLexicon {
 public:
  CueLexicon() = default;

  // Parses `token node` lines; every node must exist in the lattice.
  static CueLexicon parse(std::istream &in, const Lattice &lattice,
                          std::string_view source = "cues") {
    CueLexicon lex;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream fields(line);
      std::string token, node, extra;
      if (!(fields >> token)) continue;
      auto where = std::string(source) + ":" + std::to_string(lineno) + ": ";
      if (!(fields >> node) || (fields >> extra)) {
        throw InputError(where + "expected `token node`");
      }
      if (std::any_of(token.begin(), token.end(), [](unsigned char c) {
            return std::isupper(c) != 0;
          })) {
        throw InputError(where + "cue token '" + token + "' is not lowercase");
      }
      if (!lattice.contains(node) || lattice.is_bottom(RelationNode(node))) {
        throw InputError(where + "unknown relation node '" + node + "'");
      }
      lex.entries_[token] = RelationNode(node);
    }
    return lex;
  }

  static CueLexicon load(const std::filesystem::path &path,
                         const Lattice &lattice) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open cue file " + path.string());
    return parse(in, lattice, path.string());
  }

  bool contains(std::string_view token) const {
    return entries_.count(std::string(token)) > 0;
  }

  RelationNode cue_relation(std::string_view token) const {
    auto it = entries_.find(std::string(token));
    if (it == entries_.end()) {
      throw InputError("unknown cue '" + std::string(token) + "'");
    }
    return it->second;
  }

  CueMarker marker(std::string_view token) const {
    return CueMarker{std::string(token), cue_relation(token)};
  }

  const std::map<std::string, RelationNode> &entries() const {
    return entries_;
  }

 private:
  std::map<std::string, RelationNode> entries_;
};

}  // namespace tempora
