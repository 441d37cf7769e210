// Copyright 2026 The Catmap Authors.
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

#include "catmap/ontology.h"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "catmap/error.h"
#include "catmap/text.h"

namespace catmap {

namespace {

using Index = TaxonomyGraph::Index;

struct LabelRow {
  std::string label;
  std::optional<int64_t> count;
  int64_t line = 0;

  bool SameValue(const LabelRow &o) const {
    return label == o.label && count == o.count;
  }
  bool operator<(const LabelRow &o) const {
    if (label != o.label) return label < o.label;
    return count < o.count;
  }
};

bool LabelHasText(std::string_view label) {
  for (char c : label) {
    if (c != '_' && c != ' ' && c != '\t') return true;
  }
  return false;
}

}  // namespace

TaxonomyGraph TaxonomyGraph::FromParts(
    ClassSource source, std::vector<OntologyClass> classes,
    std::vector<ClassEdge> edges,
    std::vector<std::pair<std::string, std::string>> memberships) {
  TaxonomyGraph g;
  g.source_ = source;
  std::sort(classes.begin(), classes.end(),
            [](const OntologyClass &a, const OntologyClass &b) {
              return a.id < b.id;
            });
  for (size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].id.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty class id");
    }
    if (i > 0 && classes[i].id == classes[i - 1].id) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate class id '" + classes[i].id + "'");
    }
    classes[i].source = source;
  }
  g.classes_ = std::move(classes);
  const size_t n = g.classes_.size();

  auto resolve = [&](const std::string &id, const char *what) {
    auto idx = g.Find(id);
    if (!idx) {
      throw Error(ErrorCode::kDanglingReference,
                  std::string(what) + " references unknown class '" + id + "'");
    }
    return *idx;
  };

  std::vector<std::pair<Index, Index>> pairs;  // (child, parent)
  pairs.reserve(edges.size());
  for (const ClassEdge &e : edges) {
    pairs.emplace_back(resolve(e.child, "edge"), resolve(e.parent, "edge"));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  g.parent_offsets_.assign(n + 1, 0);
  g.child_offsets_.assign(n + 1, 0);
  for (auto [c, p] : pairs) {
    ++g.parent_offsets_[c + 1];
    ++g.child_offsets_[p + 1];
  }
  for (size_t i = 0; i < n; ++i) {
    g.parent_offsets_[i + 1] += g.parent_offsets_[i];
    g.child_offsets_[i + 1] += g.child_offsets_[i];
  }
  g.parent_ids_.resize(pairs.size());
  g.child_ids_.resize(pairs.size());
  {
    std::vector<size_t> pfill(g.parent_offsets_.begin(),
                              g.parent_offsets_.end() - 1);
    std::vector<size_t> cfill(g.child_offsets_.begin(),
                              g.child_offsets_.end() - 1);
    // pairs is sorted by (child, parent), so parent lists come out sorted;
    // child lists are filled in child order, which is also sorted.
    for (auto [c, p] : pairs) {
      g.parent_ids_[pfill[c]++] = p;
      g.child_ids_[cfill[p]++] = c;
    }
  }

  std::vector<std::pair<Index, std::string>> members;
  members.reserve(memberships.size());
  for (auto &[cls, title] : memberships) {
    members.emplace_back(resolve(cls, "membership"), std::move(title));
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  g.member_offsets_.assign(n + 1, 0);
  for (const auto &m : members) ++g.member_offsets_[m.first + 1];
  for (size_t i = 0; i < n; ++i) {
    g.member_offsets_[i + 1] += g.member_offsets_[i];
  }
  g.member_titles_.reserve(members.size());
  for (auto &m : members) g.member_titles_.push_back(std::move(m.second));

  g.Finalize();
  return g;
}

void TaxonomyGraph::Finalize() {
  const size_t n = classes_.size();
  std::vector<uint32_t> pending(n);
  std::deque<Index> ready;
  size_t parentless = 0;
  root_.reset();
  for (Index i = 0; i < n; ++i) {
    pending[i] = static_cast<uint32_t>(parents(i).size());
    if (pending[i] == 0) {
      ready.push_back(i);
      ++parentless;
      root_ = i;
    }
  }
  if (parentless != 1) root_.reset();

  topo_.clear();
  topo_.reserve(n);
  while (!ready.empty()) {
    Index i = ready.front();
    ready.pop_front();
    topo_.push_back(i);
    for (Index c : children(i)) {
      if (--pending[c] == 0) ready.push_back(c);
    }
  }
  acyclic_ = topo_.size() == n;
  depth_.clear();
  if (!acyclic_) {
    topo_.clear();
    return;
  }
  depth_.assign(n, 0);
  for (Index i : topo_) {
    for (Index p : parents(i)) depth_[i] = std::max(depth_[i], depth_[p] + 1);
  }
}

std::optional<Index> TaxonomyGraph::Find(std::string_view id) const {
  auto it = std::lower_bound(
      classes_.begin(), classes_.end(), id,
      [](const OntologyClass &c, std::string_view key) { return c.id < key; });
  if (it == classes_.end() || it->id != id) return std::nullopt;
  return static_cast<Index>(it - classes_.begin());
}

Index TaxonomyGraph::IndexOf(std::string_view id) const {
  auto idx = Find(id);
  if (!idx) {
    throw Error(ErrorCode::kUnknownId,
                "unknown class id '" + std::string(id) + "'");
  }
  return *idx;
}

int TaxonomyGraph::depth(Index i) const {
  if (!acyclic_) {
    throw Error(ErrorCode::kInvalidArgument,
                "depth is undefined on a cyclic graph; run BreakCycles first");
  }
  return depth_[i];
}

bool TaxonomyGraph::IsStrictAncestor(Index a, Index b) const {
  if (a == b) return false;
  if (acyclic_ && depth_[a] >= depth_[b]) return false;
  std::vector<Index> stack{b};
  std::unordered_set<Index> seen{b};
  while (!stack.empty()) {
    Index x = stack.back();
    stack.pop_back();
    for (Index p : parents(x)) {
      if (p == a) return true;
      // An ancestor of `a` can never lead back down to `a`.
      if (acyclic_ && depth_[p] <= depth_[a]) continue;
      if (seen.insert(p).second) stack.push_back(p);
    }
  }
  return false;
}

std::vector<ClassEdge> TaxonomyGraph::Edges() const {
  std::vector<ClassEdge> out;
  out.reserve(parent_ids_.size());
  for (Index c = 0; c < classes_.size(); ++c) {
    for (Index p : parents(c)) out.push_back({classes_[c].id, classes_[p].id});
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> TaxonomyGraph::Memberships()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(member_titles_.size());
  for (Index c = 0; c < classes_.size(); ++c) {
    for (const std::string &t : members(c)) out.emplace_back(classes_[c].id, t);
  }
  return out;
}

bool TaxonomyGraph::operator==(const TaxonomyGraph &o) const {
  if (source_ != o.source_ || classes_.size() != o.classes_.size()) {
    return false;
  }
  for (size_t i = 0; i < classes_.size(); ++i) {
    const auto &a = classes_[i];
    const auto &b = o.classes_[i];
    if (a.id != b.id || a.label != b.label ||
        a.instance_count != b.instance_count) {
      return false;
    }
  }
  return parent_offsets_ == o.parent_offsets_ &&
         parent_ids_ == o.parent_ids_ &&
         member_offsets_ == o.member_offsets_ &&
         member_titles_ == o.member_titles_;
}

TaxonomyGraph LoadTaxonomy(const TaxonomyStreams &streams, ClassSource source,
                           LoadMode mode, LoadDiagnostics *diagnostics) {
  if (streams.edges == nullptr || streams.labels == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "LoadTaxonomy needs both an edges and a labels stream");
  }
  LoadDiagnostics local;
  LoadDiagnostics &diag = diagnostics ? *diagnostics : local;
  const bool strict = mode == LoadMode::kStrict;

  auto malformed = [&](const LineReader &r, const std::string &what) {
    if (strict) throw Error(ErrorCode::kMalformedInput, r.Where(what));
    ++diag.malformed_lines;
  };

  // Labels.
  std::unordered_map<std::string, LabelRow> rows;
  {
    LineReader reader(*streams.labels, streams.labels_name);
    std::string_view line;
    while (reader.Next(&line)) {
      auto cols = Split(line, '\t');
      if (cols.size() != 2 && cols.size() != 3) {
        malformed(reader, "expected 2 or 3 tab-separated columns, got " +
                              std::to_string(cols.size()));
        continue;
      }
      std::string id(Trim(cols[0]));
      std::string_view label = Trim(cols[1]);
      if (id.empty() || !LabelHasText(label)) {
        malformed(reader, "empty class id or label");
        continue;
      }
      LabelRow row{std::string(label), std::nullopt, reader.line_number()};
      if (cols.size() == 3) {
        int64_t count = 0;
        if (!ParseInt64(Trim(cols[2]), &count) || count < 0) {
          malformed(reader, "instance count must be a non-negative integer");
          continue;
        }
        row.count = count;
      }
      auto [it, inserted] = rows.try_emplace(id, row);
      if (!inserted && !it->second.SameValue(row)) {
        if (strict) {
          throw Error(ErrorCode::kDuplicateId,
                      reader.Where("class '" + id +
                                   "' already defined with a different label "
                                   "on line " +
                                   std::to_string(it->second.line)));
        }
        ++diag.conflicting_duplicates;
        if (row < it->second) it->second = row;
      }
    }
  }

  auto ensure_known = [&](const std::string &id, const LineReader &reader,
                          const char *what) -> bool {
    if (rows.count(id)) return true;
    if (strict) {
      throw Error(ErrorCode::kDanglingReference,
                  reader.Where(std::string(what) + " references unlabeled class '" +
                               id + "'"));
    }
    rows.emplace(id, LabelRow{id, std::nullopt, 0});
    ++diag.stub_classes;
    return false;
  };

  std::vector<ClassEdge> edges;
  {
    LineReader reader(*streams.edges, streams.edges_name);
    std::string_view line;
    while (reader.Next(&line)) {
      auto cols = Split(line, '\t');
      if (cols.size() != 2) {
        malformed(reader, "expected 2 tab-separated columns, got " +
                              std::to_string(cols.size()));
        continue;
      }
      ClassEdge e{std::string(Trim(cols[0])), std::string(Trim(cols[1]))};
      if (e.child.empty() || e.parent.empty()) {
        malformed(reader, "empty class id in edge");
        continue;
      }
      ensure_known(e.child, reader, "edge");
      ensure_known(e.parent, reader, "edge");
      edges.push_back(std::move(e));
    }
  }

  std::vector<std::pair<std::string, std::string>> memberships;
  if (streams.membership != nullptr) {
    LineReader reader(*streams.membership, streams.membership_name);
    std::string_view line;
    while (reader.Next(&line)) {
      auto cols = Split(line, '\t');
      if (cols.size() != 2 || Trim(cols[0]).empty() || cols[1].empty()) {
        malformed(reader, "expected class_id<TAB>entity_title");
        continue;
      }
      std::string cls(Trim(cols[0]));
      if (!ensure_known(cls, reader, "membership")) ++diag.dangling_members;
      // Titles are kept verbatim.
      memberships.emplace_back(std::move(cls), std::string(cols[1]));
    }
  }

  std::vector<OntologyClass> classes;
  classes.reserve(rows.size());
  for (auto &[id, row] : rows) {
    classes.push_back({id, std::move(row.label), source, row.count});
  }
  return TaxonomyGraph::FromParts(source, std::move(classes), std::move(edges),
                                  std::move(memberships));
}

std::pair<TaxonomyGraph, CycleReport> BreakCycles(const TaxonomyGraph &graph) {
  CycleReport report;
  const size_t n = graph.size();
  enum Color : uint8_t { kWhite, kGray, kBlack };
  std::vector<uint8_t> color(n, kWhite);
  std::vector<std::pair<Index, Index>> removed;
  struct Frame {
    Index node;
    size_t next;
  };
  std::vector<Frame> stack;
  for (Index start = 0; start < n; ++start) {
    if (color[start] != kWhite) continue;
    color[start] = kGray;
    stack.push_back({start, 0});
    while (!stack.empty()) {
      Frame &f = stack.back();
      auto parents = graph.parents(f.node);
      if (f.next == parents.size()) {
        color[f.node] = kBlack;
        stack.pop_back();
        continue;
      }
      Index p = parents[f.next++];
      if (color[p] == kGray) {
        removed.emplace_back(f.node, p);
      } else if (color[p] == kWhite) {
        color[p] = kGray;
        stack.push_back({p, 0});
      }
    }
  }
  if (removed.empty()) return {graph, report};

  std::sort(removed.begin(), removed.end());
  std::vector<ClassEdge> kept;
  kept.reserve(graph.edge_count() - removed.size());
  for (Index c = 0; c < n; ++c) {
    for (Index p : graph.parents(c)) {
      if (!std::binary_search(removed.begin(), removed.end(),
                              std::make_pair(c, p))) {
        kept.push_back({graph.id(c), graph.id(p)});
      }
    }
  }
  for (auto [c, p] : removed) {
    report.removed_edges.push_back({graph.id(c), graph.id(p)});
  }
  report.cycle_count = static_cast<int64_t>(removed.size());
  return {TaxonomyGraph::FromParts(graph.source(), graph.classes(),
                                   std::move(kept), graph.Memberships()),
          report};
}

bool IsStrictAncestor(const TaxonomyGraph &graph, std::string_view ancestor,
                      std::string_view descendant) {
  return graph.IsStrictAncestor(graph.IndexOf(ancestor),
                                graph.IndexOf(descendant));
}

int Depth(const TaxonomyGraph &graph, std::string_view id) {
  return graph.depth(graph.IndexOf(id));
}

std::optional<Index> DeepestIfChain(const TaxonomyGraph &graph,
                                    std::span<const Index> classes) {
  if (classes.empty()) return std::nullopt;
  std::vector<Index> set(classes.begin(), classes.end());
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  // Strict ancestors are strictly shallower, so a chain sorted by depth must
  // link each member to the next.
  std::stable_sort(set.begin(), set.end(), [&](Index a, Index b) {
    return graph.depth(a) < graph.depth(b);
  });
  for (size_t i = 1; i < set.size(); ++i) {
    if (!graph.IsStrictAncestor(set[i - 1], set[i])) return std::nullopt;
  }
  return set.back();
}

std::string DeepestOnChain(const TaxonomyGraph &graph,
                           std::span<const std::string> classes) {
  if (classes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "DeepestOnChain: empty class set");
  }
  std::vector<Index> idx;
  idx.reserve(classes.size());
  for (const auto &c : classes) idx.push_back(graph.IndexOf(c));
  auto deepest = DeepestIfChain(graph, idx);
  if (!deepest) {
    throw Error(ErrorCode::kNotAChain,
                "classes are not totally ordered by ancestry");
  }
  return graph.id(*deepest);
}

}  // namespace catmap
