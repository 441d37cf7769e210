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

#ifndef CATMAP_ONTOLOGY_H_
#define CATMAP_ONTOLOGY_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace catmap {

// Which side of the alignment a hierarchy belongs to.
enum class ClassSource { kSourceTaxonomy, kTargetOntology };

enum class LoadMode { kStrict, kLenient };

struct OntologyClass {
  std::string id;
  std::string label;
  ClassSource source = ClassSource::kSourceTaxonomy;
  std::optional<int64_t> instance_count;
};

// A directed child -> parent edge, by class id.
struct ClassEdge {
  std::string child;
  std::string parent;

  bool operator==(const ClassEdge &) const = default;
  auto operator<=>(const ClassEdge &) const = default;
};

struct CycleReport {
  std::vector<ClassEdge> removed_edges;
  int64_t cycle_count = 0;
};

// Counters for what lenient loading tolerated.
struct LoadDiagnostics {
  int64_t malformed_lines = 0;
  int64_t stub_classes = 0;
  int64_t conflicting_duplicates = 0;
  int64_t dangling_members = 0;
};

// An immutable class hierarchy. Classes are stored in ascending id order and
// addressed by a dense index; parent and child lists are sorted by index,
// which is also id order. Construction computes a topological order and
// longest-chain depths when the hierarchy is acyclic. All const methods are
// safe for concurrent readers.
class TaxonomyGraph {
 public:
  using Index = uint32_t;

  TaxonomyGraph() = default;

  // Builds a graph from parts. Every edge endpoint and membership class must
  // name a class in `classes`; otherwise throws kDanglingReference. Duplicate
  // ids throw kDuplicateId. Duplicate edges and memberships are merged.
  static TaxonomyGraph FromParts(ClassSource source,
                                 std::vector<OntologyClass> classes,
                                 std::vector<ClassEdge> edges,
                                 std::vector<std::pair<std::string, std::string>>
                                     memberships = {});

  ClassSource source() const { return source_; }
  size_t size() const { return classes_.size(); }
  size_t edge_count() const { return parent_ids_.size(); }

  std::optional<Index> Find(std::string_view id) const;
  // Throws kUnknownId.
  Index IndexOf(std::string_view id) const;
  bool Contains(std::string_view id) const { return Find(id).has_value(); }

  const OntologyClass &at(Index i) const { return classes_[i]; }
  const std::string &id(Index i) const { return classes_[i].id; }
  const std::vector<OntologyClass> &classes() const { return classes_; }

  std::span<const Index> parents(Index i) const {
    return {parent_ids_.data() + parent_offsets_[i],
            parent_offsets_[i + 1] - parent_offsets_[i]};
  }
  std::span<const Index> children(Index i) const {
    return {child_ids_.data() + child_offsets_[i],
            child_offsets_[i + 1] - child_offsets_[i]};
  }
  // Member entity titles, verbatim, sorted and deduplicated.
  std::span<const std::string> members(Index i) const {
    return {member_titles_.data() + member_offsets_[i],
            member_offsets_[i + 1] - member_offsets_[i]};
  }

  // The unique parentless class, if there is exactly one.
  std::optional<Index> root() const { return root_; }

  bool acyclic() const { return acyclic_; }

  // Parents precede children. Empty when the graph has a cycle.
  const std::vector<Index> &topological_order() const { return topo_; }

  // Length of the longest parent chain to a parentless class. Throws
  // kInvalidArgument on a cyclic graph.
  int depth(Index i) const;

  // True iff a != b and a is reachable from b by following parent edges.
  bool IsStrictAncestor(Index a, Index b) const;

  // Every edge as (child id, parent id), sorted.
  std::vector<ClassEdge> Edges() const;
  std::vector<std::pair<std::string, std::string>> Memberships() const;

  bool operator==(const TaxonomyGraph &other) const;

 private:
  void Finalize();

  ClassSource source_ = ClassSource::kSourceTaxonomy;
  std::vector<OntologyClass> classes_;
  std::vector<size_t> parent_offsets_{0};
  std::vector<Index> parent_ids_;
  std::vector<size_t> child_offsets_{0};
  std::vector<Index> child_ids_;
  std::vector<size_t> member_offsets_{0};
  std::vector<std::string> member_titles_;
  std::optional<Index> root_;
  bool acyclic_ = true;
  std::vector<Index> topo_;
  std::vector<int> depth_;
};

struct TaxonomyStreams {
  std::istream *edges = nullptr;
  std::istream *labels = nullptr;
  std::istream *membership = nullptr;  // optional
  std::string edges_name = "edges";
  std::string labels_name = "labels";
  std::string membership_name = "membership";
};

// Loads the tab-separated edge, label and membership streams. The result
// does not depend on input row order. Strict mode rejects malformed rows,
// dangling references and conflicting duplicate ids; lenient mode counts them
// in `diagnostics`, creates stub classes (label = id) for unknown edge or
// membership endpoints, and keeps the smallest (label, count) row among
// conflicting duplicates.
TaxonomyGraph LoadTaxonomy(const TaxonomyStreams &streams, ClassSource source,
                           LoadMode mode,
                           LoadDiagnostics *diagnostics = nullptr);

// Removes back edges found by a depth-first walk that starts from classes in
// ascending id order and follows parent edges in ascending id order.
std::pair<TaxonomyGraph, CycleReport> BreakCycles(const TaxonomyGraph &graph);

bool IsStrictAncestor(const TaxonomyGraph &graph, std::string_view ancestor,
                      std::string_view descendant);

int Depth(const TaxonomyGraph &graph, std::string_view id);

// The member of a chain (a set totally ordered by ancestry) that has no
// descendant in the set. Throws kNotAChain if two members are incomparable.
std::string DeepestOnChain(const TaxonomyGraph &graph,
                           std::span<const std::string> classes);

// Non-throwing variant on indices; nullopt when not a chain or empty.
std::optional<TaxonomyGraph::Index> DeepestIfChain(
    const TaxonomyGraph &graph, std::span<const TaxonomyGraph::Index> classes);

}  // namespace catmap

#endif  // CATMAP_ONTOLOGY_H_
