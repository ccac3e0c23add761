#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace wlr {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

struct RelationSymbol {
  std::string name;
  int arity = 1;

  bool operator==(const RelationSymbol&) const = default;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<RelationSymbol> relations);

  /// Appends a relation symbol; returns its index. Names must be unique, arity >= 1.
  std::size_t add(std::string name, int arity);

  std::size_t size() const { return relations_.size(); }
  const RelationSymbol& operator[](std::size_t i) const { return relations_[i]; }
  const std::vector<RelationSymbol>& relations() const { return relations_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// 0 for the empty vocabulary.
  int max_arity() const;
  bool has_arity_at_most(int k) const { return max_arity() <= k; }

  bool operator==(const Vocabulary&) const = default;

 private:
  std::vector<RelationSymbol> relations_;
};

/// A finite relational structure over the universe {0, ..., n-1}.
class RelationalStructure {
 public:
  RelationalStructure() = default;
  RelationalStructure(Vocabulary vocabulary, std::uint32_t universe_size, std::string name = "A");

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  std::uint32_t universe_size() const { return n_; }

  void add_tuple(std::size_t relation, std::span<const Element> tuple);
  void add_tuple(std::size_t relation, std::initializer_list<Element> tuple) {
    add_tuple(relation, std::span<const Element>(tuple.begin(), tuple.size()));
  }
  bool contains(std::size_t relation, std::span<const Element> tuple) const;
  const std::set<Tuple>& tuples(std::size_t relation) const { return tuples_[relation]; }

  /// Image of the structure under the bijection `perm` (perm[v] is the new name of v).
  RelationalStructure permuted(std::span<const Element> perm) const;

  bool operator==(const RelationalStructure& other) const {
    return vocabulary_ == other.vocabulary_ && n_ == other.n_ && tuples_ == other.tuples_;
  }

 private:
  std::uint64_t code(std::span<const Element> tuple) const;

  std::string name_ = "A";
  Vocabulary vocabulary_;
  std::uint32_t n_ = 0;
  std::vector<std::set<Tuple>> tuples_;
  std::vector<std::unordered_set<std::uint64_t>> codes_;
};

/// Reads every structure block from the line-oriented text format.
std::vector<RelationalStructure> parse_structures(std::istream& in);
RelationalStructure parse_structure(std::istream& in);
RelationalStructure parse_structure_string(const std::string& text);

/// Canonical printer: relations in vocabulary order, tuples in lexicographic order.
void print_structure(std::ostream& out, const RelationalStructure& structure);
std::string structure_to_string(const RelationalStructure& structure);

// Small constructors used throughout tests and the CLI.
RelationalStructure undirected_graph(std::uint32_t n,
                                     std::span<const std::pair<Element, Element>> edges,
                                     std::string name = "G");
RelationalStructure complete_graph(std::uint32_t n);
RelationalStructure path_graph(std::uint32_t n);
RelationalStructure cycle_graph(std::uint32_t n);
/// Disjoint union of `copies` cycles of length `len`.
RelationalStructure disjoint_cycles(std::uint32_t copies, std::uint32_t len);

}  // namespace wlr
