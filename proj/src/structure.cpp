#include "wlr/structure.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "wlr/error.hpp"

namespace wlr {

Vocabulary::Vocabulary(std::vector<RelationSymbol> relations) {
  for (auto& r : relations) add(std::move(r.name), r.arity);
}

std::size_t Vocabulary::add(std::string name, int arity) {
  if (arity < 1) throw InputError("relation '" + name + "' must have arity >= 1");
  if (name.empty() || name.find_first_of(" \t\r\n#") != std::string::npos)
    throw InputError("relation name '" + name + "' must be a non-empty token");
  if (index_of(name)) throw InputError("duplicate relation name '" + name + "'");
  relations_.push_back({std::move(name), arity});
  return relations_.size() - 1;
}

std::optional<std::size_t> Vocabulary::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

int Vocabulary::max_arity() const {
  int m = 0;
  for (const auto& r : relations_) m = std::max(m, r.arity);
  return m;
}

RelationalStructure::RelationalStructure(Vocabulary vocabulary, std::uint32_t universe_size,
                                         std::string name)
    : name_(std::move(name)),
      vocabulary_(std::move(vocabulary)),
      n_(universe_size),
      tuples_(vocabulary_.size()),
      codes_(vocabulary_.size()) {
  // Membership codes are mixed-radix integers; make sure they fit.
  long double limit = std::numeric_limits<std::uint64_t>::max();
  for (const auto& r : vocabulary_.relations()) {
    long double space = 1;
    for (int i = 0; i < r.arity; ++i) space *= std::max<std::uint32_t>(n_, 1);
    if (space >= limit) throw InputError("relation '" + r.name + "' is too large to index");
  }
}

std::uint64_t RelationalStructure::code(std::span<const Element> tuple) const {
  std::uint64_t c = 0;
  for (Element e : tuple) c = c * n_ + e;
  return c;
}

void RelationalStructure::add_tuple(std::size_t relation, std::span<const Element> tuple) {
  if (relation >= vocabulary_.size()) throw InputError("relation index out of range");
  const auto& sym = vocabulary_[relation];
  if (static_cast<int>(tuple.size()) != sym.arity)
    throw InputError("tuple of length " + std::to_string(tuple.size()) + " in relation '" +
                     sym.name + "' of arity " + std::to_string(sym.arity));
  for (Element e : tuple)
    if (e >= n_)
      throw InputError("element " + std::to_string(e) + " outside universe of size " +
                       std::to_string(n_));
  tuples_[relation].emplace(tuple.begin(), tuple.end());
  codes_[relation].insert(code(tuple));
}

bool RelationalStructure::contains(std::size_t relation, std::span<const Element> tuple) const {
  return codes_[relation].count(code(tuple)) != 0;
}

RelationalStructure RelationalStructure::permuted(std::span<const Element> perm) const {
  if (perm.size() != n_) throw InputError("permutation size does not match universe");
  RelationalStructure out(vocabulary_, n_, name_);
  Tuple image;
  for (std::size_t r = 0; r < tuples_.size(); ++r) {
    for (const auto& t : tuples_[r]) {
      image.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = perm[t[i]];
      out.add_tuple(r, image);
    }
  }
  return out;
}

namespace {

std::string strip(const std::string& line) {
  auto hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw InputError("line " + std::to_string(line_no) + ": " + msg);
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line_no) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    fail(line_no, "expected a non-negative integer, got '" + tok + "'");
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    fail(line_no, "integer out of range: '" + tok + "'");
  }
}

}  // namespace

std::vector<RelationalStructure> parse_structures(std::istream& in) {
  std::vector<RelationalStructure> out;
  std::string raw;
  std::size_t line_no = 0;

  std::optional<std::string> name;
  std::optional<std::uint32_t> universe;
  Vocabulary vocab;
  std::vector<std::vector<Tuple>> pending;

  auto finish = [&]() {
    if (!name) fail(line_no, "'end' without 'structure'");
    if (!universe) fail(line_no, "structure '" + *name + "' has no universe line");
    RelationalStructure s(vocab, *universe, *name);
    for (std::size_t r = 0; r < pending.size(); ++r)
      for (const auto& t : pending[r]) s.add_tuple(r, t);
    out.push_back(std::move(s));
    name.reset();
    universe.reset();
    vocab = Vocabulary();
    pending.clear();
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    std::vector<std::string> rest;
    for (std::string tok; ls >> tok;) rest.push_back(tok);

    if (head == "structure") {
      if (name) fail(line_no, "nested 'structure' (missing 'end')");
      if (rest.size() != 1) fail(line_no, "expected 'structure <name>'");
      name = rest[0];
    } else if (head == "universe") {
      if (!name) fail(line_no, "'universe' outside a structure block");
      if (universe) fail(line_no, "duplicate 'universe' line");
      if (rest.size() != 1) fail(line_no, "expected 'universe <n>'");
      auto n = parse_uint(rest[0], line_no);
      if (n > std::numeric_limits<std::uint32_t>::max()) fail(line_no, "universe too large");
      universe = static_cast<std::uint32_t>(n);
    } else if (head == "relation") {
      if (!name) fail(line_no, "'relation' outside a structure block");
      if (rest.size() != 2) fail(line_no, "expected 'relation <name> <arity>'");
      auto arity = parse_uint(rest[1], line_no);
      if (arity < 1 || arity > 64) fail(line_no, "arity must be in [1, 64]");
      try {
        vocab.add(rest[0], static_cast<int>(arity));
      } catch (const InputError& e) {
        fail(line_no, e.what());
      }
      pending.emplace_back();
    } else if (head == "end") {
      if (!rest.empty()) fail(line_no, "unexpected tokens after 'end'");
      finish();
    } else {
      if (pending.empty()) fail(line_no, "tuple line outside a relation block");
      Tuple t;
      t.push_back(static_cast<Element>(parse_uint(head, line_no)));
      for (const auto& tok : rest) t.push_back(static_cast<Element>(parse_uint(tok, line_no)));
      const auto& sym = vocab[pending.size() - 1];
      if (static_cast<int>(t.size()) != sym.arity)
        fail(line_no, "tuple length " + std::to_string(t.size()) + " does not match arity " +
                          std::to_string(sym.arity) + " of '" + sym.name + "'");
      if (universe)
        for (Element e : t)
          if (e >= *universe) fail(line_no, "element " + std::to_string(e) + " out of range");
      pending.back().push_back(std::move(t));
    }
  }
  if (name) fail(line_no, "missing 'end' for structure '" + *name + "'");
  return out;
}

RelationalStructure parse_structure(std::istream& in) {
  auto all = parse_structures(in);
  if (all.size() != 1)
    throw InputError("expected exactly one structure, found " + std::to_string(all.size()));
  return std::move(all.front());
}

RelationalStructure parse_structure_string(const std::string& text) {
  std::istringstream in(text);
  return parse_structure(in);
}

void print_structure(std::ostream& out, const RelationalStructure& s) {
  out << "structure " << s.name() << '\n';
  out << "universe " << s.universe_size() << '\n';
  for (std::size_t r = 0; r < s.vocabulary().size(); ++r) {
    const auto& sym = s.vocabulary()[r];
    out << "relation " << sym.name << ' ' << sym.arity << '\n';
    for (const auto& t : s.tuples(r)) {
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
      out << '\n';
    }
  }
  out << "end\n";
}

std::string structure_to_string(const RelationalStructure& s) {
  std::ostringstream os;
  print_structure(os, s);
  return os.str();
}

RelationalStructure undirected_graph(std::uint32_t n,
                                     std::span<const std::pair<Element, Element>> edges,
                                     std::string name) {
  Vocabulary v;
  v.add("E", 2);
  RelationalStructure g(v, n, std::move(name));
  for (auto [a, b] : edges) {
    if (a == b) throw InputError("graphs are loop-free");
    g.add_tuple(0, {a, b});
    g.add_tuple(0, {b, a});
  }
  return g;
}

RelationalStructure complete_graph(std::uint32_t n) {
  std::vector<std::pair<Element, Element>> e;
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return undirected_graph(n, e, "K" + std::to_string(n));
}

RelationalStructure path_graph(std::uint32_t n) {
  std::vector<std::pair<Element, Element>> e;
  for (Element a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
  return undirected_graph(n, e, "P" + std::to_string(n));
}

RelationalStructure cycle_graph(std::uint32_t n) { return disjoint_cycles(1, n); }

RelationalStructure disjoint_cycles(std::uint32_t copies, std::uint32_t len) {
  if (len < 3) throw InputError("cycles need length >= 3");
  std::vector<std::pair<Element, Element>> e;
  for (std::uint32_t c = 0; c < copies; ++c)
    for (std::uint32_t i = 0; i < len; ++i) e.emplace_back(c * len + i, c * len + (i + 1) % len);
  return undirected_graph(copies * len, e,
                          copies == 1 ? "C" + std::to_string(len)
                                      : std::to_string(copies) + "xC" + std::to_string(len));
}

}  // namespace wlr
