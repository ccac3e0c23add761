#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wlr {

using Var = std::uint32_t;

/// sum_{x in support} x == parity (mod 2). The support is kept sorted and duplicate-free.
struct XorConstraint {
  std::vector<Var> support;
  std::uint8_t parity = 0;

  XorConstraint() = default;
  /// Throws InputError on repeated variables or a parity other than 0/1.
  XorConstraint(std::vector<Var> vars, int parity);

  auto operator<=>(const XorConstraint&) const = default;
  bool operator==(const XorConstraint&) const = default;
};

/// Symmetric difference of supports, sum of parities.
XorConstraint combine(const XorConstraint& a, const XorConstraint& b);

class XorSystem {
 public:
  XorSystem() = default;
  /// Variables named x1..xn.
  explicit XorSystem(std::size_t num_vars);
  explicit XorSystem(std::vector<std::string> names);

  std::size_t num_vars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Var x) const { return names_[x]; }
  std::optional<Var> find(const std::string& name) const;

  /// Returns false if the constraint was already present. Throws InputError on bad ids.
  bool add(const XorConstraint& c);
  bool add(std::vector<Var> vars, int parity) { return add(XorConstraint(std::move(vars), parity)); }
  bool contains(const XorConstraint& c) const { return constraints_.count(c) != 0; }

  /// Canonical (sorted) order; indices into this set are stable for a fixed system.
  const std::set<XorConstraint>& constraints() const { return constraints_; }
  std::vector<XorConstraint> constraint_list() const {
    return {constraints_.begin(), constraints_.end()};
  }
  std::size_t size() const { return constraints_.size(); }
  bool empty() const { return constraints_.empty(); }
  /// Maximum support size (0 for the empty system).
  std::size_t arity() const;

  bool operator==(const XorSystem& o) const {
    return names_ == o.names_ && constraints_ == o.constraints_;
  }

 private:
  std::vector<std::string> names_;
  std::set<XorConstraint> constraints_;
};

/// beta: X -> {0,1} for a finite set X of variables.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  PartialAssignment(std::initializer_list<std::pair<const Var, std::uint8_t>> init);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool contains(Var x) const { return values_.count(x) != 0; }
  std::optional<std::uint8_t> get(Var x) const;
  void set(Var x, int bit);
  void erase(Var x) { values_.erase(x); }
  std::vector<Var> domain() const;
  const std::map<Var, std::uint8_t>& values() const { return values_; }

  auto operator<=>(const PartialAssignment&) const = default;
  bool operator==(const PartialAssignment&) const = default;

 private:
  std::map<Var, std::uint8_t> values_;
};

/// support ⊆ dom(beta) and the assigned bits sum to the wrong parity.
bool violates(const PartialAssignment& beta, const XorConstraint& c);
/// First constraint (canonical order) violated by beta, as an index into constraints().
std::optional<std::size_t> first_violated(const PartialAssignment& beta, const XorSystem& s);
/// Total assignment (one bit per variable) satisfies every constraint.
bool satisfies(const std::vector<std::uint8_t>& assignment, const XorSystem& s);

/// Text format:
///   vars x1 x2 ...
///   constraint <parity> <var> <var> ...
/// with '#' comments. Throws InputError with a line number on malformed input.
XorSystem parse_xor_system(std::istream& in);
XorSystem parse_xor_system_string(const std::string& text);
void print_xor_system(std::ostream& out, const XorSystem& s);
std::string xor_system_to_string(const XorSystem& s);

}  // namespace wlr
