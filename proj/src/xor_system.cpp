#include "wlr/xor_system.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "wlr/error.hpp"

namespace wlr {

XorConstraint::XorConstraint(std::vector<Var> vars, int p) : support(std::move(vars)) {
  if (p != 0 && p != 1) throw InputError("parity must be 0 or 1");
  parity = static_cast<std::uint8_t>(p);
  std::sort(support.begin(), support.end());
  if (std::adjacent_find(support.begin(), support.end()) != support.end())
    throw InputError("constraint support repeats a variable");
}

XorConstraint combine(const XorConstraint& a, const XorConstraint& b) {
  XorConstraint c;
  std::set_symmetric_difference(a.support.begin(), a.support.end(), b.support.begin(),
                                b.support.end(), std::back_inserter(c.support));
  c.parity = a.parity ^ b.parity;
  return c;
}

XorSystem::XorSystem(std::size_t num_vars) {
  for (std::size_t i = 0; i < num_vars; ++i) names_.push_back("x" + std::to_string(i + 1));
}

XorSystem::XorSystem(std::vector<std::string> names) : names_(std::move(names)) {
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("duplicate variable name");
  for (const auto& n : names_)
    if (n.empty() || n.find_first_of(" \t\r\n#") != std::string::npos)
      throw InputError("variable name '" + n + "' must be a non-empty token");
}

std::optional<Var> XorSystem::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Var>(i);
  return std::nullopt;
}

bool XorSystem::add(const XorConstraint& c) {
  for (Var x : c.support)
    if (x >= names_.size()) throw InputError("variable id " + std::to_string(x) + " out of range");
  return constraints_.insert(c).second;
}

std::size_t XorSystem::arity() const {
  std::size_t a = 0;
  for (const auto& c : constraints_) a = std::max(a, c.support.size());
  return a;
}

PartialAssignment::PartialAssignment(
    std::initializer_list<std::pair<const Var, std::uint8_t>> init) {
  for (auto [x, b] : init) set(x, b);
}

std::optional<std::uint8_t> PartialAssignment::get(Var x) const {
  auto it = values_.find(x);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void PartialAssignment::set(Var x, int bit) {
  if (bit != 0 && bit != 1) throw InputError("assignment bits must be 0 or 1");
  values_[x] = static_cast<std::uint8_t>(bit);
}

std::vector<Var> PartialAssignment::domain() const {
  std::vector<Var> d;
  for (const auto& [x, b] : values_) d.push_back(x);
  return d;
}

bool violates(const PartialAssignment& beta, const XorConstraint& c) {
  unsigned sum = 0;
  for (Var x : c.support) {
    auto b = beta.get(x);
    if (!b) return false;
    sum ^= *b;
  }
  return sum != c.parity;
}

std::optional<std::size_t> first_violated(const PartialAssignment& beta, const XorSystem& s) {
  std::size_t i = 0;
  for (const auto& c : s.constraints()) {
    if (violates(beta, c)) return i;
    ++i;
  }
  return std::nullopt;
}

bool satisfies(const std::vector<std::uint8_t>& assignment, const XorSystem& s) {
  if (assignment.size() != s.num_vars()) throw InputError("assignment has the wrong length");
  for (const auto& c : s.constraints()) {
    unsigned sum = 0;
    for (Var x : c.support) sum ^= assignment[x] & 1u;
    if (sum != c.parity) return false;
  }
  return true;
}

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw InputError("line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

XorSystem parse_xor_system(std::istream& in) {
  std::optional<XorSystem> sys;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    std::vector<std::string> rest;
    for (std::string t; ls >> t;) rest.push_back(t);
    if (head == "vars") {
      if (sys) fail(line_no, "duplicate 'vars' line");
      try {
        sys.emplace(rest);
      } catch (const InputError& e) {
        fail(line_no, e.what());
      }
    } else if (head == "constraint") {
      if (!sys) fail(line_no, "'constraint' before 'vars'");
      if (rest.empty() || (rest[0] != "0" && rest[0] != "1"))
        fail(line_no, "expected 'constraint <0|1> <var> ...'");
      std::vector<Var> vars;
      for (std::size_t i = 1; i < rest.size(); ++i) {
        auto v = sys->find(rest[i]);
        if (!v) fail(line_no, "unknown variable '" + rest[i] + "'");
        vars.push_back(*v);
      }
      try {
        sys->add(std::move(vars), rest[0] == "1");
      } catch (const InputError& e) {
        fail(line_no, e.what());
      }
    } else {
      fail(line_no, "unknown directive '" + head + "'");
    }
  }
  if (!sys) throw InputError("missing 'vars' line");
  return *sys;
}

XorSystem parse_xor_system_string(const std::string& text) {
  std::istringstream in(text);
  return parse_xor_system(in);
}

void print_xor_system(std::ostream& out, const XorSystem& s) {
  out << "vars";
  for (const auto& n : s.names()) out << ' ' << n;
  out << '\n';
  for (const auto& c : s.constraints()) {
    out << "constraint " << int(c.parity);
    for (Var x : c.support) out << ' ' << s.name(x);
    out << '\n';
  }
}

std::string xor_system_to_string(const XorSystem& s) {
  std::ostringstream os;
  print_xor_system(os, s);
  return os.str();
}

}  // namespace wlr
