#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aspomcp::logic {

// Interned predicate name. Ids are process-wide and stable for the lifetime
// of the process; comparison is by id, so ordering is interning order.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  std::string_view name() const;
  std::uint32_t id() const { return id_; }
  bool empty() const { return id_ == 0; }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend auto operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

 private:
  std::uint32_t id_ = 0;
};

inline constexpr std::size_t kMaxArity = 6;

// Fixed-capacity integer argument list of a ground atom.
class Args {
 public:
  Args() = default;
  Args(std::initializer_list<int> values);
  explicit Args(std::span<const int> values);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int operator[](std::size_t i) const { return values_[i]; }
  int& operator[](std::size_t i) { return values_[i]; }
  void push_back(int v);
  std::span<const int> view() const { return {values_.data(), size_}; }

  friend bool operator==(const Args& a, const Args& b) {
    return std::ranges::equal(a.view(), b.view());
  }
  friend std::strong_ordering operator<=>(const Args& a, const Args& b);

 private:
  std::array<int, kMaxArity> values_{};
  std::uint8_t size_ = 0;
};

struct GroundAtom {
  Symbol predicate;
  Args args;

  GroundAtom() = default;
  GroundAtom(Symbol pred, Args a = {}) : predicate(pred), args(a) {}
  GroundAtom(std::string_view pred, std::initializer_list<int> a = {})
      : predicate(pred), args(a) {}

  std::size_t arity() const { return args.size(); }

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend std::strong_ordering operator<=>(const GroundAtom& a, const GroundAtom& b) {
    if (auto c = a.predicate <=> b.predicate; c != 0) return c;
    return a.args <=> b.args;
  }
};

std::string to_string(const GroundAtom& atom);
std::ostream& operator<<(std::ostream& os, const GroundAtom& atom);

// Parses a single ground atom such as `guess(1,50)` or `at_station`.
GroundAtom parse_ground_atom(std::string_view text);

// Sorted, duplicate-free set of ground atoms. Atoms of one predicate are
// contiguous, which is what the evaluator relies on for joins.
class AtomSet {
 public:
  using const_iterator = std::vector<GroundAtom>::const_iterator;

  AtomSet() = default;
  AtomSet(std::initializer_list<GroundAtom> atoms);
  explicit AtomSet(std::vector<GroundAtom> atoms);

  bool insert(const GroundAtom& atom);
  void insert_all(const AtomSet& other);
  bool erase(const GroundAtom& atom);
  void erase_predicate(Symbol predicate);
  bool contains(const GroundAtom& atom) const;
  std::span<const GroundAtom> with_predicate(Symbol predicate) const;

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const_iterator begin() const { return atoms_.begin(); }
  const_iterator end() const { return atoms_.end(); }
  const std::vector<GroundAtom>& atoms() const { return atoms_; }

  bool includes(const AtomSet& other) const;

  friend bool operator==(const AtomSet&, const AtomSet&) = default;

 private:
  std::vector<GroundAtom> atoms_;
};

AtomSet set_union(const AtomSet& a, const AtomSet& b);
AtomSet set_difference(const AtomSet& a, const AtomSet& b);

// Atoms rendered in name order, space separated: deterministic across runs.
std::string to_string(const AtomSet& atoms, std::string_view separator = " ");
std::vector<std::string> sorted_strings(const AtomSet& atoms);

// Accepts whitespace, commas between atoms and trailing periods:
// "guess(1,50). guess(2,70)." and "guess(1,50) guess(2,70)" both parse.
AtomSet parse_atom_set(std::string_view text);

}  // namespace aspomcp::logic
