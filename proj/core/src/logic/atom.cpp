#include "aspomcp/logic/atom.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace aspomcp::logic {

namespace {

class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    names_.emplace_back(name);
    auto id = static_cast<std::uint32_t>(names_.size());
    ids_.emplace(names_.back(), id);
    return id;
  }

  std::string_view name(std::uint32_t id) {
    if (id == 0) return {};
    std::shared_lock lock(mutex_);
    return names_[id - 1];
  }

 private:
  std::shared_mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string_view, std::uint32_t> ids_;
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

Symbol::Symbol(std::string_view name) : id_(SymbolTable::instance().intern(name)) {}

std::string_view Symbol::name() const { return SymbolTable::instance().name(id_); }

Args::Args(std::initializer_list<int> values) {
  for (int v : values) push_back(v);
}

Args::Args(std::span<const int> values) {
  for (int v : values) push_back(v);
}

void Args::push_back(int v) {
  if (size_ == kMaxArity) throw std::length_error("atom arity exceeds supported maximum");
  values_[size_++] = v;
}

std::strong_ordering operator<=>(const Args& a, const Args& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  for (std::size_t i = 0; i < a.size_; ++i) {
    if (auto c = a.values_[i] <=> b.values_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const GroundAtom& atom) {
  std::string out(atom.predicate.name());
  if (!atom.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(atom.args[i]);
    }
    out += ')';
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const GroundAtom& atom) { return os << to_string(atom); }

GroundAtom parse_ground_atom(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("malformed ground atom: '" + std::string(text) + "'"); };
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t start = i;
  while (i < text.size() && is_ident_char(text[i])) ++i;
  if (i == start || !std::islower(static_cast<unsigned char>(text[start]))) fail();
  GroundAtom atom{Symbol(text.substr(start, i - start))};
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '(') {
    ++i;
    while (true) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      std::size_t num_start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == num_start || (i == num_start + 1 && !std::isdigit(static_cast<unsigned char>(text[num_start])))) fail();
      atom.args.push_back(std::stoi(std::string(text.substr(num_start, i - num_start))));
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      fail();
    }
  }
  while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '.')) ++i;
  if (i != text.size()) fail();
  return atom;
}

AtomSet::AtomSet(std::initializer_list<GroundAtom> atoms) : atoms_(atoms) {
  std::ranges::sort(atoms_);
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

AtomSet::AtomSet(std::vector<GroundAtom> atoms) : atoms_(std::move(atoms)) {
  std::ranges::sort(atoms_);
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool AtomSet::insert(const GroundAtom& atom) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
  if (it != atoms_.end() && *it == atom) return false;
  atoms_.insert(it, atom);
  return true;
}

void AtomSet::insert_all(const AtomSet& other) {
  if (other.empty()) return;
  std::vector<GroundAtom> merged;
  merged.reserve(atoms_.size() + other.size());
  std::set_union(atoms_.begin(), atoms_.end(), other.begin(), other.end(), std::back_inserter(merged));
  atoms_ = std::move(merged);
}

bool AtomSet::erase(const GroundAtom& atom) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end() || *it != atom) return false;
  atoms_.erase(it);
  return true;
}

void AtomSet::erase_predicate(Symbol predicate) {
  auto range = with_predicate(predicate);
  if (range.empty()) return;
  auto first = atoms_.begin() + (range.data() - atoms_.data());
  atoms_.erase(first, first + static_cast<std::ptrdiff_t>(range.size()));
}

bool AtomSet::contains(const GroundAtom& atom) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), atom);
}

std::span<const GroundAtom> AtomSet::with_predicate(Symbol predicate) const {
  auto lo = std::ranges::lower_bound(atoms_, predicate, {}, &GroundAtom::predicate);
  auto hi = std::ranges::upper_bound(lo, atoms_.end(), predicate, {}, &GroundAtom::predicate);
  return {lo, hi};
}

bool AtomSet::includes(const AtomSet& other) const {
  return std::includes(atoms_.begin(), atoms_.end(), other.begin(), other.end());
}

AtomSet set_union(const AtomSet& a, const AtomSet& b) {
  AtomSet out = a;
  out.insert_all(b);
  return out;
}

AtomSet set_difference(const AtomSet& a, const AtomSet& b) {
  std::vector<GroundAtom> diff;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  return AtomSet(std::move(diff));
}

std::vector<std::string> sorted_strings(const AtomSet& atoms) {
  std::vector<const GroundAtom*> order;
  order.reserve(atoms.size());
  for (const auto& a : atoms) order.push_back(&a);
  std::ranges::sort(order, [](const GroundAtom* x, const GroundAtom* y) {
    if (auto c = x->predicate.name() <=> y->predicate.name(); c != 0) return c < 0;
    return x->args < y->args;
  });
  std::vector<std::string> out;
  out.reserve(order.size());
  for (const auto* a : order) out.push_back(to_string(*a));
  return out;
}

std::string to_string(const AtomSet& atoms, std::string_view separator) {
  std::string out;
  bool first = true;
  for (const auto& s : sorted_strings(atoms)) {
    if (!first) out += separator;
    out += s;
    first = false;
  }
  return out;
}

AtomSet parse_atom_set(std::string_view text) {
  std::vector<GroundAtom> atoms;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size()) {
      char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '.' || c == '{' || c == '}') {
        ++i;
      } else if (c == '%') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else {
        break;
      }
    }
  };
  skip();
  while (i < text.size()) {
    std::size_t start = i;
    while (i < text.size() && is_ident_char(text[i])) ++i;
    if (i < text.size() && text[i] == '(') {
      auto close = text.find(')', i);
      if (close == std::string_view::npos) {
        throw std::invalid_argument("unterminated atom in: '" + std::string(text.substr(start)) + "'");
      }
      i = close + 1;
    }
    if (i == start) throw std::invalid_argument("unexpected character in atom list: '" + std::string(1, text[i]) + "'");
    atoms.push_back(parse_ground_atom(text.substr(start, i - start)));
    skip();
  }
  return AtomSet(std::move(atoms));
}

}  // namespace aspomcp::logic
