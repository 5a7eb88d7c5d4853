#include "aspomcp/trace/ilasp.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace aspomcp::trace {

using logic::AtomSet;
using logic::Cdpi;
using logic::CdpiKind;
using logic::Symbol;

namespace {

std::vector<int> range(int lo, int hi, int step = 1) {
  std::vector<int> v;
  for (int x = lo; x <= hi; x += step) v.push_back(x);
  return v;
}

std::string join_atoms(const AtomSet& atoms, std::string_view sep) {
  std::string out;
  for (const auto& s : logic::sorted_strings(atoms)) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::string context_block(const AtomSet& atoms) {
  std::string out;
  for (const auto& s : logic::sorted_strings(atoms)) {
    if (!out.empty()) out += ' ';
    out += s + '.';
  }
  return out;
}

ModeBias rocksample_bias(const domains::Rocksample& d, Symbol action) {
  const int n = d.config().grid_size;
  const int m = static_cast<int>(d.num_rocks());
  ModeBias b;
  std::string name(action.name());
  b.heads.push_back(name == "sample" || name == "check" ? name + "(var(rock))" : name);
  b.heads.push_back("target(var(rock))");
  b.bodies = {"guess(var(rock), var(prob))", "dist(var(rock), var(dist))", "delta_x(var(rock), var(delta))",
              "delta_y(var(rock), var(delta))", "min_dist(var(rock))", "sampled(var(rock))",
              "num_sampled(var(perc))", "target(var(rock))"};
  b.comparison_types = {"prob", "dist", "delta", "perc"};
  b.constants["prob"] = range(0, 100, 10);
  b.constants["dist"] = range(0, 2 * (n - 1));
  b.constants["delta"] = range(-(n - 1), n - 1);
  std::vector<int> perc;
  for (int k = 0; k <= m; ++k) perc.push_back(100 * k / m);
  b.constants["perc"] = perc;
  b.weak_bodies = {"target(var(rock))", "dist(var(rock), var(dist))", "min_dist(var(rock))",
                   "guess(var(rock), var(prob))"};
  b.weights = {"var(dist)", "var(prob)"};
  b.max_levels = 2;
  return b;
}

ModeBias battery_bias(const domains::Battery& d, Symbol action) {
  ModeBias b;
  b.heads.push_back(std::string(action.name()));
  b.bodies = {"guess(var(level), var(prob))", "dist_next(var(dist))", "at_station"};
  b.comparison_types = {"level", "prob", "dist"};
  b.constants["level"] = range(0, d.config().max_level);
  b.constants["prob"] = range(0, 100, 10);
  b.constants["dist"] = range(1, std::max(d.config().max_gap, 1));
  return b;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Reads "{...}" starting at or after `pos`; returns the inside.
std::string_view brace_group(std::string_view text, std::size_t& pos) {
  auto open = text.find('{', pos);
  auto close = open == std::string_view::npos ? open : text.find('}', open);
  if (close == std::string_view::npos) throw std::invalid_argument("ILASP example: unbalanced braces");
  pos = close + 1;
  return text.substr(open + 1, close - open - 1);
}

}  // namespace

ModeBias default_mode_bias(const domains::AnyDomain& domain, Symbol action) {
  return std::visit(
      [&](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        if (std::ranges::find(d.action_vocabulary(), action) == d.action_vocabulary().end()) {
          throw std::invalid_argument("'" + std::string(action.name()) + "' is not an action of " +
                                      std::string(D::kName));
        }
        if constexpr (std::is_same_v<D, domains::Rocksample>) {
          return rocksample_bias(d, action);
        } else {
          return battery_bias(d, action);
        }
      },
      domain);
}

logic::Program default_background(const domains::AnyDomain& domain) {
  return std::visit(
      [](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        std::vector<logic::FactStatement> facts;
        if constexpr (std::is_same_v<D, domains::Rocksample>) {
          facts.push_back({Symbol("rock"), {{1, static_cast<int>(d.num_rocks())}}});
        } else {
          facts.push_back({Symbol("level"), {{0, d.config().max_level}}});
        }
        return logic::Program({}, {}, std::move(facts));
      },
      domain);
}

bool is_exported(const Cdpi& cdpi) {
  return cdpi.kind != CdpiKind::OrderingPartner || !cdpi.inclusions.empty();
}

std::string export_ilasp(std::span<const Cdpi> cdpis, const logic::Program& background, const ModeBias& bias) {
  Symbol action;
  for (const auto& c : cdpis) {
    if (action.empty()) action = c.action;
    if (c.action != action) {
      throw std::invalid_argument("export_ilasp: examples for both '" + std::string(action.name()) + "' and '" +
                                  std::string(c.action.name()) + "' in one task");
    }
  }

  std::ostringstream out;
  out << "% ILASP learning task\n";
  if (!action.empty()) out << "% task: " << action.name() << "\n";
  out << "\n";
  for (const auto& f : background.fact_statements()) out << logic::to_string(f) << "\n";
  if (!background.fact_statements().empty()) out << "\n";

  for (const auto& [type, values] : bias.constants) {
    for (int v : values) out << "#constant(" << type << ", " << v << ").\n";
  }
  for (const auto& h : bias.heads) out << "#modeh(" << h << ").\n";
  for (const auto& b : bias.bodies) out << "#modeb(1, " << b << ").\n";
  for (const auto& t : bias.comparison_types) {
    out << "#modeb(1, var(" << t << ") >= const(" << t << ")).\n";
    out << "#modeb(1, var(" << t << ") <= const(" << t << ")).\n";
  }
  if (!bias.weak_bodies.empty()) {
    for (const auto& o : bias.weak_bodies) out << "#modeo(1, " << o << ").\n";
    for (const auto& w : bias.weights) out << "#weight(" << w << ").\n";
    out << "#maxp(" << bias.max_levels << ").\n";
  }
  out << "#maxv(" << bias.max_vars << ").\n";
  out << "#max_body(" << bias.max_body << ").\n";

  std::vector<const Cdpi*> exported;
  for (const auto& c : cdpis) {
    if (is_exported(c)) exported.push_back(&c);
  }
  if (!exported.empty()) out << "\n";
  for (const Cdpi* c : exported) {
    out << "#pos(" << c->id << ", {" << join_atoms(c->inclusions, ", ") << "}, {" << join_atoms(c->exclusions, ", ")
        << "}, {" << context_block(c->context) << "}).\n";
  }
  bool any_ordering = false;
  for (const Cdpi* c : exported) {
    if (!c->ordering) continue;
    if (!any_ordering) out << "\n";
    any_ordering = true;
    out << "#brave_ordering(b" << c->id << ", " << c->ordering->first << ", " << c->ordering->second << ").\n";
  }
  return out.str();
}

std::vector<Cdpi> read_ilasp_examples(std::string_view text) {
  Symbol action;
  if (auto h = text.find("% task:"); h != std::string_view::npos) {
    auto eol = text.find('\n', h);
    action = Symbol(trim(text.substr(h + 7, eol == std::string_view::npos ? eol : eol - h - 7)));
  }
  std::vector<Cdpi> out;
  std::size_t pos = 0;
  while ((pos = text.find("#pos(", pos)) != std::string_view::npos) {
    pos += 5;
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) throw std::invalid_argument("ILASP example: missing id");
    Cdpi c;
    c.id = std::string(trim(text.substr(pos, comma - pos)));
    if (c.id.empty()) throw std::invalid_argument("ILASP example: empty id");
    switch (c.id.front()) {
      case 'p': c.kind = CdpiKind::Positive; break;
      case 'c': c.kind = CdpiKind::Counterexample; break;
      case 'o': c.kind = CdpiKind::OrderingPartner; break;
      default: throw std::invalid_argument("ILASP example: unknown id prefix in '" + c.id + "'");
    }
    c.action = action;
    pos = comma;
    c.inclusions = logic::parse_atom_set(brace_group(text, pos));
    c.exclusions = logic::parse_atom_set(brace_group(text, pos));
    c.context = logic::parse_atom_set(brace_group(text, pos));
    out.push_back(std::move(c));
  }
  pos = 0;
  while ((pos = text.find("#brave_ordering(", pos)) != std::string_view::npos) {
    pos += 16;
    auto close = text.find(')', pos);
    if (close == std::string_view::npos) throw std::invalid_argument("ILASP ordering: missing ')'");
    std::vector<std::string> fields;
    std::string_view body = text.substr(pos, close - pos);
    std::size_t start = 0;
    while (true) {
      auto c = body.find(',', start);
      fields.emplace_back(trim(body.substr(start, c == std::string_view::npos ? c : c - start)));
      if (c == std::string_view::npos) break;
      start = c + 1;
    }
    if (fields.size() < 3) throw std::invalid_argument("ILASP ordering: expected id, better, worse");
    auto it = std::ranges::find(out, fields[2], &Cdpi::id);
    if (it == out.end()) throw std::invalid_argument("ILASP ordering refers to unknown example " + fields[2]);
    it->ordering = std::make_pair(fields[1], fields[2]);
    pos = close;
  }
  return out;
}

}  // namespace aspomcp::trace
