#pragma once

#include <optional>
#include <string>
#include <utility>

#include "aspomcp/logic/atom.hpp"

namespace aspomcp::logic {

enum class CdpiKind { Positive, Counterexample, OrderingPartner };

std::string_view to_string(CdpiKind kind);

// Context-dependent partial interpretation: given `context`, every atom in
// `inclusions` must be derivable and none in `exclusions`.
struct Cdpi {
  std::string id;
  Symbol action;  // action predicate whose learning task this example feeds
  CdpiKind kind = CdpiKind::Positive;
  AtomSet inclusions;
  AtomSet exclusions;
  AtomSet context;
  // (preferred id, dispreferred id); set on ordering partners.
  std::optional<std::pair<std::string, std::string>> ordering;

  friend bool operator==(const Cdpi&, const Cdpi&) = default;
};

}  // namespace aspomcp::logic
