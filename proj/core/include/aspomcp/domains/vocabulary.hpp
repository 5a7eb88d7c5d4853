#pragma once

#include "aspomcp/logic/atom.hpp"

namespace aspomcp::domains::vocab {

// Feature and action predicates shared by the domains and the shipped rules.
struct Symbols {
  logic::Symbol guess{"guess"};
  logic::Symbol dist{"dist"};
  logic::Symbol delta_x{"delta_x"};
  logic::Symbol delta_y{"delta_y"};
  logic::Symbol min_dist{"min_dist"};
  logic::Symbol sampled{"sampled"};
  logic::Symbol num_sampled{"num_sampled"};
  logic::Symbol target{"target"};
  logic::Symbol dist_next{"dist_next"};
  logic::Symbol at_station{"at_station"};

  logic::Symbol north{"north"};
  logic::Symbol south{"south"};
  logic::Symbol east{"east"};
  logic::Symbol west{"west"};
  logic::Symbol exit{"exit"};
  logic::Symbol sample{"sample"};
  logic::Symbol check{"check"};
  logic::Symbol advance{"advance"};
  logic::Symbol recharge{"recharge"};
};

inline const Symbols& symbols() {
  static const Symbols s;
  return s;
}

}  // namespace aspomcp::domains::vocab
