#include "aspomcp/trace/cdpi.hpp"

#include <algorithm>
#include <stdexcept>

namespace aspomcp::trace {

using logic::AtomSet;
using logic::Cdpi;
using logic::CdpiKind;
using logic::Symbol;

std::vector<Cdpi> make_cdpis(const TraceStep& step, std::span<const Symbol> vocabulary, const GroundingFn& groundings,
                             const std::string& tag) {
  Symbol executed = step.action.predicate;
  if (std::ranges::find(vocabulary, executed) == vocabulary.end()) {
    throw std::invalid_argument("make_cdpis: '" + logic::to_string(step.action) + "' is not an action atom");
  }
  AtomSet others = groundings(executed);
  others.erase(step.action);

  std::vector<Cdpi> out;
  Cdpi positive{"p" + tag, executed, CdpiKind::Positive, AtomSet{step.action}, others, step.features, std::nullopt};
  out.push_back(positive);
  for (Symbol pred : vocabulary) {
    if (pred == executed) continue;
    out.push_back(Cdpi{"c" + tag + "_" + std::string(pred.name()), pred, CdpiKind::Counterexample, AtomSet{},
                       groundings(pred), step.features, std::nullopt});
  }
  out.push_back(Cdpi{"o" + tag, executed, CdpiKind::OrderingPartner, others, AtomSet{}, step.features,
                     std::make_pair(positive.id, "o" + tag)});
  return out;
}

std::vector<Cdpi> make_cdpis(std::span<const Trace> traces, std::span<const Symbol> vocabulary,
                             const GroundingFn& groundings) {
  std::vector<Cdpi> out;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    for (const auto& step : traces[i].steps) {
      auto cdpis = make_cdpis(step, vocabulary, groundings, std::to_string(i) + "_" + std::to_string(step.t));
      std::ranges::move(cdpis, std::back_inserter(out));
    }
  }
  return out;
}

std::vector<Cdpi> coverage_examples(std::span<const Cdpi> cdpis) {
  std::vector<Cdpi> out;
  std::ranges::copy_if(cdpis, std::back_inserter(out), [](const Cdpi& c) { return c.kind != CdpiKind::OrderingPartner; });
  return out;
}

}  // namespace aspomcp::trace
