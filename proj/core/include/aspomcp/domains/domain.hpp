#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "aspomcp/config.hpp"
#include "aspomcp/domains/battery.hpp"
#include "aspomcp/domains/rocksample.hpp"

namespace aspomcp::domains {

using AnyDomain = std::variant<Rocksample, Battery>;

// Builds the domain named by the `domain` key. Layout not pinned by `cfg`
// (rock positions, stations, true initial state) is drawn from `instance_rng`.
AnyDomain make_domain(const KeyValueConfig& cfg, Rng& instance_rng);

std::string_view domain_name(const AnyDomain& domain);

// Fully pinned instance description: make_domain(instance_config(d)) == d.
KeyValueConfig instance_config(const AnyDomain& domain);

}  // namespace aspomcp::domains
