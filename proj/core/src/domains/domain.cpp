#include "aspomcp/domains/domain.hpp"

namespace aspomcp::domains {

AnyDomain make_domain(const KeyValueConfig& cfg, Rng& instance_rng) {
  auto name = cfg.get_string("domain", "");
  if (name == Rocksample::kName) return Rocksample(RocksampleConfig::from_config(cfg, instance_rng));
  if (name == Battery::kName) return Battery(BatteryConfig::from_config(cfg, instance_rng));
  if (name.empty()) throw ConfigError("missing 'domain' key");
  throw ConfigError("unknown domain '" + name + "'");
}

std::string_view domain_name(const AnyDomain& domain) {
  return std::visit([](const auto& d) { return std::decay_t<decltype(d)>::kName; }, domain);
}

KeyValueConfig instance_config(const AnyDomain& domain) {
  KeyValueConfig cfg;
  cfg.set("domain", std::string(domain_name(domain)));
  std::visit([&](const auto& d) { d.config().write(cfg); }, domain);
  return cfg;
}

}  // namespace aspomcp::domains
