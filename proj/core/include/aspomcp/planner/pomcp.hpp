#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "aspomcp/config.hpp"
#include "aspomcp/logic/evaluator.hpp"
#include "aspomcp/pomdp.hpp"

namespace aspomcp::planner {

struct PlannerConfig {
  int num_simulations = 4096;
  int num_particles = 4096;
  std::optional<double> exploration;  // defaults to the domain's reward span
  int prior_visits = 10;
  int max_depth = 100;  // simulation depth below the root, tree plus rollout
  bool rules_enabled = false;
  int step_cap = 200;
  bool reuse_tree = true;

  void validate() const;

  // Keys: simulations, particles, exploration, prior_visits, max_depth,
  // rules (true/false), step_cap, reuse_tree. `particles` falls back to
  // `simulations`.
  static PlannerConfig from_config(const KeyValueConfig& cfg);
  void write(KeyValueConfig& cfg) const;
};

// V + c·sqrt(ln N(h) / N(ha)).
double uct_value(double value, long node_visits, long edge_visits, double c);

// What the planner needs from a domain beyond the generative model.
template <typename D>
concept GroundedDomain = Simulator<D> && requires(const D& d, const typename D::State& s, Action a,
                                                  const logic::GroundAtom& atom,
                                                  std::span<const typename D::State> particles) {
  { d.belief_features(particles, s) } -> std::same_as<logic::AtomSet>;
  { d.observable_features(s) } -> std::same_as<logic::AtomSet>;
  { d.is_belief_atom(atom) } -> std::convertible_to<bool>;
  { d.action_atom(s, a) } -> std::same_as<logic::GroundAtom>;
  { d.action_from_atom(atom) } -> std::same_as<Action>;
  { d.action_vocabulary() } -> std::convertible_to<std::span<const logic::Symbol>>;
  { d.reward_span() } -> std::convertible_to<double>;
};

struct Edge {
  Action action = 0;
  long visits = 0;
  double value = 0.0;
  bool bias_applied = false;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct ChildLink {
  std::uint32_t edge = 0;
  Observation observation = kNoObservation;
  NodeId node = kNoNode;
};

template <typename State>
struct SearchNode {
  long visits = 0;
  std::vector<Edge> edges;
  std::vector<ChildLink> children;
  State observable{};  // only the observable part is meaningful
  logic::AtomSet features;

  Edge* find_edge(Action a) {
    for (auto& e : edges) {
      if (e.action == a) return &e;
    }
    return nullptr;
  }
  const Edge* find_edge(Action a) const { return const_cast<SearchNode*>(this)->find_edge(a); }
};

// Rule prior: every suggested edge not yet biased gets value c and n_prior
// pseudo-visits, which also count towards N(h). An edge that already has
// real visits (a reused subtree) takes the prior as extra samples of value c.
template <typename State>
void apply_bias(SearchNode<State>& node, std::span<const Action> suggested, double c, int n_prior) {
  for (Action a : suggested) {
    Edge* e = node.find_edge(a);
    if (e == nullptr || e->bias_applied) continue;
    e->bias_applied = true;
    if (e->visits == 0) {
      e->value = c;
    } else {
      e->value = (e->value * static_cast<double>(e->visits) + c * n_prior) / static_cast<double>(e->visits + n_prior);
    }
    e->visits += n_prior;
    node.visits += n_prior;
  }
}

// Full grounding at the root: belief-derived atoms from the particles plus
// the observable features.
template <GroundedDomain Sim>
logic::AtomSet ground_root_features(const Sim& sim, const ParticleBelief<typename Sim::State>& belief,
                                    const typename Sim::State& observable) {
  return sim.belief_features(belief.particles(), observable);
}

// Grounding below the root: observable features are recomputed, belief
// atoms are inherited from the root grounding.
template <GroundedDomain Sim>
logic::AtomSet ground_inner_features(const Sim& sim, const typename Sim::State& observable,
                                     const logic::AtomSet& root_features) {
  logic::AtomSet features = sim.observable_features(observable);
  std::vector<logic::GroundAtom> inherited;
  for (const auto& atom : root_features) {
    if (sim.is_belief_atom(atom)) inherited.push_back(atom);
  }
  features.insert_all(logic::AtomSet(std::move(inherited)));
  return features;
}

// Legal actions suggested by `rules` on `features`, deduplicated, in
// ascending action order.
template <GroundedDomain Sim>
std::vector<Action> suggested_legal_actions(const Sim& sim, const logic::Program& rules,
                                            const logic::AtomSet& features, std::span<const Action> legal) {
  std::vector<Action> out;
  for (const auto& atom : logic::suggested_actions(rules, features, sim.action_vocabulary())) {
    Action a = sim.action_from_atom(atom);
    if (std::ranges::find(legal, a) != legal.end() && std::ranges::find(out, a) == out.end()) out.push_back(a);
  }
  std::ranges::sort(out);
  return out;
}

template <GroundedDomain Sim>
class Pomcp {
 public:
  using State = typename Sim::State;
  using Node = SearchNode<State>;
  using BackupObserver = std::function<void(NodeId, std::size_t edge, double ret)>;

  // `rules` may be null; it is consulted only when config.rules_enabled.
  Pomcp(const Sim& sim, PlannerConfig config, const logic::Program* rules, Rng& search_rng, Rng& rollout_rng)
      : sim_(sim), config_(std::move(config)), rules_(rules), search_rng_(search_rng), rollout_rng_(rollout_rng) {
    config_.validate();
    if (config_.rules_enabled && rules_ == nullptr) throw std::invalid_argument("rules enabled without a program");
    c_ = config_.exploration.value_or(sim_.reward_span());
  }

  const PlannerConfig& config() const { return config_; }
  double exploration() const { return c_; }

  // Runs config.num_simulations simulations from `belief` and returns the
  // root action with the highest value. `observable` must be the real state;
  // only its observable part is read.
  Action search(const ParticleBelief<State>& belief, const State& observable) {
    if (belief.empty()) throw std::invalid_argument("search from an empty belief");
    if (root_ == kNoNode) {
      nodes_.clear();
      root_ = new_node(observable);
    }
    Node& root = nodes_[root_];
    root.observable = observable;
    if (root.edges.empty()) throw std::runtime_error("no legal actions at the root");
    root.features = ground_root_features(sim_, belief, observable);
    if (config_.rules_enabled) bias(root_);

    for (int i = 0; i < config_.num_simulations; ++i) {
      State s = belief.sample(search_rng_);
      simulate(s, root_, 0);
    }
    return best_action();
  }

  // Promotes the child reached by (action, observation) to root, dropping
  // the rest of the tree; without such a child the next search starts over.
  void advance(Action action, Observation observation) {
    if (root_ == kNoNode) return;
    NodeId next = config_.reuse_tree ? find_child(root_, action, observation) : kNoNode;
    if (next == kNoNode) {
      root_ = kNoNode;
      nodes_.clear();
      return;
    }
    compact(next);
  }

  void reset() {
    root_ = kNoNode;
    nodes_.clear();
  }

  bool has_root() const { return root_ != kNoNode; }
  const Node& root() const { return nodes_.at(root_); }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  NodeId root_id() const { return root_; }
  std::size_t tree_size() const { return nodes_.size(); }
  const logic::AtomSet& root_features() const { return root().features; }
  NodeId find_child(NodeId parent, Action action, Observation observation) const {
    const Node& n = nodes_[parent];
    for (const auto& link : n.children) {
      if (n.edges[link.edge].action == action && link.observation == observation) return link.node;
    }
    return kNoNode;
  }

  void set_backup_observer(BackupObserver observer) { observer_ = std::move(observer); }

 private:
  NodeId new_node(const State& s) {
    Node n;
    n.observable = s;
    sim_.legal_actions(s, legal_);
    n.edges.reserve(legal_.size());
    for (Action a : legal_) n.edges.push_back(Edge{a});
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  NodeId expand(const State& s) {
    NodeId id = new_node(s);
    if (config_.rules_enabled) {
      nodes_[id].features = ground_inner_features(sim_, s, nodes_[root_].features);
      bias(id);
    }
    return id;
  }

  void bias(NodeId id) {
    Node& n = nodes_[id];
    actions_.clear();
    for (const auto& e : n.edges) actions_.push_back(e.action);
    auto suggested = suggested_legal_actions(sim_, *rules_, n.features, actions_);
    apply_bias(n, std::span<const Action>(suggested), c_, config_.prior_visits);
  }

  std::size_t select_edge(const Node& n) {
    candidates_.clear();
    for (std::size_t i = 0; i < n.edges.size(); ++i) {
      if (n.edges[i].visits == 0) candidates_.push_back(i);
    }
    if (!candidates_.empty()) return candidates_[random_index(search_rng_, candidates_.size())];
    double best = -std::numeric_limits<double>::infinity();
    long nh = std::max(n.visits, 1L);
    for (std::size_t i = 0; i < n.edges.size(); ++i) {
      double u = uct_value(n.edges[i].value, nh, n.edges[i].visits, c_);
      if (u > best) {
        best = u;
        candidates_.clear();
      }
      if (u == best) candidates_.push_back(i);
    }
    return candidates_[random_index(search_rng_, candidates_.size())];
  }

  double simulate(const State& s, NodeId id, int depth) {
    if (depth >= config_.max_depth) return 0.0;
    std::size_t ei = select_edge(nodes_[id]);
    Action a = nodes_[id].edges[ei].action;
    auto step = sim_.step(s, a, search_rng_);
    double ret = step.reward;
    if (!step.terminal) {
      NodeId child = kNoNode;
      for (const auto& link : nodes_[id].children) {
        if (link.edge == ei && link.observation == step.observation) {
          child = link.node;
          break;
        }
      }
      if (child == kNoNode) {
        child = expand(step.next);
        nodes_[id].children.push_back(ChildLink{static_cast<std::uint32_t>(ei), step.observation, child});
        ret += sim_.gamma() * rollout(step.next, depth + 1);
      } else {
        ret += sim_.gamma() * simulate(step.next, child, depth + 1);
      }
    }
    Node& n = nodes_[id];
    Edge& e = n.edges[ei];
    ++n.visits;
    ++e.visits;
    e.value += (ret - e.value) / static_cast<double>(e.visits);
    if (observer_) observer_(id, ei, ret);
    return ret;
  }

  double rollout(State s, int depth) {
    double ret = 0.0;
    double discount = 1.0;
    for (; depth < config_.max_depth; ++depth) {
      sim_.legal_actions(s, rollout_legal_);
      if (rollout_legal_.empty()) break;
      Action a = rollout_legal_[random_index(rollout_rng_, rollout_legal_.size())];
      auto step = sim_.step(s, a, rollout_rng_);
      ret += discount * step.reward;
      if (step.terminal) break;
      discount *= sim_.gamma();
      s = std::move(step.next);
    }
    return ret;
  }

  Action best_action() {
    const Node& root = nodes_[root_];
    double best = -std::numeric_limits<double>::infinity();
    candidates_.clear();
    for (std::size_t i = 0; i < root.edges.size(); ++i) {
      const Edge& e = root.edges[i];
      if (e.visits == 0) continue;
      if (e.value > best) {
        best = e.value;
        candidates_.clear();
      }
      if (e.value == best) candidates_.push_back(i);
    }
    if (candidates_.empty()) {
      for (std::size_t i = 0; i < root.edges.size(); ++i) candidates_.push_back(i);
    }
    return root.edges[candidates_[random_index(search_rng_, candidates_.size())]].action;
  }

  // Copies the subtree under `new_root` into a fresh arena.
  void compact(NodeId new_root) {
    std::vector<Node> next;
    next.reserve(nodes_.size());  // keeps next[head] valid while appending
    next.push_back(std::move(nodes_[new_root]));
    for (std::size_t head = 0; head < next.size(); ++head) {
      for (auto& link : next[head].children) {
        NodeId old = link.node;
        link.node = static_cast<NodeId>(next.size());
        next.push_back(std::move(nodes_[old]));
      }
    }
    nodes_ = std::move(next);
    root_ = 0;
  }

  const Sim& sim_;
  PlannerConfig config_;
  const logic::Program* rules_;
  Rng& search_rng_;
  Rng& rollout_rng_;
  double c_ = 1.0;
  std::vector<Node> nodes_;
  NodeId root_ = kNoNode;
  BackupObserver observer_;
  std::vector<Action> legal_;
  std::vector<Action> rollout_legal_;
  std::vector<Action> actions_;
  std::vector<std::size_t> candidates_;
};

}  // namespace aspomcp::planner
