#include "internal.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace ticksup::detail {

Automaton restrict_to(const Automaton& a, const std::vector<StateId>& keep,
                      std::vector<StateId>* remap_out) {
  std::vector<StateId> remap(a.state_count(), kNoState);
  Automaton out(a.events_ptr());
  for (StateId q : keep) remap[q] = out.add_state(a.state(q));
  for (StateId q : keep)
    for (const Transition& t : a.transitions_from(q))
      if (remap[t.target] != kNoState)
        out.add_transition(remap[q], t.event, remap[t.target]);
  if (!a.is_empty() && a.initial() != kNoState &&
      remap[a.initial()] != kNoState)
    out.set_initial(remap[a.initial()]);
  else if (!keep.empty())
    throw Error("restriction dropped the initial state");
  if (remap_out) *remap_out = std::move(remap);
  return out;
}

PairedAutomaton paired_product(const Automaton& a, const Automaton& b) {
  if (a.events() != b.events())
    throw Error("product requires a common event table");
  PairedAutomaton res{Automaton(a.events_ptr())};
  Automaton& out = res.product;
  if (a.is_empty() || b.is_empty()) return res;

  auto key = [](StateId x, StateId y) {
    return (static_cast<std::uint64_t>(x) << 32) | y;
  };
  std::unordered_map<std::uint64_t, StateId> pair_id;

  auto make_pair_state = [&](StateId x, StateId y) {
    const State& sx = a.state(x);
    const State& sy = b.state(y);
    State s;
    s.name = sx.name + "~" + sy.name;
    if (out.find_state(s.name) != kNoState)
      s.name += "#" + std::to_string(out.state_count());
    s.marked = sx.marked && sy.marked;
    s.activity = sy.activity.empty() ? sx.activity : sy.activity;
    s.counter = sy.counter >= 0 ? sy.counter : sx.counter;
    StateId q = out.add_state(std::move(s));
    pair_id.emplace(key(x, y), q);
    res.left.push_back(x);
    res.right.push_back(y);
    return q;
  };

  std::deque<std::pair<StateId, StateId>> queue;
  out.set_initial(make_pair_state(a.initial(), b.initial()));
  queue.emplace_back(a.initial(), b.initial());
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    StateId src = pair_id.at(key(x, y));
    for (const Transition& t : a.transitions_from(x)) {
      StateId ty = b.target(y, t.event);
      if (ty == kNoState) continue;
      auto it = pair_id.find(key(t.target, ty));
      StateId dst;
      if (it == pair_id.end()) {
        dst = make_pair_state(t.target, ty);
        queue.emplace_back(t.target, ty);
      } else {
        dst = it->second;
      }
      out.add_transition(src, t.event, dst);
    }
  }
  return res;
}

std::vector<EventId> rebuild_path(const std::vector<Discovery>& how,
                                  StateId initial, StateId q) {
  std::vector<EventId> path;
  while (q != initial) {
    path.push_back(how[q].event);
    q = how[q].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<EventId> access_path(const Automaton& a, StateId goal) {
  std::vector<Discovery> how(a.state_count());
  std::vector<bool> seen(a.state_count(), false);
  std::deque<StateId> queue{a.initial()};
  seen[a.initial()] = true;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    if (q == goal) return rebuild_path(how, a.initial(), goal);
    for (const Transition& t : a.transitions_from(q)) {
      if (seen[t.target]) continue;
      seen[t.target] = true;
      how[t.target] = Discovery{q, t.event};
      queue.push_back(t.target);
    }
  }
  throw Error("state '" + a.state(goal).name + "' is not reachable");
}

std::vector<StateId> plant_components(const Automaton& k, const Automaton& g) {
  if (k.events() != g.events())
    throw Error("behavior and plant use different event tables");
  if (g.is_empty()) throw Error("the plant is empty but the behavior is not");
  std::vector<StateId> comp(k.state_count(), kNoState);
  std::vector<Discovery> how(k.state_count());
  std::deque<StateId> queue{k.initial()};
  comp[k.initial()] = g.initial();
  while (!queue.empty()) {
    StateId x = queue.front();
    queue.pop_front();
    StateId q = comp[x];
    if (k.state(x).marked && !g.state(q).marked)
      throw Error("'" +
                  format_string(k.events(), rebuild_path(how, k.initial(), x)) +
                  "' is marked but the plant does not mark it");
    for (const Transition& t : k.transitions_from(x)) {
      StateId qn = g.target(q, t.event);
      if (qn == kNoState) {
        auto path = rebuild_path(how, k.initial(), x);
        path.push_back(t.event);
        throw Error("'" + format_string(k.events(), path) +
                    "' is not a plant string");
      }
      if (comp[t.target] == kNoState) {
        comp[t.target] = qn;
        how[t.target] = Discovery{x, t.event};
        queue.push_back(t.target);
      }
    }
  }
  return comp;
}

}  // namespace ticksup::detail
