#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <utility>

#include "ticksup/automaton.hpp"

namespace ticksup::testsupport {

// Recognizer of the union of two deterministic languages over one event
// table: closed language L(a) ∪ L(b), marked language L_m(a) ∪ L_m(b).
// Walks both automata at once; a side that cannot follow an event falls
// away and the other carries on alone. Intended for sublanguages of a
// common plant, where both live sides always sit on the same plant state
// and therefore agree on the activity label.
inline Automaton language_union(const Automaton& a, const Automaton& b) {
  if (a.events() != b.events())
    throw Error("language union requires a common event table");
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;

  Automaton out(a.events_ptr());
  auto key = [](StateId x, StateId y) {
    return (static_cast<std::uint64_t>(x) << 32) | y;
  };
  std::unordered_map<std::uint64_t, StateId> ids;

  auto intern = [&](StateId x, StateId y) {
    auto it = ids.find(key(x, y));
    if (it != ids.end()) return it->second;
    State s;
    s.name = "u" + std::to_string(out.state_count());
    s.marked = (x != kNoState && a.state(x).marked) ||
               (y != kNoState && b.state(y).marked);
    if (x != kNoState && !a.state(x).activity.empty())
      s.activity = a.state(x).activity;
    else if (y != kNoState)
      s.activity = b.state(y).activity;
    StateId q = out.add_state(std::move(s));
    ids.emplace(key(x, y), q);
    return q;
  };

  std::deque<std::pair<StateId, StateId>> queue;
  out.set_initial(intern(a.initial(), b.initial()));
  queue.emplace_back(a.initial(), b.initial());
  const std::size_t n_events = a.events().size();
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    StateId src = ids.at(key(x, y));
    for (EventId e = 0; e < n_events; ++e) {
      StateId nx = x == kNoState ? kNoState : a.target(x, e);
      StateId ny = y == kNoState ? kNoState : b.target(y, e);
      if (nx == kNoState && ny == kNoState) continue;
      bool fresh = !ids.count(key(nx, ny));
      StateId dst = intern(nx, ny);
      out.add_transition(src, e, dst);
      if (fresh) queue.emplace_back(nx, ny);
    }
  }
  return out;
}

}  // namespace ticksup::testsupport
