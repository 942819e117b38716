#include "ticksup/operations.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_map>

#include "internal.hpp"

namespace ticksup {

using detail::Discovery;
using detail::rebuild_path;
using detail::restrict_to;

std::vector<StateId> reachable_states(const Automaton& a) {
  std::vector<StateId> order;
  if (a.is_empty()) return order;
  if (a.initial() == kNoState) throw Error("automaton has no initial state");
  std::vector<bool> seen(a.state_count(), false);
  std::deque<StateId> queue{a.initial()};
  seen[a.initial()] = true;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    order.push_back(q);
    for (const Transition& t : a.transitions_from(q)) {
      if (!seen[t.target]) {
        seen[t.target] = true;
        queue.push_back(t.target);
      }
    }
  }
  return order;
}

std::vector<StateId> coreachable_states(const Automaton& a) {
  std::vector<std::vector<StateId>> rev(a.state_count());
  std::vector<bool> seen(a.state_count(), false);
  std::deque<StateId> queue;
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (const Transition& t : a.transitions_from(q))
      rev[t.target].push_back(q);
    if (a.state(q).marked) {
      seen[q] = true;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (StateId p : rev[q]) {
      if (!seen[p]) {
        seen[p] = true;
        queue.push_back(p);
      }
    }
  }
  std::vector<StateId> out;
  for (StateId q = 0; q < a.state_count(); ++q)
    if (seen[q]) out.push_back(q);
  return out;
}

Automaton reachable(const Automaton& a) {
  return restrict_to(a, reachable_states(a));
}

Automaton trim(const Automaton& a) {
  if (a.is_empty()) return a;
  std::vector<bool> co(a.state_count(), false);
  for (StateId q : coreachable_states(a)) co[q] = true;
  std::vector<StateId> keep;
  for (StateId q : reachable_states(a))
    if (co[q]) keep.push_back(q);
  // Stable: original id order, not discovery order.
  std::sort(keep.begin(), keep.end());
  if (std::find(keep.begin(), keep.end(), a.initial()) == keep.end())
    return Automaton::empty(a.events_ptr());
  return restrict_to(a, keep);
}

Verdict is_nonblocking(const Automaton& a) {
  Verdict v;
  if (a.is_empty()) return v;
  std::vector<bool> co(a.state_count(), false);
  for (StateId q : coreachable_states(a)) co[q] = true;

  std::vector<bool> seen(a.state_count(), false);
  std::vector<Discovery> how(a.state_count());
  std::deque<StateId> queue{a.initial()};
  seen[a.initial()] = true;
  // Breadth-first with events in table order: the first blocking state found
  // has a length-lexicographically minimal access string.
  auto blocked = [&](StateId q) {
    if (co[q]) return false;
    v.holds = false;
    v.code = VerdictCode::blocking;
    v.anchor = q;
    v.witness = rebuild_path(how, a.initial(), q);
    v.detail = "state '" + a.state(q).name + "' cannot reach a marked state";
    return true;
  };
  if (blocked(a.initial())) return v;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (const Transition& t : a.transitions_from(q)) {
      if (seen[t.target]) continue;
      seen[t.target] = true;
      how[t.target] = Discovery{q, t.event};
      if (blocked(t.target)) return v;
      queue.push_back(t.target);
    }
  }
  return v;
}

Automaton product(const Automaton& a, const Automaton& b) {
  return detail::paired_product(a, b).product;
}

namespace {

// Shared machinery for the language comparisons: breadth-first sweep of the
// synchronized pair graph where one side may have fallen off (kNoState),
// collecting every difference and keeping the length-lex minimal one.
struct LanguageDiff {
  bool found = false;
  std::vector<EventId> path;
  VerdictCode code = VerdictCode::ok;
  bool in_left = false;  // side exhibiting the extra string / mark

  void offer(std::vector<EventId> candidate, VerdictCode c, bool left) {
    if (found) {
      if (candidate.size() > path.size()) return;
      if (candidate.size() == path.size() && candidate >= path) return;
    }
    found = true;
    path = std::move(candidate);
    code = c;
    in_left = left;
  }
};

Verdict compare_languages(const Automaton& a_raw, const Automaton& b_raw,
                          bool equality) {
  Automaton a = trim(a_raw);
  Automaton b = trim(b_raw);

  LanguageDiff diff;
  auto key = [](StateId x, StateId y) {
    return (static_cast<std::uint64_t>(x) << 32) | y;
  };
  struct Node {
    StateId x, y;
    std::vector<EventId> path;
  };
  std::unordered_map<std::uint64_t, bool> seen;
  std::deque<Node> queue;
  StateId ix = a.is_empty() ? kNoState : a.initial();
  StateId iy = b.is_empty() ? kNoState : b.initial();
  if (ix != kNoState || iy != kNoState) {
    seen[key(ix, iy)] = true;
    queue.push_back(Node{ix, iy, {}});
  }

  while (!queue.empty()) {
    Node n = std::move(queue.front());
    queue.pop_front();
    if (diff.found && n.path.size() > diff.path.size()) break;

    bool mx = n.x != kNoState && a.state(n.x).marked;
    bool my = n.y != kNoState && b.state(n.y).marked;
    if (mx != my && (equality || (mx && !my)))
      diff.offer(n.path, VerdictCode::marking_difference, mx);

    // Walk the union of the outgoing event sets in table order.
    const std::vector<Transition> none;
    const auto& ta = n.x != kNoState ? a.transitions_from(n.x) : none;
    const auto& tb = n.y != kNoState ? b.transitions_from(n.y) : none;
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
      EventId ea = i < ta.size() ? ta[i].event : kNoState;
      EventId eb = j < tb.size() ? tb[j].event : kNoState;
      EventId ev = std::min(ea, eb);
      StateId nx = ea == ev ? ta[i].target : kNoState;
      StateId ny = eb == ev ? tb[j].target : kNoState;
      if (ea == ev) ++i;
      if (eb == ev) ++j;
      if (nx == kNoState && !equality) continue;  // subset: extras in b are fine
      if (nx == kNoState || ny == kNoState) {
        auto path = n.path;
        path.push_back(ev);
        diff.offer(std::move(path), VerdictCode::language_difference,
                   nx != kNoState);
        continue;
      }
      if (!seen[key(nx, ny)]) {
        seen[key(nx, ny)] = true;
        auto path = n.path;
        path.push_back(ev);
        queue.push_back(Node{nx, ny, std::move(path)});
      }
    }
  }

  Verdict v;
  if (diff.found) {
    v.holds = false;
    v.code = diff.code;
    v.witness = diff.path;
    const char* side = diff.in_left ? "left" : "right";
    const char* what = diff.code == VerdictCode::marking_difference
                           ? "marked by the "
                           : "in the closed language of the ";
    std::string shown = format_string(a.events(), diff.path);
    if (shown.empty()) shown = "(empty string)";
    v.detail = "'" + shown + "' is " + what + side + " operand only";
  }
  return v;
}

}  // namespace

Verdict language_equal(const Automaton& a, const Automaton& b) {
  if (a.events() != b.events())
    throw Error("language comparison requires a common event table");
  return compare_languages(a, b, true);
}

Verdict language_subset(const Automaton& a, const Automaton& b) {
  if (a.events() != b.events())
    throw Error("language comparison requires a common event table");
  return compare_languages(a, b, false);
}

std::size_t tick_count(const EventTable& table,
                       const std::vector<EventId>& s) {
  std::size_t n = 0;
  for (EventId e : s)
    if (table.is_tick(e)) ++n;
  return n;
}

StateId walk(const Automaton& a, const std::vector<EventId>& s) {
  if (a.is_empty()) return kNoState;
  StateId q = a.initial();
  for (EventId e : s) {
    q = a.target(q, e);
    if (q == kNoState) return kNoState;
  }
  return q;
}

bool in_closed_language(const Automaton& a, const std::vector<EventId>& s) {
  return walk(a, s) != kNoState;
}

bool in_marked_language(const Automaton& a, const std::vector<EventId>& s) {
  StateId q = walk(a, s);
  return q != kNoState && a.state(q).marked;
}

Automaton canonical_renumber(const Automaton& a, const std::string& prefix) {
  Automaton out(a.events_ptr());
  if (a.is_empty()) return out;
  std::vector<StateId> order = reachable_states(a);
  std::vector<StateId> remap(a.state_count(), kNoState);
  for (StateId q : order) {
    State s = a.state(q);
    s.name = prefix + std::to_string(out.state_count());
    remap[q] = out.add_state(std::move(s));
  }
  for (StateId q : order)
    for (const Transition& t : a.transitions_from(q))
      if (remap[t.target] != kNoState)
        out.add_transition(remap[q], t.event, remap[t.target]);
  out.set_initial(remap[a.initial()]);
  return out;
}

Automaton universe(std::shared_ptr<const EventTable> table) {
  Automaton a(std::move(table));
  StateId q = a.add_state(State{"u0", true, "", -1});
  a.set_initial(q);
  for (EventId e = 0; e < a.events().size(); ++e) a.add_transition(q, e, q);
  return a;
}

}  // namespace ticksup
