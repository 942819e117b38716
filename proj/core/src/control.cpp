#include "ticksup/control.hpp"

#include <deque>

#include "internal.hpp"
#include "ticksup/operations.hpp"

namespace ticksup {

ControlContext::ControlContext(Automaton plant_) : plant(std::move(plant_)) {
  if (plant.is_empty()) throw Error("control context requires a plant");
  if (reachable_states(plant).size() != plant.state_count() ||
      coreachable_states(plant).size() != plant.state_count())
    throw Error("control context requires a trim plant");
}

std::vector<EventId> eligible_events(const Automaton& a, StateId q) {
  std::vector<EventId> out;
  for (const Transition& t : a.transitions_from(q)) out.push_back(t.event);
  return out;
}

Verdict is_controllable(const Automaton& k, const ControlContext& ctx) {
  Verdict v;
  Automaton kt = trim(k);
  if (kt.is_empty()) return v;  // nothing to enforce
  const Automaton& g = ctx.plant;
  const EventTable& table = g.events();
  if (kt.events() != table)
    throw Error("supervisor and plant use different event tables");
  const EventId tick = table.tick();

  // Walk the synchronized pair graph of trim(k) and the plant; k is
  // deterministic, so each k-state pairs with exactly one plant state.
  std::vector<StateId> gcomp(kt.state_count(), kNoState);
  std::vector<detail::Discovery> how(kt.state_count());
  std::deque<StateId> queue{kt.initial()};
  gcomp[kt.initial()] = g.initial();

  while (!queue.empty()) {
    StateId x = queue.front();
    queue.pop_front();
    StateId q = gcomp[x];

    for (const Transition& t : kt.transitions_from(x)) {
      StateId qn = g.target(q, t.event);
      if (qn == kNoState)
        throw Error("behavior leaves the plant: '" +
                    format_string(table,
                                  [&] {
                                    auto p = detail::rebuild_path(
                                        how, kt.initial(), x);
                                    p.push_back(t.event);
                                    return p;
                                  }()) +
                    "' is not a plant string");
      if (gcomp[t.target] == kNoState) {
        gcomp[t.target] = qn;
        how[t.target] = detail::Discovery{x, t.event};
        queue.push_back(t.target);
      }
    }

    // Every eligible uncontrollable plant event must remain; a dropped
    // tick needs an eligible forcible event to preempt it.
    for (const Transition& t : g.transitions_from(q)) {
      if (table.controllable(t.event)) continue;
      if (kt.target(x, t.event) != kNoState) continue;
      v.holds = false;
      v.code = VerdictCode::uncontrollable_event;
      v.anchor = x;
      v.witness = detail::rebuild_path(how, kt.initial(), x);
      v.witness.push_back(t.event);
      v.detail = "uncontrollable event '" + table.name(t.event) +
                 "' is eligible in the plant but disabled at state '" +
                 kt.state(x).name + "'";
      return v;
    }
    if (g.target(q, tick) != kNoState && kt.target(x, tick) == kNoState) {
      bool preempted = false;
      for (const Transition& t : kt.transitions_from(x))
        if (table.forcible(t.event)) preempted = true;
      if (!preempted) {
        v.holds = false;
        v.code = VerdictCode::tick_not_preemptable;
        v.anchor = x;
        v.witness = detail::rebuild_path(how, kt.initial(), x);
        v.witness.push_back(tick);
        v.detail = "tick is disabled at state '" + kt.state(x).name +
                   "' with no eligible forcible event";
        return v;
      }
    }
  }
  return v;
}

namespace {

// Reachability restricted to alive states; coreachability likewise, seeded
// from alive marked states.
void prune_blocking(const Automaton& a, std::vector<bool>& alive,
                    std::size_t& removed) {
  const std::size_t n = a.state_count();
  std::vector<bool> reach(n, false);
  if (alive[a.initial()]) {
    std::deque<StateId> queue{a.initial()};
    reach[a.initial()] = true;
    while (!queue.empty()) {
      StateId q = queue.front();
      queue.pop_front();
      for (const Transition& t : a.transitions_from(q))
        if (alive[t.target] && !reach[t.target]) {
          reach[t.target] = true;
          queue.push_back(t.target);
        }
    }
  }
  std::vector<std::vector<StateId>> rev(n);
  std::vector<bool> co(n, false);
  std::deque<StateId> queue;
  for (StateId q = 0; q < n; ++q) {
    if (!alive[q]) continue;
    for (const Transition& t : a.transitions_from(q))
      if (alive[t.target]) rev[t.target].push_back(q);
    if (a.state(q).marked) {
      co[q] = true;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (StateId p : rev[q])
      if (!co[p]) {
        co[p] = true;
        queue.push_back(p);
      }
  }
  for (StateId q = 0; q < n; ++q)
    if (alive[q] && (!reach[q] || !co[q])) {
      alive[q] = false;
      ++removed;
    }
}

}  // namespace

Automaton sup_c(const Automaton& k, const ControlContext& ctx,
                SupCStats* stats) {
  SupCStats local;
  SupCStats& st = stats ? *stats : local;
  st = SupCStats{};

  Automaton kt = trim(k);
  if (kt.is_empty()) return kt;
  const Automaton& g = ctx.plant;
  const EventTable& table = g.events();
  if (kt.events() != table)
    throw Error("supervisor and plant use different event tables");
  const EventId tick = table.tick();

  detail::PairedAutomaton paired = detail::paired_product(kt, g);
  const Automaton& p = paired.product;
  if (p.is_empty()) return Automaton::empty(g.events_ptr());
  const std::size_t n = p.state_count();
  std::vector<bool> alive(n, true);

  // Alternate pruning until stable: drop states that block, then states
  // where the plant can force its way out of the remaining behavior.
  bool changed = true;
  while (changed) {
    changed = false;
    ++st.iterations;
    std::size_t before = st.states_removed;
    prune_blocking(p, alive, st.states_removed);
    if (!alive[p.initial()]) return Automaton::empty(g.events_ptr());

    for (StateId q = 0; q < n; ++q) {
      if (!alive[q]) continue;
      StateId gq = paired.right[q];
      bool bad = false;
      for (const Transition& t : g.transitions_from(gq)) {
        if (table.controllable(t.event)) continue;
        StateId succ = p.target(q, t.event);
        if (succ == kNoState || !alive[succ]) {
          bad = true;
          break;
        }
      }
      if (!bad && g.target(gq, tick) != kNoState) {
        StateId succ = p.target(q, tick);
        if (succ == kNoState || !alive[succ]) {
          bool preempted = false;
          for (const Transition& t : p.transitions_from(q))
            if (alive[t.target] && table.forcible(t.event)) preempted = true;
          if (!preempted) bad = true;
        }
      }
      if (bad) {
        alive[q] = false;
        ++st.states_removed;
      }
    }
    if (st.states_removed != before) changed = true;
    if (!alive[p.initial()]) return Automaton::empty(g.events_ptr());
  }

  std::vector<StateId> keep;
  for (StateId q = 0; q < n; ++q)
    if (alive[q]) keep.push_back(q);
  return canonical_renumber(detail::restrict_to(p, keep), "x");
}

}  // namespace ticksup
