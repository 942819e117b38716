#include "ticksup/bounded_time.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

#include "internal.hpp"
#include "ticksup/operations.hpp"
#include "ticksup/ttg.hpp"

namespace ticksup {

const CoverClass& MarkerCover::require(const std::string& name) const {
  for (const CoverClass& c : classes)
    if (c.name == name) return c;
  throw Error("no cover class named '" + name + "'");
}

std::vector<StateId> resolve_class(const Automaton& a, const CoverClass& cls) {
  if (cls.budget == 0)
    throw Error("class '" + cls.name + "': budget must be at least 1");
  if (cls.activities.empty())
    throw Error("class '" + cls.name + "' selects no activities");
  std::vector<StateId> out;
  for (StateId q = 0; q < a.state_count(); ++q) {
    const State& s = a.state(q);
    if (!s.marked) continue;
    if (std::find(cls.activities.begin(), cls.activities.end(), s.activity) !=
        cls.activities.end())
      out.push_back(q);
  }
  if (out.empty())
    throw Error("class '" + cls.name + "' resolves to no marked states");
  return out;
}

void check_cover(const Automaton& a, const MarkerCover& cover) {
  if (cover.classes.empty()) throw Error("cover has no classes");
  for (std::size_t i = 0; i < cover.classes.size(); ++i)
    for (std::size_t j = i + 1; j < cover.classes.size(); ++j)
      if (cover.classes[i].name == cover.classes[j].name)
        throw Error("duplicate cover class '" + cover.classes[i].name + "'");
  std::vector<bool> covered(a.state_count(), false);
  for (const CoverClass& cls : cover.classes)
    for (StateId q : resolve_class(a, cls)) covered[q] = true;
  for (StateId q = 0; q < a.state_count(); ++q)
    if (a.state(q).marked && !covered[q])
      throw Error("marked state '" + a.state(q).name + "' (activity '" +
                  a.state(q).activity + "') belongs to no cover class");
}

Automaton restrict_marking(const Automaton& k, const Automaton& g,
                           const CoverClass& cls) {
  auto marker = resolve_class(g, cls);
  Automaton kt = trim(k);
  if (kt.is_empty()) return kt;
  auto comp = detail::plant_components(kt, g);
  std::vector<bool> inclass(g.state_count(), false);
  for (StateId q : marker) inclass[q] = true;
  for (StateId x = 0; x < kt.state_count(); ++x) {
    kt.set_marked(x, kt.state(x).marked && inclass[comp[x]]);
    kt.set_activity(x, g.state(comp[x]).activity);
  }
  return kt;
}

namespace {

// Renumbered supervisors carry opaque state names; surface the activity
// annotation next to the name so a witness still points at a place in the
// underlying model.
std::string state_label(const Automaton& a, StateId q) {
  const State& s = a.state(q);
  std::string label = "state '" + s.name + "'";
  if (!s.activity.empty() && s.activity != s.name)
    label += " (activity '" + s.activity + "')";
  return label;
}

}  // namespace

Verdict verify_bounded_time_nonblocking(const Automaton& a,
                                        const MarkerCover& cover) {
  Verdict ok;
  if (cover.classes.empty()) throw Error("cover has no classes");
  if (a.is_empty()) return ok;
  Verdict alf = check_activity_loop_free(a);
  if (!alf.holds)
    throw Error("automaton is not activity-loop-free: " + alf.detail);

  const EventId tick = a.events().tick();
  const std::size_t n = a.state_count();
  std::vector<StateId> order = reachable_states(a);
  std::vector<bool> reach(n, false);
  for (StateId q : order) reach[q] = true;

  for (const CoverClass& cls : cover.classes) {
    std::vector<bool> inclass(n, false);
    for (StateId q : resolve_class(a, cls)) inclass[q] = true;
    const std::string where = "class '" + cls.name + "': ";

    // The avoid graph: all transitions except those leaving a marker state,
    // so every surviving path ends on first marker entry.

    // Some reachable state cut off from the markers?
    {
      std::vector<std::vector<StateId>> rev(n);
      for (StateId q = 0; q < n; ++q)
        if (reach[q] && !inclass[q])
          for (const Transition& t : a.transitions_from(q))
            rev[t.target].push_back(q);
      std::vector<bool> canreach(n, false);
      std::deque<StateId> queue;
      for (StateId q = 0; q < n; ++q)
        if (reach[q] && inclass[q]) {
          canreach[q] = true;
          queue.push_back(q);
        }
      while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (StateId p : rev[q])
          if (!canreach[p]) {
            canreach[p] = true;
            queue.push_back(p);
          }
      }
      for (StateId q : order) {
        if (canreach[q]) continue;
        Verdict v;
        v.holds = false;
        v.code = VerdictCode::class_unreachable;
        v.anchor = q;
        v.witness = detail::access_path(a, q);
        v.detail = where + state_label(a, q) + " cannot reach the marker set";
        return v;
      }
    }

    // A cycle avoiding the markers? Its ticks (at least one, by activity
    // loop freedom) can be pumped past any budget. A state that can idle in
    // place is the clearest such pump, so report one of those ahead of
    // longer cycles; among several, the one farthest down the state order
    // names the remotest dwell instead of a near-initial variant of the
    // same defect.
    for (StateId q = n; q-- > 0;) {
      if (!reach[q] || inclass[q]) continue;
      for (const Transition& t : a.transitions_from(q)) {
        if (t.target != q) continue;
        Verdict v;
        v.holds = false;
        v.code = VerdictCode::class_cycle;
        v.anchor = q;
        v.witness = detail::access_path(a, q);
        std::size_t prefix = v.witness.size();
        v.witness.push_back(t.event);
        v.detail = where + state_label(a, q) +
                   " lies on a cycle that avoids the marker set " +
                   "(events " + std::to_string(prefix) +
                   "+ of the witness repeat forever)";
        return v;
      }
    }
    {
      std::vector<int> color(n, 0);
      struct Frame {
        StateId q;
        std::size_t edge = 0;
      };
      for (StateId root = 0; root < n; ++root) {
        if (color[root] != 0 || !reach[root] || inclass[root]) continue;
        std::vector<Frame> stack{Frame{root}};
        std::vector<EventId> events;
        color[root] = 1;
        while (!stack.empty()) {
          Frame& f = stack.back();
          const auto& out = a.transitions_from(f.q);
          bool descended = false;
          while (f.edge < out.size()) {
            const Transition& t = out[f.edge++];
            if (inclass[t.target]) continue;
            if (color[t.target] == 1) {
              std::size_t j = 0;
              while (stack[j].q != t.target) ++j;
              Verdict v;
              v.holds = false;
              v.code = VerdictCode::class_cycle;
              v.anchor = t.target;
              v.witness = detail::access_path(a, t.target);
              std::size_t prefix = v.witness.size();
              v.witness.insert(v.witness.end(), events.begin() + j,
                               events.end());
              v.witness.push_back(t.event);
              v.detail = where + state_label(a, t.target) +
                         " lies on a cycle that avoids the marker set " +
                         "(events " + std::to_string(prefix) +
                         "+ of the witness repeat forever)";
              return v;
            }
            if (color[t.target] == 0) {
              color[t.target] = 1;
              events.push_back(t.event);
              stack.push_back(Frame{t.target});
              descended = true;
              break;
            }
          }
          if (!descended) {
            color[f.q] = 2;
            stack.pop_back();
            if (!events.empty()) events.pop_back();
          }
        }
      }
    }

    // The avoid graph is now a directed acyclic graph on the reachable
    // non-marker states: take the longest tick-weighted completion.
    {
      std::vector<unsigned> weight(n, 0);
      std::vector<std::size_t> indeg(n, 0);
      for (StateId q = 0; q < n; ++q)
        if (reach[q] && !inclass[q])
          for (const Transition& t : a.transitions_from(q))
            if (!inclass[t.target]) ++indeg[t.target];
      std::deque<StateId> queue;
      for (StateId q = 0; q < n; ++q)
        if (reach[q] && !inclass[q] && indeg[q] == 0) queue.push_back(q);
      std::vector<StateId> topo;
      while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        topo.push_back(q);
        for (const Transition& t : a.transitions_from(q))
          if (!inclass[t.target] && --indeg[t.target] == 0)
            queue.push_back(t.target);
      }
      for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        StateId q = *it;
        unsigned best = 0;
        for (const Transition& t : a.transitions_from(q)) {
          unsigned w = (t.event == tick ? 1u : 0u) + weight[t.target];
          best = std::max(best, w);
        }
        weight[q] = best;
      }
      StateId worst = kNoState;
      for (StateId q = 0; q < n; ++q)
        if (reach[q] && !inclass[q] &&
            (worst == kNoState || weight[q] > weight[worst]))
          worst = q;
      if (worst != kNoState && weight[worst] > cls.budget) {
        Verdict v;
        v.holds = false;
        v.code = VerdictCode::budget_exceeded;
        v.anchor = worst;
        v.witness = detail::access_path(a, worst);
        StateId cur = worst;
        while (!inclass[cur]) {
          for (const Transition& t : a.transitions_from(cur)) {
            unsigned w = (t.event == tick ? 1u : 0u) +
                         (inclass[t.target] ? 0u : weight[t.target]);
            if (w == weight[cur]) {
              v.witness.push_back(t.event);
              cur = t.target;
              break;
            }
          }
        }
        v.detail = where + "completing from " + state_label(a, worst) +
                   " can take " + std::to_string(weight[worst]) +
                   " ticks, above the budget of " +
                   std::to_string(cls.budget);
        return v;
      }
    }
  }
  return ok;
}

Automaton sup_btc(const Automaton& g, const Automaton& k,
                  const CoverClass& cls, WorklistOrder order,
                  BtcStats* stats) {
  BtcStats local;
  BtcStats& st = stats ? *stats : local;
  st = BtcStats{};
  st.class_name = cls.name;
  st.budget = cls.budget;

  Automaton kt = trim(k);
  if (kt.is_empty()) {
    st.emptied = true;
    return kt;
  }
  // Same shape as kt with marking cut down to the class completions; kt
  // keeps the original marking for the final result.
  Automaton ki = restrict_marking(kt, g, cls);
  assert(ki.state_count() == kt.state_count());

  const unsigned budget = cls.budget;
  const EventId tick = g.events().tick();
  const std::size_t n = ki.state_count();
  st.base_states = n;

  Automaton counter(g.events_ptr());
  std::vector<StateId> node_state(n * (budget + 1), kNoState);
  std::vector<StateId> base_of;
  std::deque<std::pair<StateId, unsigned>> work;

  auto intern = [&](StateId x, unsigned d) -> StateId {
    StateId& slot = node_state[x * (budget + 1) + d];
    if (slot != kNoState) return slot;
    State s;
    s.name = ki.state(x).name + "#" + std::to_string(d);
    s.marked = ki.state(x).marked;
    s.activity = ki.state(x).activity;
    s.counter = static_cast<int>(d);
    slot = counter.add_state(std::move(s));
    base_of.push_back(x);
    work.emplace_back(x, d);
    ++st.visited_counter_states;
    return slot;
  };

  counter.set_initial(intern(ki.initial(), 0));
  while (!work.empty()) {
    auto [x, d] = order == WorklistOrder::lifo ? work.back() : work.front();
    if (order == WorklistOrder::lifo)
      work.pop_back();
    else
      work.pop_front();
    StateId src = node_state[x * (budget + 1) + d];

    if (ki.state(x).marked) {
      // A completion just happened (or this is a completing initial
      // state): the countdown restarts and the next event is free.
      assert(d == 0);
      for (const Transition& t : ki.transitions_from(x))
        counter.add_transition(src, t.event, intern(t.target, 0));
      continue;
    }
    for (const Transition& t : ki.transitions_from(x)) {
      unsigned d2;
      if (t.event == tick) {
        if (d + 1 > budget) {
          ++st.budget_cut_transitions;
          continue;
        }
        d2 = ki.state(t.target).marked ? 0 : d + 1;
      } else {
        d2 = ki.state(t.target).marked ? 0 : d;
      }
      counter.add_transition(src, t.event, intern(t.target, d2));
    }
  }

  // Trim against the class marking, then restore the full marking of k on
  // the survivors (a superset of the class marking, so trimness holds).
  std::vector<bool> co(counter.state_count(), false);
  for (StateId q : coreachable_states(counter)) co[q] = true;
  if (!co[counter.initial()]) {
    st.emptied = true;
    return Automaton::empty(g.events_ptr());
  }
  std::vector<StateId> keep;
  for (StateId q = 0; q < counter.state_count(); ++q)
    if (co[q]) keep.push_back(q);
  Automaton pruned = detail::restrict_to(counter, keep);
  for (std::size_t i = 0; i < keep.size(); ++i)
    pruned.set_marked(static_cast<StateId>(i),
                      kt.state(base_of[keep[i]]).marked);
  return canonical_renumber(pruned, "x");
}

Automaton sup_cbtc(const Automaton& g, const Automaton& e,
                   const MarkerCover& cover, WorklistOrder order,
                   SynthesisReport* report) {
  SynthesisReport local;
  SynthesisReport& rep = report ? *report : local;
  rep = SynthesisReport{};

  ControlContext ctx(g);
  check_cover(g, cover);
  Verdict alf = check_activity_loop_free(g);
  if (!alf.holds)
    throw Error("plant is not activity-loop-free: " + alf.detail);

  Automaton cur = trim(product(e, g));
  rep.pass_bound = std::max<std::size_t>(1, cur.state_count());
  for (const CoverClass& cls : cover.classes) rep.pass_bound *= cls.budget;

  if (cur.is_empty()) {
    rep.empty_result = true;
    rep.controllable = rep.bounded_time = true;
    return cur;
  }

  while (true) {
    ++rep.passes;
    SynthesisPass pass;
    Automaton before = cur;
    bool emptied = false;
    for (const CoverClass& cls : cover.classes) {
      BtcStats stat;
      cur = sup_btc(g, cur, cls, order, &stat);
      pass.classes.push_back(stat);
      if (cur.is_empty()) {
        emptied = true;
        break;
      }
    }
    if (!emptied) {
      cur = sup_c(cur, ctx, &pass.supc);
      emptied = cur.is_empty();
    }
    pass.states_after = cur.state_count();
    rep.pass_log.push_back(std::move(pass));
    if (emptied) {
      rep.empty_result = true;
      break;
    }
    if (language_equal(cur, before).holds) break;
    if (rep.passes > rep.pass_bound)
      throw Error("synthesis failed to stabilize within its bound");
  }

  rep.final_states = cur.state_count();
  rep.final_transitions = cur.transition_count();
  if (cur.is_empty()) {
    rep.controllable = rep.bounded_time = true;  // vacuously
  } else {
    rep.controllable = is_controllable(cur, ctx).holds;
    rep.bounded_time = verify_bounded_time_nonblocking(cur, cover).holds;
  }
  return cur;
}

}  // namespace ticksup
