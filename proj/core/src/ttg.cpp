#include "ticksup/ttg.hpp"

#include <deque>
#include <map>
#include <utility>

namespace ticksup {

namespace {

using Timers = std::vector<unsigned>;
using Config = std::pair<ActivityId, Timers>;

bool window_open(const TimerBound& b, unsigned t) {
  return b.finite ? t <= b.upper - b.lower : t == 0;
}

std::string config_name(const ActivityModel& m, const Config& c) {
  std::string name = m.activity(c.first).name;
  bool first = true;
  for (const Transition& t : m.transitions_from(c.first)) {
    name += first ? ':' : '.';
    first = false;
    name += std::to_string(c.second[t.event]);
  }
  return name;
}

}  // namespace

Automaton build_ttg(const ActivityModel& m) {
  if (m.activity_count() == 0) throw Error("activity model has no activities");
  if (m.initial() == ActivityModel::kNoActivity)
    throw Error("activity model has no initial activity");

  const EventTable& table = m.events();
  const std::size_t nev = table.activity_count();
  Automaton out(m.events_ptr());

  std::map<Config, StateId> interned;
  std::deque<Config> queue;

  auto intern = [&](Config c) {
    auto it = interned.find(c);
    if (it != interned.end()) return it->second;
    State s;
    s.name = config_name(m, c);
    s.marked = m.activity(c.first).marked;
    s.activity = m.activity(c.first).name;
    StateId q = out.add_state(std::move(s));
    interned.emplace(c, q);
    queue.push_back(std::move(c));
    return q;
  };

  Timers defaults(nev);
  for (EventId e = 0; e < nev; ++e) defaults[e] = m.bound(e).default_timer();

  out.set_initial(intern(Config{m.initial(), defaults}));

  while (!queue.empty()) {
    Config c = std::move(queue.front());
    queue.pop_front();
    const auto [act, timers] = c;
    StateId src = interned.at(c);

    // Activity events whose windows are open.
    for (const Transition& t : m.transitions_from(act)) {
      if (!window_open(m.bound(t.event), timers[t.event])) continue;
      Timers next = defaults;
      for (const Transition& u : m.transitions_from(t.target)) {
        EventId e = u.event;
        // A countdown survives the move only if its event was enabled on
        // both sides and is not the one that just fired.
        if (e != t.event && m.step(act, e) != ActivityModel::kNoActivity)
          next[e] = timers[e];
      }
      out.add_transition(src, t.event, intern(Config{t.target, next}));
    }

    // Tick advances every enabled countdown unless an enabled event with a
    // finite upper bound has reached its deadline.
    bool preempted = false;
    for (const Transition& t : m.transitions_from(act))
      if (m.bound(t.event).finite && timers[t.event] == 0) preempted = true;
    if (!preempted) {
      Timers next = timers;
      for (const Transition& t : m.transitions_from(act))
        if (next[t.event] > 0) --next[t.event];
      out.add_transition(src, table.tick(), intern(Config{act, next}));
    }
  }
  return out;
}

Verdict check_activity_loop_free(const Automaton& a) {
  Verdict v;
  const EventId tick = a.events().tick();
  const std::size_t n = a.state_count();
  std::vector<int> color(n, 0);  // 0 new, 1 on stack, 2 done

  struct Frame {
    StateId q;
    std::size_t edge = 0;
  };

  for (StateId root = 0; root < n; ++root) {
    if (color[root] != 0) continue;
    std::vector<Frame> stack{Frame{root}};
    std::vector<EventId> events;  // events[i] leads from stack[i] to stack[i+1]
    color[root] = 1;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& out = a.transitions_from(f.q);
      bool descended = false;
      while (f.edge < out.size()) {
        const Transition& t = out[f.edge++];
        if (t.event == tick) continue;
        if (color[t.target] == 1) {
          // Found a tickless cycle: replay it from the revisited state.
          std::size_t j = 0;
          while (stack[j].q != t.target) ++j;
          v.holds = false;
          v.code = VerdictCode::activity_loop;
          v.anchor = t.target;
          v.witness.assign(events.begin() + j, events.end());
          v.witness.push_back(t.event);
          v.detail = "cycle without tick through state '" +
                     a.state(t.target).name + "'";
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
  return v;
}

}  // namespace ticksup
