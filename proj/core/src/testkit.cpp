#include "ticksup/testkit.hpp"

#include <deque>
#include <random>
#include <string>
#include <utility>

#include "internal.hpp"
#include "ticksup/operations.hpp"
#include "ticksup/ttg.hpp"

namespace ticksup {

namespace {

// rng() % span is bias-prone in general but fine for test generation, and
// unlike uniform_int_distribution it draws the same values on every
// platform.
unsigned pick(std::mt19937_64& rng, unsigned lo, unsigned hi) {
  return lo + static_cast<unsigned>(rng() % (hi - lo + 1));
}

}  // namespace

Verdict btc_oracle(const Automaton& a, const MarkerCover& cover) {
  Verdict ok;
  if (cover.classes.empty()) throw Error("cover has no classes");
  if (a.is_empty()) return ok;
  Verdict alf = check_activity_loop_free(a);
  if (!alf.holds)
    throw Error("automaton is not activity-loop-free: " + alf.detail);

  const EventId tick = a.events().tick();
  const std::size_t n = a.state_count();
  std::vector<StateId> order = reachable_states(a);

  for (const CoverClass& cls : cover.classes) {
    std::vector<bool> inclass(n, false);
    for (StateId q : resolve_class(a, cls)) inclass[q] = true;
    const std::string where = "class '" + cls.name + "': ";

    for (StateId x : order) {
      if (inclass[x]) continue;

      // Can the class be reached from here at all?
      {
        std::vector<bool> seen(n, false);
        std::deque<StateId> queue{x};
        seen[x] = true;
        bool found = false;
        while (!queue.empty() && !found) {
          StateId q = queue.front();
          queue.pop_front();
          if (inclass[q]) found = true;
          for (const Transition& t : a.transitions_from(q))
            if (!seen[t.target]) {
              seen[t.target] = true;
              queue.push_back(t.target);
            }
        }
        if (!found) {
          Verdict v;
          v.holds = false;
          v.code = VerdictCode::class_unreachable;
          v.anchor = x;
          v.witness = detail::access_path(a, x);
          v.detail = where + "state '" + a.state(x).name +
                     "' cannot reach the marker set";
          return v;
        }
      }

      // Does some completion-free path from here outlast the budget? Walk
      // (state, ticks spent) pairs, stopping at class entry; counts beyond
      // budget + 1 are all alike, so the search space stays finite even
      // across cycles.
      {
        const unsigned cap = cls.budget + 1;
        std::vector<bool> seen(n * (cap + 1), false);
        std::deque<std::pair<StateId, unsigned>> queue{{x, 0}};
        seen[x * (cap + 1)] = true;
        while (!queue.empty()) {
          auto [q, c] = queue.front();
          queue.pop_front();
          for (const Transition& t : a.transitions_from(q)) {
            unsigned c2 = c + (t.event == tick ? 1u : 0u);
            if (c2 > cls.budget) {
              Verdict v;
              v.holds = false;
              v.code = VerdictCode::budget_exceeded;
              v.anchor = x;
              v.witness = detail::access_path(a, x);
              v.detail = where + "state '" + a.state(x).name +
                         "' starts a completion-free stretch of " +
                         std::to_string(c2) + " ticks";
              return v;
            }
            if (inclass[t.target]) continue;
            if (!seen[t.target * (cap + 1) + c2]) {
              seen[t.target * (cap + 1) + c2] = true;
              queue.emplace_back(t.target, c2);
            }
          }
        }
      }
    }
  }
  return ok;
}

std::vector<std::vector<EventId>> enumerate_closure_strings(
    const Automaton& a, std::size_t max_len) {
  std::vector<std::vector<EventId>> out;
  if (a.is_empty()) return out;
  struct Node {
    StateId q;
    std::vector<EventId> s;
  };
  std::deque<Node> queue{{a.initial(), {}}};
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (node.s.size() < max_len)
      for (const Transition& t : a.transitions_from(node.q)) {
        std::vector<EventId> s = node.s;
        s.push_back(t.event);
        queue.push_back(Node{t.target, std::move(s)});
      }
    out.push_back(std::move(node.s));
  }
  return out;
}

std::vector<std::vector<EventId>> supremal_membership_oracle(
    const Automaton& g, const Automaton& k, const CoverClass& cls,
    std::size_t max_len) {
  std::vector<std::vector<EventId>> out;
  Automaton kt = trim(k);
  if (kt.is_empty()) return out;
  Automaton ki = restrict_marking(kt, g, cls);
  const EventId tick = g.events().tick();
  const unsigned budget = cls.budget;
  const std::size_t n = ki.state_count();

  // Fewest ticks from each state to its first entry into the class,
  // relaxed to a fixed point.
  const unsigned kFar = ~0u;
  std::vector<unsigned> fewest(n, kFar);
  for (StateId q = 0; q < n; ++q)
    if (ki.state(q).marked) fewest[q] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId q = 0; q < n; ++q) {
      if (ki.state(q).marked) continue;
      for (const Transition& t : ki.transitions_from(q)) {
        if (fewest[t.target] == kFar) continue;
        unsigned d = fewest[t.target] + (t.event == tick ? 1u : 0u);
        if (d < fewest[q]) {
          fewest[q] = d;
          changed = true;
        }
      }
    }
  }
  auto affordable = [&](StateId q, unsigned spent) {
    return fewest[q] != kFar && fewest[q] + spent <= budget;
  };

  if (!affordable(ki.initial(), 0)) return out;
  struct Node {
    StateId q;
    unsigned spent;
    std::vector<EventId> s;
  };
  std::deque<Node> queue{{ki.initial(), 0, {}}};
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (node.s.size() < max_len)
      for (const Transition& t : ki.transitions_from(node.q)) {
        unsigned spent;
        if (ki.state(node.q).marked) {
          spent = 0;  // the event right after a completion is free
        } else {
          spent = node.spent + (t.event == tick ? 1u : 0u);
          if (spent > budget) continue;  // this tick breaches the deadline
        }
        if (ki.state(t.target).marked) spent = 0;
        if (!affordable(t.target, spent)) continue;
        std::vector<EventId> s = node.s;
        s.push_back(t.event);
        queue.push_back(Node{t.target, spent, std::move(s)});
      }
    out.push_back(std::move(node.s));
  }
  return out;
}

Automaton union_recognizer(const Automaton& a, const MarkerCover& cover) {
  if (cover.classes.empty()) throw Error("cover has no classes");
  Automaton out = a;
  if (a.is_empty()) return out;
  std::vector<bool> keep(a.state_count(), false);
  for (const CoverClass& cls : cover.classes)
    for (StateId q : resolve_class(a, cls)) keep[q] = true;
  for (StateId q = 0; q < a.state_count(); ++q) out.set_marked(q, keep[q]);
  return out;
}

RandomInstance random_instance(const InstanceParams& p) {
  if (p.min_activities < 1 || p.min_activities > p.max_activities ||
      p.min_events < 1 || p.min_events > p.max_events ||
      p.max_classes < 1 || p.max_budget < 1 || p.max_spec_states < 1)
    throw Error("instance parameters out of range");
  std::mt19937_64 rng(p.seed);

  // A draw can compile to an automaton without marked states (a marked
  // activity may be unreachable once timers are in play); resample until
  // one sticks.
  for (;;) {
    const unsigned nact = pick(rng, p.min_activities, p.max_activities);
    const unsigned nev = pick(rng, p.min_events, p.max_events);

    auto table = std::make_shared<EventTable>();
    std::vector<TimerBound> bounds;
    std::vector<EventId> delayed;  // events safe for cycle-closing edges
    for (unsigned i = 0; i < nev; ++i) {
      table->add("e" + std::to_string(i + 1), pick(rng, 0, 1) == 0,
                 pick(rng, 0, 1) == 0);
      unsigned lower = i == 0 ? pick(rng, 1, 2) : pick(rng, 0, 2);
      if (pick(rng, 0, 3) == 0)
        bounds.push_back(TimerBound::unbounded(lower));
      else
        bounds.push_back(TimerBound::bounded(lower, lower + pick(rng, 0, p.max_upper)));
      if (lower >= 1) delayed.push_back(static_cast<EventId>(i));
    }

    ActivityModel model(table, std::move(bounds));
    for (unsigned a = 0; a < nact; ++a)
      model.add_activity("A" + std::to_string(a), pick(rng, 0, 1) == 0);
    model.set_initial(0);

    // Spanning edges keep every activity reachable; creation order is
    // topological for them, so only the extra edges below can close cycles.
    for (unsigned a = 1; a < nact; ++a) {
      ActivityId parent = pick(rng, 0, a - 1);
      EventId e = pick(rng, 0, nev - 1);
      if (model.step(parent, e) != ActivityModel::kNoActivity) {
        parent = a - 1;  // a fresh activity always has room
        while (model.step(parent, e) != ActivityModel::kNoActivity) ++e;
      }
      model.add_transition(parent, e, a);
    }
    const unsigned extra = pick(rng, 0, nact);
    for (unsigned i = 0; i < extra; ++i) {
      ActivityId src = pick(rng, 0, nact - 1);
      ActivityId dst = pick(rng, 0, nact - 1);
      EventId e = dst > src ? pick(rng, 0, nev - 1)
                            : delayed[pick(rng, 0, delayed.size() - 1)];
      if (model.step(src, e) == ActivityModel::kNoActivity)
        model.add_transition(src, e, dst);
    }

    Automaton ttg = build_ttg(model);
    std::vector<std::string> marked_acts;
    for (StateId q = 0; q < ttg.state_count(); ++q) {
      const State& s = ttg.state(q);
      if (!s.marked) continue;
      bool known = false;
      for (const std::string& m : marked_acts) known = known || m == s.activity;
      if (!known) marked_acts.push_back(s.activity);
    }
    if (marked_acts.empty()) continue;

    for (std::size_t i = marked_acts.size(); i > 1; --i)
      std::swap(marked_acts[i - 1], marked_acts[pick(rng, 0, i - 1)]);
    const unsigned ncls = pick(
        rng, 1, std::min<unsigned>(p.max_classes, marked_acts.size()));
    MarkerCover cover;
    for (unsigned c = 0; c < ncls; ++c)
      cover.classes.push_back(CoverClass{
          "c" + std::to_string(c), pick(rng, 1, p.max_budget), {}});
    for (std::size_t i = 0; i < marked_acts.size(); ++i)
      cover.classes[i % ncls].activities.push_back(marked_acts[i]);

    const unsigned nspec = pick(rng, 1, p.max_spec_states);
    Automaton spec(table);
    for (unsigned s = 0; s < nspec; ++s)
      spec.add_state(State{"t" + std::to_string(s), true, "", -1});
    spec.set_initial(0);
    for (unsigned s = 0; s < nspec; ++s) {
      for (EventId e = 0; e < nev; ++e)
        if (pick(rng, 0, 3) != 0)
          spec.add_transition(s, e, pick(rng, 0, nspec - 1));
      if (pick(rng, 0, 5) != 0)
        spec.add_transition(s, table->tick(), pick(rng, 0, nspec - 1));
    }

    return RandomInstance{std::move(model), std::move(ttg), std::move(spec),
                          std::move(cover)};
  }
}

}  // namespace ticksup
