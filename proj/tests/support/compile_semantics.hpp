#pragma once

// Exhaustive single-event timing battery: for every delay window with a
// finite upper bound up to 4, and every lower bound up to 4 with no upper
// bound, compile a two-activity model and check the full expected behavior:
// the event fires exactly within its window, tick is preempted exactly at
// the deadline, and the marked target idles under tick. Expected values are
// written out from the timing rules by hand, so this doubles as the oracle
// for the compiler.

#include <string>
#include <vector>

#include "ticksup/operations.hpp"
#include "ticksup/ttg.hpp"

namespace ticksup::test {

struct BatteryResult {
  int cases = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline BatteryResult run_compile_semantics_battery() {
  BatteryResult res;

  auto run_case = [&](unsigned lower, bool finite, unsigned upper) {
    ++res.cases;
    std::string tag = finite ? "(l=" + std::to_string(lower) +
                                   ",u=" + std::to_string(upper) + ")"
                             : "(l=" + std::to_string(lower) + ",u=inf)";
    auto fail = [&](const std::string& what) {
      res.failures.push_back(tag + ": " + what);
    };

    auto table = std::make_shared<EventTable>();
    EventId s = table->add("s", false, false);
    std::vector<TimerBound> bounds{finite ? TimerBound::bounded(lower, upper)
                                          : TimerBound::unbounded(lower)};
    ActivityModel m(table, bounds);
    ActivityId a = m.add_activity("A", false);
    ActivityId b = m.add_activity("B", true);
    m.set_initial(a);
    m.add_transition(a, s, b);

    Automaton g = build_ttg(m);
    EventId tick = table->tick();

    auto ticks = [&](unsigned k) {
      return std::vector<EventId>(k, tick);
    };
    auto ticks_then_s = [&](unsigned k) {
      auto v = ticks(k);
      v.push_back(s);
      return v;
    };

    // One source state per countdown value plus the single target state.
    unsigned source_states = (finite ? upper : lower) + 1;
    if (g.state_count() != source_states + 1)
      fail("expected " + std::to_string(source_states + 1) + " states, got " +
           std::to_string(g.state_count()));

    unsigned probe = (finite ? upper : lower) + 3;
    for (unsigned k = 0; k <= probe; ++k) {
      bool tick_run_ok = finite ? k <= upper : true;
      if (in_closed_language(g, ticks(k)) != tick_run_ok)
        fail("tick^" + std::to_string(k) +
             (tick_run_ok ? " should be possible" : " should be preempted"));

      bool fire_ok = finite ? (k >= lower && k <= upper) : k >= lower;
      if (in_marked_language(g, ticks_then_s(k)) != fire_ok)
        fail("tick^" + std::to_string(k) + ".s should be " +
             (fire_ok ? "marked" : "impossible"));
    }

    // The target never re-fires s and idles under tick, staying marked.
    auto settled = ticks_then_s(lower);
    for (unsigned extra = 1; extra <= 3; ++extra) {
      settled.push_back(tick);
      if (!in_marked_language(g, settled))
        fail("target must idle marked under tick");
    }
    auto refire = ticks_then_s(lower);
    refire.push_back(s);
    if (in_closed_language(g, refire)) fail("s must not re-fire at the target");

    if (!check_activity_loop_free(g).holds)
      fail("compiled automaton must be activity-loop-free");
  };

  for (unsigned u = 0; u <= 4; ++u)
    for (unsigned l = 0; l <= u; ++l) run_case(l, true, u);
  for (unsigned l = 0; l <= 4; ++l) run_case(l, false, 0);

  return res;
}

}  // namespace ticksup::test
