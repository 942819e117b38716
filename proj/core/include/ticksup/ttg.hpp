#pragma once

#include "ticksup/activity_model.hpp"
#include "ticksup/automaton.hpp"

namespace ticksup {

// Compile an activity model into its tick automaton. States are interned
// timer configurations (activity plus one countdown per activity event);
// the countdown of a disabled event rests at its default. An event with a
// finite upper bound preempts tick when its countdown reaches zero, and is
// eligible once no more than (upper - lower) ticks remain; an event without
// one is eligible exactly when its countdown has run out. Firing any event
// resets its own countdown, and a countdown survives an activity change
// only when its event stays enabled across it.
Automaton build_ttg(const ActivityModel& m);

// Holds iff every cycle contains at least one tick, equivalently: deleting
// all tick transitions leaves an acyclic graph. The witness traces one
// offending cycle from its anchor state back to itself.
Verdict check_activity_loop_free(const Automaton& a);

}  // namespace ticksup
