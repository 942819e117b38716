#pragma once

#include "ticksup/automaton.hpp"

namespace ticksup {

// A plant automaton in the role of the uncontrolled system. Supervisors may
// disable prohibitible events always, and the clock event only while some
// forcible event remains eligible; everything else is beyond their reach.
struct ControlContext {
  explicit ControlContext(Automaton plant);

  Automaton plant;
};

// Events defined at q, ascending by id.
std::vector<EventId> eligible_events(const Automaton& a, StateId q);

// Decides whether the behavior of k can be enforced on the plant: along
// every string of trim(k), each eligible uncontrollable plant event must
// stay available, and dropping an eligible tick requires an eligible
// forcible event in k to preempt it. Throws when trim(k)'s closed language
// escapes the plant's.
Verdict is_controllable(const Automaton& k, const ControlContext& ctx);

struct SupCStats {
  std::size_t iterations = 0;
  std::size_t states_removed = 0;
};

// Supremal controllable sublanguage of L_m(k) with respect to the plant
// (of the intersection, if k strays outside it): alternately prunes states
// of the synchronized product that block or that sever an uncontrollable
// continuation, until the remainder stabilizes. Returns the empty automaton
// when nothing controllable remains.
Automaton sup_c(const Automaton& k, const ControlContext& ctx,
                SupCStats* stats = nullptr);

}  // namespace ticksup
