#pragma once

#include <vector>

#include "ticksup/automaton.hpp"

namespace ticksup {

// States reachable from the initial state, in breadth-first discovery order
// (events explored in table order, so the order is canonical).
std::vector<StateId> reachable_states(const Automaton& a);

// States from which some marked state is reachable, ascending by id.
std::vector<StateId> coreachable_states(const Automaton& a);

// Restriction to the reachable part. State order follows breadth-first
// discovery; names and annotations are preserved.
Automaton reachable(const Automaton& a);

// Restriction to states both reachable and coreachable; the result is the
// empty automaton when nothing survives. Preserves relative state order.
Automaton trim(const Automaton& a);

// Holds iff every reachable state is coreachable. The witness is a shortest
// string leading to a blocking state (ties broken in event-table order).
Verdict is_nonblocking(const Automaton& a);

// Synchronous product on the common alphabet: transitions present in both
// operands, marking conjunctive. Both automata must use the same event
// table (content equality). Annotations merge preferring the right operand.
Automaton product(const Automaton& a, const Automaton& b);

// Language equality after trimming both sides: compares marked and closed
// languages. The witness is a length-lexicographically minimal string
// distinguishing them.
Verdict language_equal(const Automaton& a, const Automaton& b);

// L_m(a) subset of L_m(b) and L(a) subset of L(b) after trimming, with a
// minimal witness on failure.
Verdict language_subset(const Automaton& a, const Automaton& b);

// Number of tick occurrences in s.
std::size_t tick_count(const EventTable& table, const std::vector<EventId>& s);

// State reached by walking s from the initial state, kNoState if some step
// is undefined (or the automaton is empty).
StateId walk(const Automaton& a, const std::vector<EventId>& s);

bool in_closed_language(const Automaton& a, const std::vector<EventId>& s);
bool in_marked_language(const Automaton& a, const std::vector<EventId>& s);

// Copy with states renumbered in breadth-first order and renamed with the
// given prefix ("x" gives x0, x1, ...). Unreachable states are dropped.
// Marks and annotations survive; used to keep names compact after synthesis
// steps that would otherwise stack product names.
Automaton canonical_renumber(const Automaton& a, const std::string& prefix);

// One marked state looping on every event: recognizes everything over the
// table. The neutral element of `product`, up to language equality.
Automaton universe(std::shared_ptr<const EventTable> table);

}  // namespace ticksup
