#pragma once

// Shared machinery for the implementation files; not part of the installed
// interface.

#include <cstdint>
#include <vector>

#include "ticksup/automaton.hpp"

namespace ticksup::detail {

// Restriction to `keep` (in the given order), dropping transitions whose
// endpoints were removed. The empty automaton results when the initial
// state is not kept; `remap_out`, when given, receives old-id -> new-id
// (kNoState for dropped states).
Automaton restrict_to(const Automaton& a, const std::vector<StateId>& keep,
                      std::vector<StateId>* remap_out = nullptr);

// Synchronous product that remembers, for every product state, the
// originating state on each side.
struct PairedAutomaton {
  Automaton product;
  std::vector<StateId> left;
  std::vector<StateId> right;

  explicit PairedAutomaton(Automaton p) : product(std::move(p)) {}
};

PairedAutomaton paired_product(const Automaton& a, const Automaton& b);

// Breadth-first predecessor bookkeeping for witness reconstruction.
struct Discovery {
  StateId parent = kNoState;
  EventId event = 0;
};

std::vector<EventId> rebuild_path(const std::vector<Discovery>& how,
                                  StateId initial, StateId q);

// Shortest access string to a reachable state, ties broken in event-table
// order.
std::vector<EventId> access_path(const Automaton& a, StateId goal);

// For each state of the deterministic automaton k (which must be reachable
// throughout), the plant state reached by the same strings. Throws when a
// string of k is not a plant string, or a marked state of k pairs with an
// unmarked plant state.
std::vector<StateId> plant_components(const Automaton& k, const Automaton& g);

}  // namespace ticksup::detail
