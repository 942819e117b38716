#include "ticksup/automaton.hpp"

namespace ticksup {

const char* verdict_code_name(VerdictCode code) {
  switch (code) {
    case VerdictCode::ok:
      return "ok";
    case VerdictCode::blocking:
      return "blocking";
    case VerdictCode::uncontrollable_event:
      return "uncontrollable-event";
    case VerdictCode::tick_not_preemptable:
      return "tick-not-preemptable";
    case VerdictCode::class_unreachable:
      return "class-unreachable";
    case VerdictCode::class_cycle:
      return "class-cycle";
    case VerdictCode::budget_exceeded:
      return "budget-exceeded";
    case VerdictCode::activity_loop:
      return "activity-loop";
    case VerdictCode::language_difference:
      return "language-difference";
    case VerdictCode::marking_difference:
      return "marking-difference";
  }
  return "unknown";
}

std::string format_string(const EventTable& table,
                          const std::vector<EventId>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += '.';
    out += table.name(s[i]);
  }
  return out;
}

}  // namespace ticksup
