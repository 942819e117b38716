#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ticksup/activity_model.hpp"
#include "ticksup/automaton.hpp"
#include "ticksup/bounded_time.hpp"

namespace ticksup {

// Text formats. They share a few conventions: `#` starts a comment, blank
// lines are ignored, `[section]` headers group the content, sections may
// come in any order, and names are whitespace-free tokens. The clock event
// `tick` is implicit and never declared.
//
// The parse_* functions read a stream and throw ParseError with a 1-based
// position; the load_* functions read a file and prefix errors with its
// path.

// Activity model:
//   [events]        one `name lower upper flags` per line; upper may be
//                   `inf`; flags is `-` or any combination of `f`
//                   (forcible) and `p` (prohibitible)
//   [activities]    one `name [marked]` per line
//   [initial]       one activity name
//   [transitions]   one `source event target` per line
ActivityModel parse_activity_model(std::istream& in);
ActivityModel load_activity_model(const std::string& path);
void write_activity_model(std::ostream& out, const ActivityModel& m);

// Automaton:
//   [events]        one `name flags` per line; required when no shared
//                   table is supplied, otherwise optional and checked
//                   against it
//   [states]        one `name [marked] [activity=A] [counter=N]` per line
//   [initial]       one state name (omitted for the empty automaton)
//   [transitions]   one `source event target` per line
Automaton parse_automaton(std::istream& in,
                          std::shared_ptr<const EventTable> table = nullptr);
Automaton load_automaton(const std::string& path,
                         std::shared_ptr<const EventTable> table = nullptr);
void write_automaton(std::ostream& out, const Automaton& a);

// Cover: a [cover] section with one
// `class <name> budget <N> activities <name...>` per line.
MarkerCover parse_cover(std::istream& in);
MarkerCover load_cover(const std::string& path);
void write_cover(std::ostream& out, const MarkerCover& cover);

// Project: [plant] names the model or automaton file, [specs] lists
// automaton files (possibly none), [cover] names the cover file, and
// [options] holds `worklist lifo|fifo`. load_project resolves the listed
// paths relative to the project file's directory.
struct ProjectFile {
  std::string plant;
  std::vector<std::string> specs;
  std::string cover;
  WorklistOrder order = WorklistOrder::lifo;
};
ProjectFile parse_project(std::istream& in);
ProjectFile load_project(const std::string& path);

// Graphviz view: marked states are double circles, tick edges are dashed,
// and state labels carry the activity and countdown annotations.
void write_dot(std::ostream& out, const Automaton& a);

// Two-column output, one `key value` pair per line.
using Report = std::vector<std::pair<std::string, std::string>>;
void write_report(std::ostream& out, const Report& report);

}  // namespace ticksup
