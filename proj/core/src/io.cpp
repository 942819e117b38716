#include "ticksup/io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include "ticksup/errors.hpp"

namespace ticksup {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Token> tokenize(const std::string& raw) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (i < raw.size()) {
    if (blank(raw[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < raw.size() && !blank(raw[i])) ++i;
    out.push_back(Token{raw.substr(start, i - start), start + 1});
  }
  return out;
}

struct Sections {
  std::map<std::string, std::vector<Line>> by_name;
  std::size_t last_line = 0;

  const std::vector<Line>* find(const std::string& name) const {
    auto it = by_name.find(name);
    return it == by_name.end() ? nullptr : &it->second;
  }
  const std::vector<Line>& require(const std::string& name) const {
    const std::vector<Line>* s = find(name);
    if (!s)
      throw ParseError("missing section '[" + name + "]'", last_line + 1, 1);
    return *s;
  }
};

Sections read_sections(std::istream& in,
                       std::initializer_list<const char*> allowed) {
  Sections out;
  std::string raw;
  std::vector<Line>* current = nullptr;
  while (std::getline(in, raw)) {
    ++out.last_line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::vector<Token> tokens = tokenize(raw);
    if (tokens.empty()) continue;
    const Token& head = tokens[0];
    if (head.text.front() == '[') {
      if (tokens.size() != 1 || head.text.size() < 3 ||
          head.text.back() != ']')
        throw ParseError("malformed section header", out.last_line,
                         head.column);
      std::string name = head.text.substr(1, head.text.size() - 2);
      bool known = false;
      for (const char* a : allowed) known = known || name == a;
      if (!known)
        throw ParseError("unknown section '[" + name + "]'", out.last_line,
                         head.column);
      if (out.by_name.count(name))
        throw ParseError("duplicate section '[" + name + "]'", out.last_line,
                         head.column);
      current = &out.by_name[name];
      continue;
    }
    if (!current)
      throw ParseError("content before any section header", out.last_line,
                       head.column);
    current->push_back(Line{out.last_line, std::move(tokens)});
  }
  return out;
}

unsigned parse_number(const Token& t, std::size_t line) {
  unsigned long value = 0;
  if (t.text.empty())
    throw ParseError("expected a number", line, t.column);
  for (char c : t.text) {
    if (c < '0' || c > '9')
      throw ParseError("expected a number, got '" + t.text + "'", line,
                       t.column);
    value = value * 10 + static_cast<unsigned long>(c - '0');
    if (value > 1000000000ul)
      throw ParseError("number out of range", line, t.column);
  }
  return static_cast<unsigned>(value);
}

std::pair<bool, bool> parse_flags(const Token& t, std::size_t line) {
  if (t.text == "-") return {false, false};
  bool f = false, p = false;
  for (char c : t.text) {
    if (c == 'f' && !f)
      f = true;
    else if (c == 'p' && !p)
      p = true;
    else
      throw ParseError("bad flags '" + t.text + "' (use -, f, p, or fp)",
                       line, t.column);
  }
  return {f, p};
}

std::string flag_text(bool forcible, bool prohibitible) {
  std::string s;
  if (forcible) s += 'f';
  if (prohibitible) s += 'p';
  return s.empty() ? "-" : s;
}

// Lift errors from the construction layer to the offending source position.
template <class F>
auto at(std::size_t line, std::size_t column, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), line, column);
  }
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

std::string dot_quote(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

ActivityModel parse_activity_model(std::istream& in) {
  Sections s =
      read_sections(in, {"events", "activities", "initial", "transitions"});

  auto table = std::make_shared<EventTable>();
  std::vector<TimerBound> bounds;
  for (const Line& ln : s.require("events")) {
    if (ln.tokens.size() != 4)
      throw ParseError("expected `name lower upper flags`", ln.number,
                       ln.tokens[0].column);
    auto [f, p] = parse_flags(ln.tokens[3], ln.number);
    at(ln.number, ln.tokens[0].column,
       [&] { return table->add(ln.tokens[0].text, f, p); });
    unsigned lower = parse_number(ln.tokens[1], ln.number);
    if (ln.tokens[2].text == "inf") {
      bounds.push_back(TimerBound::unbounded(lower));
    } else {
      unsigned upper = parse_number(ln.tokens[2], ln.number);
      if (upper < lower)
        throw ParseError("upper bound below lower bound", ln.number,
                         ln.tokens[2].column);
      bounds.push_back(TimerBound::bounded(lower, upper));
    }
  }

  ActivityModel m(table, std::move(bounds));
  for (const Line& ln : s.require("activities")) {
    if (ln.tokens.size() > 2 ||
        (ln.tokens.size() == 2 && ln.tokens[1].text != "marked"))
      throw ParseError("expected `name [marked]`", ln.number,
                       ln.tokens.back().column);
    at(ln.number, ln.tokens[0].column,
       [&] { return m.add_activity(ln.tokens[0].text, ln.tokens.size() == 2); });
  }

  const std::vector<Line>& init = s.require("initial");
  if (init.size() != 1 || init[0].tokens.size() != 1)
    throw ParseError("expected exactly one initial activity",
                     init.empty() ? s.last_line + 1 : init[0].number, 1);
  ActivityId a0 = m.find_activity(init[0].tokens[0].text);
  if (a0 == ActivityModel::kNoActivity)
    throw ParseError("unknown activity '" + init[0].tokens[0].text + "'",
                     init[0].number, init[0].tokens[0].column);
  m.set_initial(a0);

  if (const std::vector<Line>* trs = s.find("transitions"))
    for (const Line& ln : *trs) {
      if (ln.tokens.size() != 3)
        throw ParseError("expected `source event target`", ln.number,
                         ln.tokens[0].column);
      ActivityId src = m.find_activity(ln.tokens[0].text);
      if (src == ActivityModel::kNoActivity)
        throw ParseError("unknown activity '" + ln.tokens[0].text + "'",
                         ln.number, ln.tokens[0].column);
      ActivityId dst = m.find_activity(ln.tokens[2].text);
      if (dst == ActivityModel::kNoActivity)
        throw ParseError("unknown activity '" + ln.tokens[2].text + "'",
                         ln.number, ln.tokens[2].column);
      EventId e = at(ln.number, ln.tokens[1].column,
                     [&] { return table->require(ln.tokens[1].text); });
      at(ln.number, ln.tokens[1].column, [&] {
        m.add_transition(src, e, dst);
        return 0;
      });
    }
  return m;
}

void write_activity_model(std::ostream& out, const ActivityModel& m) {
  const EventTable& t = m.events();
  out << "[events]\n";
  for (EventId e = 0; e < t.activity_count(); ++e) {
    const TimerBound& b = m.bound(e);
    out << t.name(e) << ' ' << b.lower << ' ';
    if (b.finite)
      out << b.upper;
    else
      out << "inf";
    out << ' ' << flag_text(t.forcible(e), t.prohibitible(e)) << '\n';
  }
  out << "[activities]\n";
  for (ActivityId a = 0; a < m.activity_count(); ++a) {
    out << m.activity(a).name;
    if (m.activity(a).marked) out << " marked";
    out << '\n';
  }
  out << "[initial]\n";
  if (m.initial() != ActivityModel::kNoActivity)
    out << m.activity(m.initial()).name << '\n';
  out << "[transitions]\n";
  for (ActivityId a = 0; a < m.activity_count(); ++a)
    for (const Transition& tr : m.transitions_from(a))
      out << m.activity(a).name << ' ' << t.name(tr.event) << ' '
          << m.activity(tr.target).name << '\n';
}

Automaton parse_automaton(std::istream& in,
                          std::shared_ptr<const EventTable> table) {
  Sections s =
      read_sections(in, {"events", "states", "initial", "transitions"});

  if (table) {
    if (const std::vector<Line>* evts = s.find("events"))
      for (const Line& ln : *evts) {
        if (ln.tokens.size() != 2)
          throw ParseError("expected `name flags`", ln.number,
                           ln.tokens[0].column);
        auto e = table->find(ln.tokens[0].text);
        if (!e || table->is_tick(*e))
          throw ParseError(
              "event '" + ln.tokens[0].text + "' is not in the shared table",
              ln.number, ln.tokens[0].column);
        auto [f, p] = parse_flags(ln.tokens[1], ln.number);
        if (f != table->forcible(*e) || p != table->prohibitible(*e))
          throw ParseError("event '" + ln.tokens[0].text +
                               "' flags do not match the shared table",
                           ln.number, ln.tokens[1].column);
      }
  } else {
    auto fresh = std::make_shared<EventTable>();
    for (const Line& ln : s.require("events")) {
      if (ln.tokens.size() != 2)
        throw ParseError("expected `name flags`", ln.number,
                         ln.tokens[0].column);
      auto [f, p] = parse_flags(ln.tokens[1], ln.number);
      at(ln.number, ln.tokens[0].column,
         [&] { return fresh->add(ln.tokens[0].text, f, p); });
    }
    table = fresh;
  }

  Automaton a(table);
  for (const Line& ln : s.require("states")) {
    State st;
    st.name = ln.tokens[0].text;
    for (std::size_t i = 1; i < ln.tokens.size(); ++i) {
      const Token& opt = ln.tokens[i];
      if (opt.text == "marked") {
        st.marked = true;
      } else if (opt.text.rfind("activity=", 0) == 0) {
        st.activity = opt.text.substr(9);
      } else if (opt.text.rfind("counter=", 0) == 0) {
        st.counter = static_cast<int>(parse_number(
            Token{opt.text.substr(8), opt.column + 8}, ln.number));
      } else {
        throw ParseError("unrecognized state option '" + opt.text + "'",
                         ln.number, opt.column);
      }
    }
    at(ln.number, ln.tokens[0].column,
       [&] { return a.add_state(std::move(st)); });
  }

  const std::vector<Line>* init = s.find("initial");
  if (a.state_count() == 0) {
    if (init && !init->empty())
      throw ParseError("initial state without any states",
                       init->front().number, 1);
    return a;  // the empty automaton
  }
  if (!init || init->size() != 1 || init->front().tokens.size() != 1)
    throw ParseError("expected exactly one initial state",
                     init && !init->empty() ? init->front().number
                                            : s.last_line + 1,
                     1);
  StateId q0 = a.find_state(init->front().tokens[0].text);
  if (q0 == kNoState)
    throw ParseError("unknown state '" + init->front().tokens[0].text + "'",
                     init->front().number, init->front().tokens[0].column);
  a.set_initial(q0);

  if (const std::vector<Line>* trs = s.find("transitions"))
    for (const Line& ln : *trs) {
      if (ln.tokens.size() != 3)
        throw ParseError("expected `source event target`", ln.number,
                         ln.tokens[0].column);
      StateId src = a.find_state(ln.tokens[0].text);
      if (src == kNoState)
        throw ParseError("unknown state '" + ln.tokens[0].text + "'",
                         ln.number, ln.tokens[0].column);
      StateId dst = a.find_state(ln.tokens[2].text);
      if (dst == kNoState)
        throw ParseError("unknown state '" + ln.tokens[2].text + "'",
                         ln.number, ln.tokens[2].column);
      EventId e = at(ln.number, ln.tokens[1].column,
                     [&] { return table->require(ln.tokens[1].text); });
      at(ln.number, ln.tokens[1].column, [&] {
        a.add_transition(src, e, dst);
        return 0;
      });
    }
  return a;
}

void write_automaton(std::ostream& out, const Automaton& a) {
  const EventTable& t = a.events();
  out << "[events]\n";
  for (EventId e = 0; e < t.activity_count(); ++e)
    out << t.name(e) << ' ' << flag_text(t.forcible(e), t.prohibitible(e))
        << '\n';
  out << "[states]\n";
  for (StateId q = 0; q < a.state_count(); ++q) {
    const State& s = a.state(q);
    out << s.name;
    if (s.marked) out << " marked";
    if (!s.activity.empty()) out << " activity=" << s.activity;
    if (s.counter >= 0) out << " counter=" << s.counter;
    out << '\n';
  }
  out << "[initial]\n";
  if (!a.is_empty()) out << a.state(a.initial()).name << '\n';
  out << "[transitions]\n";
  for (StateId q = 0; q < a.state_count(); ++q)
    for (const Transition& tr : a.transitions_from(q))
      out << a.state(q).name << ' ' << t.name(tr.event) << ' '
          << a.state(tr.target).name << '\n';
}

MarkerCover parse_cover(std::istream& in) {
  Sections s = read_sections(in, {"cover"});
  MarkerCover cover;
  for (const Line& ln : s.require("cover")) {
    const std::vector<Token>& t = ln.tokens;
    if (t.size() < 6 || t[0].text != "class" || t[2].text != "budget" ||
        t[4].text != "activities")
      throw ParseError(
          "expected `class <name> budget <N> activities <name...>`",
          ln.number, t[0].column);
    CoverClass c;
    c.name = t[1].text;
    c.budget = parse_number(t[3], ln.number);
    for (std::size_t i = 5; i < t.size(); ++i)
      c.activities.push_back(t[i].text);
    cover.classes.push_back(std::move(c));
  }
  return cover;
}

void write_cover(std::ostream& out, const MarkerCover& cover) {
  out << "[cover]\n";
  for (const CoverClass& c : cover.classes) {
    out << "class " << c.name << " budget " << c.budget << " activities";
    for (const std::string& a : c.activities) out << ' ' << a;
    out << '\n';
  }
}

ProjectFile parse_project(std::istream& in) {
  Sections s = read_sections(in, {"plant", "specs", "cover", "options"});
  ProjectFile p;

  const std::vector<Line>& plant = s.require("plant");
  if (plant.size() != 1 || plant[0].tokens.size() != 1)
    throw ParseError("expected exactly one plant path",
                     plant.empty() ? s.last_line + 1 : plant[0].number, 1);
  p.plant = plant[0].tokens[0].text;

  if (const std::vector<Line>* specs = s.find("specs"))
    for (const Line& ln : *specs) {
      if (ln.tokens.size() != 1)
        throw ParseError("expected one path per line", ln.number,
                         ln.tokens[1].column);
      p.specs.push_back(ln.tokens[0].text);
    }

  if (const std::vector<Line>* cover = s.find("cover")) {
    if (cover->size() != 1 || cover->front().tokens.size() != 1)
      throw ParseError("expected exactly one cover path",
                       cover->empty() ? s.last_line + 1
                                      : cover->front().number,
                       1);
    p.cover = cover->front().tokens[0].text;
  }

  if (const std::vector<Line>* opts = s.find("options"))
    for (const Line& ln : *opts) {
      if (ln.tokens.size() == 2 && ln.tokens[0].text == "worklist") {
        if (ln.tokens[1].text == "lifo")
          p.order = WorklistOrder::lifo;
        else if (ln.tokens[1].text == "fifo")
          p.order = WorklistOrder::fifo;
        else
          throw ParseError(
              "unknown worklist order '" + ln.tokens[1].text + "'", ln.number,
              ln.tokens[1].column);
      } else {
        throw ParseError("unknown option '" + ln.tokens[0].text + "'",
                         ln.number, ln.tokens[0].column);
      }
    }
  return p;
}

ActivityModel load_activity_model(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  try {
    return parse_activity_model(in);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

Automaton load_automaton(const std::string& path,
                         std::shared_ptr<const EventTable> table) {
  std::ifstream in = open_or_throw(path);
  try {
    return parse_automaton(in, std::move(table));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

MarkerCover load_cover(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  try {
    return parse_cover(in);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

ProjectFile load_project(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  ProjectFile p;
  try {
    p = parse_project(in);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  auto resolve = [&](std::string& rel) {
    if (!rel.empty()) rel = (base / rel).string();
  };
  resolve(p.plant);
  for (std::string& spec : p.specs) resolve(spec);
  resolve(p.cover);
  return p;
}

void write_dot(std::ostream& out, const Automaton& a) {
  out << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  if (!a.is_empty()) {
    const EventTable& t = a.events();
    out << "  init [shape=point];\n";
    for (StateId q = 0; q < a.state_count(); ++q) {
      const State& s = a.state(q);
      out << "  \"" << dot_quote(s.name) << "\" [";
      if (s.marked) out << "shape=doublecircle, ";
      out << "label=\"" << dot_quote(s.name);
      if (!s.activity.empty()) {
        out << "\\n(" << dot_quote(s.activity);
        if (s.counter >= 0) out << ',' << s.counter;
        out << ')';
      }
      out << "\"];\n";
    }
    out << "  init -> \"" << dot_quote(a.state(a.initial()).name) << "\";\n";
    for (StateId q = 0; q < a.state_count(); ++q)
      for (const Transition& tr : a.transitions_from(q)) {
        out << "  \"" << dot_quote(a.state(q).name) << "\" -> \""
            << dot_quote(a.state(tr.target).name) << "\" [label=\""
            << dot_quote(t.name(tr.event)) << '"';
        if (t.is_tick(tr.event)) out << ", style=dashed";
        out << "];\n";
      }
  }
  out << "}\n";
}

void write_report(std::ostream& out, const Report& report) {
  for (const auto& [key, value] : report) out << key << ' ' << value << '\n';
}

}  // namespace ticksup
