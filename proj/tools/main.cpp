// Command-line front end: compile activity models, run the controllability
// and deadline analyses, synthesize supervisors, and cross-check the
// algorithms against their brute-force oracles. Exit codes: 0 when the
// requested operation succeeds (and any checked property holds), 1 when a
// checked property fails or the oracles disagree, 2 on usage, file, or
// input errors.

#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ticksup/bounded_time.hpp"
#include "ticksup/control.hpp"
#include "ticksup/io.hpp"
#include "ticksup/operations.hpp"
#include "ticksup/testkit.hpp"
#include "ticksup/ttg.hpp"

using namespace ticksup;

namespace {

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Model files compile to their tick automaton; automaton files load as-is.
Automaton load_plant(const std::string& path) {
  if (has_suffix(path, ".atg")) return build_ttg(load_activity_model(path));
  return load_automaton(path);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

struct OutputOpts {
  std::string out;
  std::string dot;
  std::string report;
};

void add_output_opts(CLI::App* cmd, OutputOpts& o, bool with_automaton) {
  if (with_automaton) {
    cmd->add_option("-o,--output", o.out,
                    "write the resulting automaton to this file");
    cmd->add_option("--dot", o.dot, "write a Graphviz view to this file");
  }
  cmd->add_option("--report", o.report,
                  "write a key-value report to this file");
}

void deliver(const OutputOpts& o, const Automaton* a, const Report& report) {
  if (a != nullptr && !o.out.empty()) {
    std::ofstream f = open_out(o.out);
    write_automaton(f, *a);
  }
  if (a != nullptr && !o.dot.empty()) {
    std::ofstream f = open_out(o.dot);
    write_dot(f, *a);
  }
  if (!o.report.empty()) {
    std::ofstream f = open_out(o.report);
    write_report(f, report);
  }
}

void kv(Report& r, const std::string& key, const std::string& value) {
  r.emplace_back(key, value);
}
void kv(Report& r, const std::string& key, std::size_t value) {
  r.emplace_back(key, std::to_string(value));
}
void kv(Report& r, const std::string& key, bool value) {
  r.emplace_back(key, value ? "yes" : "no");
}

void describe(const Automaton& a, const std::string& label, Report& r) {
  std::cout << label << ": " << a.state_count() << " states, "
            << a.transition_count() << " transitions\n";
  kv(r, label + ".states", a.state_count());
  kv(r, label + ".transitions", a.transition_count());
}

WorklistOrder to_order(const std::string& name) {
  return name == "fifo" ? WorklistOrder::fifo : WorklistOrder::lifo;
}

void btc_stats_out(const BtcStats& st, const std::string& prefix,
                   Report& r) {
  std::cout << "  class '" << st.class_name << "' (budget " << st.budget
            << "): " << st.budget_cut_transitions << " ticks cut, "
            << st.visited_counter_states << " of at most "
            << st.base_states * (st.budget + 1) << " counter states"
            << (st.emptied ? ", emptied" : "") << "\n";
  kv(r, prefix + ".budget", static_cast<std::size_t>(st.budget));
  kv(r, prefix + ".base_states", st.base_states);
  kv(r, prefix + ".visited_counter_states", st.visited_counter_states);
  kv(r, prefix + ".budget_cut_transitions", st.budget_cut_transitions);
  kv(r, prefix + ".emptied", st.emptied);
}

int cmd_build_ttg(const std::string& in, const OutputOpts& o) {
  ActivityModel model = load_activity_model(in);
  Automaton g = build_ttg(model);
  Report r;
  kv(r, "command", std::string("build-ttg"));
  kv(r, "input", in);
  describe(g, "ttg", r);
  Verdict alf = check_activity_loop_free(g);
  kv(r, "activity_loop_free", alf.holds);
  if (!alf.holds)
    std::cout << "warning: not activity-loop-free: " << alf.detail << "\n"
              << "  cycle: " << format_string(g.events(), alf.witness)
              << "\n";
  deliver(o, &g, r);
  return 0;
}

int cmd_verify(const std::string& in, const std::string& cover_path,
               const OutputOpts& o) {
  Automaton a = load_plant(in);
  MarkerCover cover = load_cover(cover_path);
  check_cover(a, cover);
  Verdict v = verify_bounded_time_nonblocking(a, cover);
  Report r;
  kv(r, "command", std::string("verify"));
  kv(r, "input", in);
  kv(r, "holds", v.holds);
  if (v.holds) {
    std::cout << "bounded-time nonblocking: yes\n";
  } else {
    std::cout << "bounded-time nonblocking: NO\n"
              << "  " << v.detail << "\n"
              << "  witness: " << format_string(a.events(), v.witness)
              << "\n";
    kv(r, "code", std::string(verdict_code_name(v.code)));
    kv(r, "anchor", a.state(v.anchor).name);
    kv(r, "witness", format_string(a.events(), v.witness));
    kv(r, "detail", v.detail);
  }
  deliver(o, nullptr, r);
  return v.holds ? 0 : 1;
}

int cmd_supc(const std::string& plant_path,
             const std::vector<std::string>& spec_paths,
             const OutputOpts& o) {
  Automaton g = load_plant(plant_path);
  ControlContext ctx(g);
  Automaton e = universe(g.events_ptr());
  for (const std::string& p : spec_paths)
    e = product(e, load_automaton(p, g.events_ptr()));
  SupCStats st;
  Automaton s = sup_c(trim(product(e, g)), ctx, &st);
  Report r;
  kv(r, "command", std::string("supc"));
  kv(r, "plant", plant_path);
  describe(s, "supervisor", r);
  kv(r, "iterations", st.iterations);
  kv(r, "states_removed", st.states_removed);
  kv(r, "empty", s.is_empty());
  if (s.is_empty()) std::cout << "nothing controllable remains\n";
  deliver(o, &s, r);
  return 0;
}

int cmd_supbtc(const std::string& plant_path, const std::string& k_path,
               const std::string& cover_path, const std::string& cls_name,
               const std::string& worklist, const OutputOpts& o) {
  Automaton g = load_plant(plant_path);
  Automaton k = load_automaton(k_path, g.events_ptr());
  MarkerCover cover = load_cover(cover_path);
  WorklistOrder order = to_order(worklist);
  Report r;
  kv(r, "command", std::string("supbtc"));
  kv(r, "plant", plant_path);
  kv(r, "input", k_path);
  Automaton cur = std::move(k);
  if (!cls_name.empty()) {
    BtcStats st;
    cur = sup_btc(g, cur, cover.require(cls_name), order, &st);
    std::cout << "pruned for one class:\n";
    btc_stats_out(st, "class." + cls_name, r);
  } else {
    check_cover(g, cover);
    std::cout << "pruned for all " << cover.classes.size() << " classes:\n";
    for (const CoverClass& cls : cover.classes) {
      BtcStats st;
      cur = sup_btc(g, cur, cls, order, &st);
      btc_stats_out(st, "class." + cls.name, r);
    }
  }
  describe(cur, "result", r);
  kv(r, "empty", cur.is_empty());
  deliver(o, &cur, r);
  return 0;
}

int cmd_synthesize(const std::string& project_path,
                   const std::string& worklist, const OutputOpts& o) {
  ProjectFile proj = load_project(project_path);
  Automaton g = load_plant(proj.plant);
  Automaton e = universe(g.events_ptr());
  for (const std::string& p : proj.specs)
    e = product(e, load_automaton(p, g.events_ptr()));
  if (proj.cover.empty())
    throw Error("synthesis needs a cover file in the project");
  MarkerCover cover = load_cover(proj.cover);
  WorklistOrder order =
      worklist.empty() ? proj.order : to_order(worklist);

  SynthesisReport rep;
  Automaton s = sup_cbtc(g, e, cover, order, &rep);

  Report r;
  kv(r, "command", std::string("synthesize"));
  kv(r, "project", project_path);
  std::cout << "synthesis finished in " << rep.passes << " pass"
            << (rep.passes == 1 ? "" : "es") << " (bound "
            << rep.pass_bound << ")\n";
  for (std::size_t i = 0; i < rep.pass_log.size(); ++i) {
    const SynthesisPass& pass = rep.pass_log[i];
    std::cout << " pass " << i + 1 << ":\n";
    std::string prefix = "pass" + std::to_string(i + 1);
    for (const BtcStats& st : pass.classes)
      btc_stats_out(st, prefix + ".class." + st.class_name, r);
    std::cout << "  controllable core: " << pass.supc.states_removed
              << " states removed in " << pass.supc.iterations
              << " rounds, " << pass.states_after << " states left\n";
    kv(r, prefix + ".supc.states_removed", pass.supc.states_removed);
    kv(r, prefix + ".supc.iterations", pass.supc.iterations);
    kv(r, prefix + ".states_after", pass.states_after);
  }
  kv(r, "passes", rep.passes);
  kv(r, "pass_bound", rep.pass_bound);
  describe(s, "supervisor", r);
  kv(r, "empty", rep.empty_result);
  kv(r, "controllable", rep.controllable);
  kv(r, "bounded_time", rep.bounded_time);
  std::cout << (rep.empty_result
                    ? "result: empty (no supervisor meets the deadlines)\n"
                    : "result: controllable and bounded-time nonblocking\n");
  deliver(o, &s, r);
  return 0;
}

// Largest depth not above `target` at which the closed language still holds
// at most `cap` strings.
std::size_t affordable_depth(const Automaton& a, std::size_t target,
                             std::size_t cap) {
  if (a.is_empty()) return target;
  std::vector<std::size_t> paths(a.state_count(), 0);
  paths[a.initial()] = 1;
  std::size_t total = 1, depth = 0;
  while (depth < target) {
    std::vector<std::size_t> next(a.state_count(), 0);
    std::size_t layer = 0;
    for (StateId q = 0; q < a.state_count(); ++q) {
      if (paths[q] == 0) continue;
      for (const Transition& t : a.transitions_from(q)) {
        next[t.target] += paths[q];
        layer += paths[q];
      }
    }
    if (total + layer > cap || layer == 0) break;
    total += layer;
    paths = std::move(next);
    ++depth;
  }
  return depth;
}

std::string blamed_class(const std::string& detail) {
  std::size_t open = detail.find('\'');
  if (open == std::string::npos) return "";
  std::size_t close = detail.find('\'', open + 1);
  if (close == std::string::npos) return "";
  return detail.substr(open + 1, close - open - 1);
}

int cmd_oracle_check(std::size_t instances, std::uint64_t seed,
                     unsigned max_activities, unsigned max_budget,
                     const OutputOpts& o) {
  std::size_t held = 0, failed = 0, strings = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    InstanceParams p;
    p.seed = seed + i;
    p.max_activities = max_activities;
    p.max_budget = max_budget;
    RandomInstance inst = random_instance(p);

    Verdict ours = verify_bounded_time_nonblocking(inst.ttg, inst.cover);
    Verdict theirs = btc_oracle(inst.ttg, inst.cover);
    if (ours.holds != theirs.holds ||
        (!ours.holds &&
         blamed_class(ours.detail) != blamed_class(theirs.detail))) {
      std::cout << "DISAGREEMENT at seed " << p.seed
                << ": verifier says " << (ours.holds ? "holds" : "fails")
                << " (" << ours.detail << "), oracle says "
                << (theirs.holds ? "holds" : "fails") << " ("
                << theirs.detail << ")\n";
      return 1;
    }
    ++(ours.holds ? held : failed);

    Automaton k = trim(product(inst.spec, inst.ttg));
    const CoverClass& cls = inst.cover.classes.front();
    Automaton pruned = sup_btc(inst.ttg, k, cls);
    std::size_t depth = affordable_depth(k, 10, 10000);
    auto expected = supremal_membership_oracle(inst.ttg, k, cls, depth);
    auto got = enumerate_closure_strings(pruned, depth);
    if (expected != got) {
      std::cout << "DISAGREEMENT at seed " << p.seed
                << ": membership oracle keeps " << expected.size()
                << " strings at depth " << depth
                << ", the pruned closure holds " << got.size() << "\n";
      return 1;
    }
    strings += expected.size();
  }
  std::cout << "oracles agree on " << instances << " instances (" << held
            << " hold, " << failed << " fail), " << strings
            << " strings compared\n";
  Report r;
  kv(r, "command", std::string("oracle-check"));
  kv(r, "instances", instances);
  kv(r, "verdicts_held", held);
  kv(r, "verdicts_failed", failed);
  kv(r, "strings_compared", strings);
  deliver(o, nullptr, r);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthesis and verification for timed discrete-event "
               "systems with completion deadlines"};
  app.require_subcommand(1);

  std::string in, cover_path, k_path, cls_name, worklist, project_path;
  std::vector<std::string> spec_paths;
  OutputOpts o;
  std::size_t instances = 100;
  std::uint64_t seed = 1;
  unsigned max_activities = 6, max_budget = 4;

  CLI::App* build = app.add_subcommand(
      "build-ttg", "compile an activity model to its tick automaton");
  build->add_option("model", in, "activity model (.atg)")->required();
  add_output_opts(build, o, true);

  CLI::App* verify = app.add_subcommand(
      "verify",
      "check that every completion deadline is always kept");
  verify->add_option("automaton", in, "automaton (.aut) or model (.atg)")
      ->required();
  verify->add_option("cover", cover_path, "marker cover (.cov)")->required();
  add_output_opts(verify, o, false);

  CLI::App* supc = app.add_subcommand(
      "supc", "supremal controllable sublanguage under the given specs");
  supc->add_option("plant", in, "plant (.atg or .aut)")->required();
  supc->add_option("specs", spec_paths, "spec automata (.aut)");
  add_output_opts(supc, o, true);

  CLI::App* supbtc = app.add_subcommand(
      "supbtc", "prune a sublanguage to its budget-keeping core");
  supbtc->add_option("plant", in, "plant (.atg or .aut)")->required();
  supbtc->add_option("input", k_path, "sublanguage automaton (.aut)")
      ->required();
  supbtc->add_option("cover", cover_path, "marker cover (.cov)")->required();
  supbtc->add_option("--class", cls_name,
                     "prune for this class only (default: all, in order)");
  supbtc->add_option("--worklist", worklist, "expansion order")
      ->check(CLI::IsMember({"lifo", "fifo"}));
  add_output_opts(supbtc, o, true);

  CLI::App* synth = app.add_subcommand(
      "synthesize",
      "supremal controllable and deadline-keeping supervisor for a project");
  synth->add_option("project", project_path, "project file (.proj)")
      ->required();
  synth->add_option("--worklist", worklist,
                    "expansion order (overrides the project option)")
      ->check(CLI::IsMember({"lifo", "fifo"}));
  add_output_opts(synth, o, true);

  CLI::App* oracle = app.add_subcommand(
      "oracle-check",
      "cross-check the analyses against brute-force oracles");
  oracle->add_option("--instances", instances, "number of random instances");
  oracle->add_option("--seed", seed, "first seed");
  oracle->add_option("--max-activities", max_activities,
                     "largest model size to draw");
  oracle->add_option("--max-budget", max_budget, "largest budget to draw");
  add_output_opts(oracle, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build_ttg(in, o);
    if (verify->parsed()) return cmd_verify(in, cover_path, o);
    if (supc->parsed()) return cmd_supc(in, spec_paths, o);
    if (supbtc->parsed())
      return cmd_supbtc(in, k_path, cover_path, cls_name, worklist, o);
    if (synth->parsed()) return cmd_synthesize(project_path, worklist, o);
    if (oracle->parsed())
      return cmd_oracle_check(instances, seed, max_activities, max_budget,
                              o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
