// Microbenchmarks over the vehicle fixtures plus a size sweep on generated
// instances. Run from anywhere; fixture paths are compiled in.

#include <benchmark/benchmark.h>

#include <string>

#include "ticksup/bounded_time.hpp"
#include "ticksup/control.hpp"
#include "ticksup/io.hpp"
#include "ticksup/operations.hpp"
#include "ticksup/testkit.hpp"
#include "ticksup/ttg.hpp"

using namespace ticksup;

namespace {

std::string fixture(const std::string& name) {
  return std::string(TICKSUP_FIXTURE_DIR) + "/vehicle/" + name;
}

struct Data {
  ActivityModel model;
  Automaton plant;
  Automaton specs;
  Automaton sup;
  Automaton cbtc;
  MarkerCover cover;
};

const Data& data() {
  static const Data d = [] {
    ActivityModel model = load_activity_model(fixture("vehicle.atg"));
    Automaton plant = build_ttg(model);
    Automaton specs =
        product(load_automaton(fixture("safety.aut"), plant.events_ptr()),
                load_automaton(fixture("temporal.aut"), plant.events_ptr()));
    ControlContext ctx(plant);
    Automaton sup = sup_c(trim(product(specs, plant)), ctx);
    MarkerCover cover = load_cover(fixture("vehicle.cov"));
    Automaton cbtc = sup_cbtc(plant, specs, cover);
    return Data{std::move(model), std::move(plant), std::move(specs),
                std::move(sup),   std::move(cbtc),  std::move(cover)};
  }();
  return d;
}

void bm_build_ttg(benchmark::State& state) {
  const Data& d = data();
  for (auto _ : state) {
    Automaton g = build_ttg(d.model);
    benchmark::DoNotOptimize(g);
  }
  state.counters["states"] = static_cast<double>(d.plant.state_count());
}
BENCHMARK(bm_build_ttg);

void bm_product_trim(benchmark::State& state) {
  const Data& d = data();
  for (auto _ : state) {
    Automaton k = trim(product(d.specs, d.plant));
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(bm_product_trim);

void bm_sup_c(benchmark::State& state) {
  const Data& d = data();
  ControlContext ctx(d.plant);
  Automaton k = trim(product(d.specs, d.plant));
  for (auto _ : state) {
    Automaton s = sup_c(k, ctx);
    benchmark::DoNotOptimize(s);
  }
  state.counters["states"] = static_cast<double>(d.sup.state_count());
}
BENCHMARK(bm_sup_c);

void bm_sup_btc_one_class(benchmark::State& state) {
  const Data& d = data();
  const CoverClass& cls = d.cover.require("service");
  for (auto _ : state) {
    Automaton s = sup_btc(d.plant, d.sup, cls);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(bm_sup_btc_one_class);

void bm_sup_cbtc(benchmark::State& state) {
  const Data& d = data();
  for (auto _ : state) {
    Automaton s = sup_cbtc(d.plant, d.specs, d.cover);
    benchmark::DoNotOptimize(s);
  }
  state.counters["states"] = static_cast<double>(d.cbtc.state_count());
}
BENCHMARK(bm_sup_cbtc);

void bm_verify_failing(benchmark::State& state) {
  const Data& d = data();
  for (auto _ : state) {
    Verdict v = verify_bounded_time_nonblocking(d.sup, d.cover);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_verify_failing);

void bm_verify_holding(benchmark::State& state) {
  const Data& d = data();
  for (auto _ : state) {
    Verdict v = verify_bounded_time_nonblocking(d.cbtc, d.cover);
    benchmark::DoNotOptimize(v);
  }
  state.counters["states"] = static_cast<double>(d.cbtc.state_count());
}
BENCHMARK(bm_verify_holding);

// How the verifier scales with generated model size. The argument fixes the
// activity count; everything else stays at the generator defaults.
void bm_verify_generated(benchmark::State& state) {
  InstanceParams p;
  p.seed = 42;
  p.min_activities = static_cast<unsigned>(state.range(0));
  p.max_activities = static_cast<unsigned>(state.range(0));
  RandomInstance inst = random_instance(p);
  for (auto _ : state) {
    Verdict v = verify_bounded_time_nonblocking(inst.ttg, inst.cover);
    benchmark::DoNotOptimize(v);
  }
  state.counters["states"] = static_cast<double>(inst.ttg.state_count());
}
BENCHMARK(bm_verify_generated)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
