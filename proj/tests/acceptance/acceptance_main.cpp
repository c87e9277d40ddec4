// Acceptance checks. Prints one PASS/FAIL line per criterion; exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dnfa/fixtures.hpp"
#include "dnfa/harness.hpp"
#include "dnfa/plasticity.hpp"
#include "dnfa/snapshot.hpp"
#include "reference_runs.hpp"
#include "test_support.hpp"

namespace {

using namespace dnfa;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> decoded_states(const std::vector<FreeRunEntry>& run) {
  std::vector<std::string> out;
  for (const auto& e : run) out.push_back(e.state.value_or("?"));
  return out;
}

Network sweep(const TableFile& f, std::size_t capacity, std::uint64_t seed, std::size_t epochs = 1) {
  Network net({f.grounding->z_dim(), f.grounding->x_dim(), capacity, 1, seed});
  TeachingSchedule s;
  s.epochs = epochs;
  teach_table(net, f.table, *f.grounding, s);
  return net;
}

Network replay_network(std::uint64_t seed, RunReport* report = nullptr) {
  const GroundingMap map = fixtures::task1_grounding();
  Network net({3, 3, 8, 1, seed});
  TeachingSchedule s;
  s.mode = TeachingMode::sequence_replay;
  s.steps = replay_script(map, and_replay_contexts(), 5);
  RunReport r = run_schedule(net, s);
  if (report) *report = std::move(r);
  return net;
}

// Random words checked against the symbolic run.
void check_free_runs(Outcome& o, const Network& net, const TableFile& f, std::size_t count, std::uint64_t seed) {
  testing::Gen gen(seed);
  for (std::size_t i = 0; i < count && o.pass; ++i) {
    const auto word = gen.word(f.table.num_inputs(), 32);
    const std::size_t start = gen.index(f.table.num_states());
    const auto expected = testing::tokens_of(f.table.states(), run_fa(f.table, start, word));
    const auto got = decoded_states(
        run_free(net, *f.grounding, f.table.states()[start], testing::tokens_of(f.table.inputs(), word)));
    if (got != expected) fail(o, "free run diverged on word #" + std::to_string(i));
  }
}

Outcome criterion_fa_emulation() {
  Outcome o;
  const auto t0 = Clock::now();
  const TableFile f = fixtures::build_fixture("task1");
  const Network net = sweep(f, 18, 0);
  const VerificationReport v = verify_error_free(net, f.table, *f.grounding);
  if (v.total_queries != 18 || !v.mismatches.empty()) {
    fail(o, std::to_string(v.total_queries - v.mismatches.size()) + "/" + std::to_string(v.total_queries));
  }
  check_free_runs(o, net, f, 1000, 1);
  const double secs = seconds_since(t0);
  if (secs >= 1.0) fail(o, "took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "18/18, 1000 words, " + std::to_string(secs) + " s";
  return o;
}

Outcome criterion_grand_table() {
  Outcome o;
  const auto t0 = Clock::now();
  const TableFile f = fixtures::build_fixture("grand13");
  const Network net = sweep(f, 40, 0);
  const VerificationReport v = verify_error_free(net, f.table, *f.grounding);
  if (v.total_queries != 40 || !v.mismatches.empty()) {
    fail(o, std::to_string(v.total_queries - v.mismatches.size()) + "/" + std::to_string(v.total_queries));
  }
  const std::string a(fixtures::kAnd);
  const std::vector<std::string> word{"T", a, "s3", "T", "F", "s1", "T", a, "F", "s3", "s3", "T", "s1", "F"};
  const std::size_t start = f.table.states().index_of("(q1,q_0)");
  std::vector<std::size_t> symbols;
  for (const auto& s : word) symbols.push_back(f.table.inputs().index_of(s));
  const auto expected = testing::tokens_of(f.table.states(), run_fa(f.table, start, symbols));
  if (decoded_states(run_free(net, *f.grounding, "(q1,q_0)", word)) != expected) fail(o, "task-switch word");
  check_free_runs(o, net, f, 1000, 2);
  const double secs = seconds_since(t0);
  if (secs >= 1.0) fail(o, "took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "40/40, task-switch trajectories exact, " + std::to_string(secs) + " s";
  return o;
}

Outcome criterion_replay() {
  Outcome o;
  RunReport r;
  const Network net = replay_network(7, &r);
  if (r.recruit_count != 5 || net.initialized_count() != 5) fail(o, "recruited " + std::to_string(r.recruit_count));
  for (std::size_t i = 0; i < 5 && r.steps.size() == 7; ++i) {
    if (r.steps[i].winners != std::vector<std::size_t>{i}) fail(o, "step " + std::to_string(i) + " winner");
  }
  if (r.steps.size() != 7) return fail(o, "step count"), o;
  // Repeated contexts re-fire the fourth and fifth neurons.
  const std::vector<std::pair<std::size_t, std::pair<const char*, const char*>>> tail{{3, {"101", "010"}},
                                                                                      {4, {"011", "100"}}};
  for (std::size_t j = 0; j < 2; ++j) {
    const StepRecord& s = r.steps[5 + j];
    if (s.recruited || s.z_supervised || s.x_supervised) fail(o, "step " + std::to_string(5 + j) + " supervised");
    if (s.winners != std::vector<std::size_t>{tail[j].first}) fail(o, "step " + std::to_string(5 + j) + " winner");
    if (std::abs(s.pre_response_max - 2.0) > 1e-9) fail(o, "pre-response " + std::to_string(s.pre_response_max));
    if (s.z_pred.to_bits() != tail[j].second.first || s.x_pred.to_bits() != tail[j].second.second) {
      fail(o, "prediction at step " + std::to_string(5 + j));
    }
  }
  if (o.pass) o.detail = "5 recruited; neurons 4 and 5 re-fire at 2.0";
  return o;
}

Outcome criterion_hebbian_mean() {
  Outcome o;
  testing::Gen gen(4);
  double worst = 0.0;
  for (int seq = 0; seq < 100; ++seq) {
    const std::size_t zd = gen.range(1, 8), xd = gen.range(1, 8);
    const std::size_t len = gen.range(1, 1000);
    Neuron n = Neuron::blank(zd, xd);
    for (auto& w : n.top_down) w = gen.uniform();
    for (auto& w : n.bottom_up) w = gen.uniform();
    std::vector<long double> top(zd, 0.0L), bottom(xd, 0.0L);
    for (std::size_t t = 0; t < len; ++t) {
      Vector z(zd), x(xd);
      for (auto& c : z) c = gen.uniform(-1.0, 1.0);
      for (auto& c : x) c = gen.uniform(-1.0, 1.0);
      z = normalize(z);
      x = normalize(x);
      for (std::size_t i = 0; i < zd; ++i) top[i] += z[i];
      for (std::size_t i = 0; i < xd; ++i) bottom[i] += x[i];
      hebbian_update(n, z, x, 1.0);
    }
    for (std::size_t i = 0; i < zd; ++i) worst = std::max(worst, std::abs(n.top_down[i] - double(top[i] / len)));
    for (std::size_t i = 0; i < xd; ++i) worst = std::max(worst, std::abs(n.bottom_up[i] - double(bottom[i] / len)));
  }
  std::ostringstream d;
  d << "max deviation " << worst;
  o.detail = d.str();
  if (!(worst <= 1e-12)) fail(o, o.detail);
  return o;
}

void check_rows(Outcome& o, const ProjectionArea& p, const std::string& where) {
  for (std::size_t i = 0; i < p.target_dim(); ++i) {
    if (p.ages[i] == 0) continue;
    double sum = 0.0;
    for (double w : p.weights[i]) {
      if (w < 0.0 || w > 1.0) fail(o, where + ": weight outside [0,1]");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) fail(o, where + ": row sum " + std::to_string(sum));
  }
}

Outcome criterion_projection_rows() {
  Outcome o;
  const TableFile t1 = fixtures::build_fixture("task1");
  const TableFile g = fixtures::build_fixture("grand13");
  std::vector<std::pair<std::string, Network>> runs;
  runs.emplace_back("task1", sweep(t1, 18, 0, 3));
  runs.emplace_back("task1 capacity 10", sweep(t1, 10, 0, 3));
  runs.emplace_back("grand13", sweep(g, 40, 0, 2));
  runs.emplace_back("replay", replay_network(7));
  {
    Network shuffled({5, 3, 40, 1, 9});
    TeachingSchedule s;
    s.epochs = 3;
    s.shuffle = true;
    s.seed = 9;
    teach_table(shuffled, g.table, *g.grounding, s);
    runs.emplace_back("grand13 shuffled", std::move(shuffled));
  }
  {
    Network topk({3, 3, 12, 3, 1});
    teach_table(topk, t1.table, *t1.grounding, {});
    runs.emplace_back("task1 k=3", std::move(topk));
  }
  for (const auto& [name, net] : runs) {
    check_rows(o, net.to_z(), name + " Y->Z");
    check_rows(o, net.to_x(), name + " Y->X");
  }
  if (o.pass) o.detail = std::to_string(runs.size()) + " teaching runs";
  return o;
}

Outcome criterion_oracle_equivalence() {
  Outcome o;
  const TableFile f = fixtures::build_fixture("task1");
  Network net({3, 3, 10, 1, 0});
  const RunReport r = teach_table(net, f.table, *f.grounding, {});
  if (r.exhausted_count == 0) fail(o, "pool never exhausted");
  const auto stored = neuron_contexts(net);
  std::vector<Context> contexts;
  for (const auto& [i, c] : stored) contexts.push_back(c);
  testing::Gen gen(6);
  std::size_t disagreements = 0;
  for (int q = 0; q < 1000; ++q) {
    const BitPattern z = gen.binary(3), x = gen.binary(3);
    const StepOutput out = net.evaluate(z, x);
    const std::size_t expect = stored[oracle_nearest_context(contexts, z.values(), x.values())].first;
    if (out.winners.empty() || out.winners.front() != expect) ++disagreements;
  }
  o.detail = std::to_string(disagreements) + " disagreements in 1000 queries";
  if (disagreements != 0) fail(o, o.detail);
  return o;
}

Outcome criterion_delta_independence() {
  Outcome o;
  testing::Gen gen(8);
  std::size_t checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t nq = gen.range(1, 5), ng = gen.range(1, 4);
    std::vector<std::string> qs, gs;
    for (std::size_t i = 0; i < nq; ++i) qs.push_back("q" + std::to_string(i));
    for (std::size_t i = 0; i < ng; ++i) gs.push_back("g" + std::to_string(i));
    std::vector<TmAction> delta(nq * ng);
    for (auto& a : delta) a = {gen.index(nq), gen.index(ng), static_cast<HeadMove>(gen.index(3))};
    const TmControl tm(Alphabet(qs), Alphabet(gs), delta);
    const AgentFaControl fa = tm_to_agent_fa(tm);
    for (std::size_t e = 0; e < fa.num_extended_states(); ++e) {
      for (std::size_t g2 = 0; g2 < ng; ++g2) {
        const TmAction& a = tm.action(fa.extended_state(e).state, g2);
        ++checked;
        if (fa.next(fa.extended_state(e), g2) != ExtendedState{a.state, a.symbol, a.move}) {
          fail(o, "trial " + std::to_string(trial));
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " transitions";
  return o;
}

Outcome criterion_determinism() {
  Outcome o;
  for (auto name : {"task1", "grand13"}) {
    const TableFile f = fixtures::build_fixture(name);
    const std::size_t cap = f.table.num_states() * f.table.num_inputs();
    const Network a = sweep(f, cap, 11);
    const Network b = sweep(f, cap, 987654321);
    for (std::size_t i = 0; i < cap; ++i) {
      const Neuron& na = a.y_area().neurons[i];
      const Neuron& nb = b.y_area().neurons[i];
      if (na.initialized && (na.top_down != nb.top_down || na.bottom_up != nb.bottom_up)) {
        fail(o, std::string(name) + ": weights of neuron " + std::to_string(i));
      }
    }
    testing::Gen gen(3);
    for (int q = 0; q < 200; ++q) {
      const BitPattern z = gen.binary(f.grounding->z_dim()), x = gen.binary(f.grounding->x_dim());
      const StepOutput pa = a.evaluate(z, x), pb = b.evaluate(z, x);
      if (pa.z_pred != pb.z_pred || pa.x_pred != pb.x_pred) fail(o, std::string(name) + ": predictions");
    }
    if (verification_json(verify_error_free(a, f.table, *f.grounding)) !=
        verification_json(verify_error_free(b, f.table, *f.grounding))) {
      fail(o, std::string(name) + ": verification reports");
    }
    for (const Network* n : {&a, &b}) {
      if (!(snapshot_from_json(nlohmann::ordered_json::parse(snapshot_to_json(*n).dump())) == *n)) {
        fail(o, std::string(name) + ": snapshot round trip");
      }
    }
  }
  if (o.pass) o.detail = "weights, predictions, reports and snapshots identical";
  return o;
}

Outcome criterion_plasticity(const std::string& probe) {
  Outcome o;
  std::string probe_out;
  if (FILE* p = popen(probe.c_str(), "r")) {
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) probe_out.append(buf, n);
    if (pclose(p) != 0) fail(o, "probe exited with an error");
  } else {
    fail(o, "cannot start " + probe);
  }
  if (probe_out.empty() || probe_out != reference_run_snapshots()) fail(o, "maintenance-off runs differ from build without maintenance");

  // Synthetic deviation streams: a steady synapse at beta 1 as the reference,
  // plus a test synapse whose deviation converges to ratio * 1.
  const MaintenanceConfig cfg{true, 1.0, 1.5};
  const std::vector<std::pair<double, SynapseDecision>> cases{
      {0.5, SynapseDecision::grow}, {1.0, SynapseDecision::keep}, {1.8, SynapseDecision::trim}};
  for (const auto& [ratio, want] : cases) {
    SynapseStats test, ref;
    for (std::uint64_t age = 1; age <= 50; ++age) {
      test = update_deviation(test, ratio, 0.0, age);
      ref = update_deviation(ref, 1.0, 0.0, age);
    }
    const SynapseDecision got = synaptogenic_decision(test.beta, ref.beta, cfg.grow_threshold, cfg.trim_threshold);
    if (got != want) fail(o, "ratio " + std::to_string(ratio) + " gave " + to_string(got));
  }
  if (o.pass) o.detail = "bit-identical snapshots; grow/keep/trim at 0.5/1.0/1.8";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string probe = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"error-free FA emulation", criterion_fa_emulation},
      {"grand-table task switching", criterion_grand_table},
      {"replay fixture", criterion_replay},
      {"Hebbian weight equals batch mean", criterion_hebbian_mean},
      {"projection rows normalized", criterion_projection_rows},
      {"oracle equivalence under exhaustion", criterion_oracle_equivalence},
      {"lowered TM control ignores written symbol", criterion_delta_independence},
      {"determinism and seed independence", criterion_determinism},
      {"plasticity safety", [&] { return criterion_plasticity(probe); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " (" << o.detail
              << ")\n";
  }
  return failures == 0 ? 0 : 1;
}
