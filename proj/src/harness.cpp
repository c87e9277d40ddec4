#include "dnfa/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "dnfa/fixtures.hpp"

namespace dnfa {

namespace {

StepRecord record_of(std::size_t index, const StepInput& in, const StepOutput& out) {
  StepRecord r;
  r.step = index;
  r.winners = out.winners;
  r.recruited = out.recruited;
  r.pool_exhausted = out.pool_exhausted;
  r.pre_response_max = out.best_pre_response;
  r.z_pred = out.z_pred;
  r.x_pred = out.x_pred;
  r.z_supervised = in.z_supervised();
  r.x_supervised = in.x_supervised();
  if (in.z_next) r.z_correct = out.z_pred == *in.z_next;
  return r;
}

void append(RunReport& report, const StepInput& in, const StepOutput& out) {
  report.steps.push_back(record_of(report.steps.size(), in, out));
  if (out.recruited) ++report.recruit_count;
  if (out.pool_exhausted) ++report.exhausted_count;
}

void run_steps(Network& net, std::span<const ScriptStep> steps, RunReport& report, std::optional<BitPattern>& z_prev,
               std::optional<BitPattern>& x_prev) {
  for (const ScriptStep& s : steps) {
    const auto& z = s.z ? s.z : z_prev;
    const auto& x = s.x ? s.x : x_prev;
    if (!z || !x) throw std::invalid_argument("script step has no context and no previous prediction to chain");
    StepInput in{*z, *x, s.z_next, s.x_next, s.z_mask, s.x_mask, s.learning_rate_gain};
    StepOutput out = net.step(in);
    append(report, in, out);
    z_prev = out.z_pred;
    x_prev = out.x_pred;
  }
}

long double cosine(std::span<const double> a, std::span<const double> b) {
  long double ab = 0.0L, aa = 0.0L, bb = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += static_cast<long double>(a[i]) * b[i];
    aa += static_cast<long double>(a[i]) * a[i];
    bb += static_cast<long double>(b[i]) * b[i];
  }
  if (aa == 0.0L || bb == 0.0L) return 0.0L;
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

}  // namespace

RunReport teach_table(Network& net, const TransitionTable& table, const GroundingMap& map,
                      const TeachingSchedule& schedule) {
  if (schedule.epochs == 0) throw std::invalid_argument("teaching needs at least one epoch");
  if (schedule.mode != TeachingMode::table_sweep) return run_schedule(net, schedule);

  const auto triples = table_to_triples(table, map);
  std::vector<std::size_t> order(triples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(schedule.seed);

  RunReport report;
  for (std::size_t epoch = 0; epoch < schedule.epochs; ++epoch) {
    if (schedule.shuffle) std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      const TrainingTriple& t = triples[i];
      StepInput in{t.z, t.x, t.z_next, std::nullopt, std::nullopt, std::nullopt, 1.0};
      append(report, in, net.step(in));
    }
  }
  return report;
}

RunReport run_schedule(Network& net, const TeachingSchedule& schedule) {
  if (schedule.epochs == 0) throw std::invalid_argument("teaching needs at least one epoch");
  if (schedule.steps.empty()) throw std::invalid_argument("scripted schedules need an explicit step list");
  RunReport report;
  std::optional<BitPattern> z_prev;
  std::optional<BitPattern> x_prev;
  switch (schedule.mode) {
    case TeachingMode::sequence_replay:
      for (std::size_t e = 0; e < schedule.epochs; ++e) run_steps(net, schedule.steps, report, z_prev, x_prev);
      break;
    case TeachingMode::free_run: {
      run_steps(net, schedule.steps, report, z_prev, x_prev);
      const std::vector<ScriptStep> free(schedule.free_steps);
      run_steps(net, free, report, z_prev, x_prev);
      break;
    }
    case TeachingMode::table_sweep:
      throw std::invalid_argument("table_sweep needs a teacher table");
  }
  return report;
}

VerificationReport verify_error_free(const Network& net, const TransitionTable& table, const GroundingMap& map) {
  VerificationReport report;
  for (std::size_t q = 0; q < table.num_states(); ++q) {
    const BitPattern& z = map.state_code(table.states()[q]);
    for (std::size_t s = 0; s < table.num_inputs(); ++s) {
      const BitPattern& x = map.input_code(table.inputs()[s]);
      const BitPattern& expected = map.state_code(table.states()[table.next(q, s)]);
      StepOutput out = net.evaluate(z, x);
      ++report.total_queries;
      if (!(out.z_pred == expected)) {
        report.mismatches.push_back(Mismatch{table.states()[q], table.inputs()[s], z, x, expected, out.z_pred});
      }
    }
  }
  report.recruit_count = net.initialized_count();
  report.agreement_rate =
      report.total_queries == 0
          ? 1.0
          : 1.0 - static_cast<double>(report.mismatches.size()) / static_cast<double>(report.total_queries);
  return report;
}

std::size_t oracle_nearest_context(std::span<const Context> contexts, std::span<const double> z,
                                   std::span<const double> x) {
  if (contexts.empty()) throw std::invalid_argument("oracle needs at least one context");
  std::vector<long double> scores;
  scores.reserve(contexts.size());
  for (const Context& c : contexts) {
    if (c.top.size() != z.size() || c.bottom.size() != x.size()) {
      throw std::invalid_argument("oracle: context dimension mismatch");
    }
    scores.push_back(cosine(c.top, z) + cosine(c.bottom, x));
  }
  const long double best = *std::max_element(scores.begin(), scores.end());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] >= best - static_cast<long double>(kTieTolerance)) return i;
  }
  return 0;  // unreachable
}

std::vector<std::pair<std::size_t, Context>> neuron_contexts(const Network& net) {
  std::vector<std::pair<std::size_t, Context>> out;
  const auto& neurons = net.y_area().neurons;
  for (std::size_t i = 0; i < neurons.size(); ++i) {
    if (neurons[i].initialized) out.emplace_back(i, Context{neurons[i].top_down, neurons[i].bottom_up});
  }
  return out;
}

std::vector<FreeRunEntry> run_free(const Network& net, const GroundingMap& map, std::string_view start,
                                   std::span<const std::string> word) {
  std::vector<FreeRunEntry> trajectory;
  trajectory.reserve(word.size());
  BitPattern z = map.state_code(start);
  for (const std::string& symbol : word) {
    StepOutput out = net.evaluate(z, map.input_code(symbol));
    FreeRunEntry entry;
    entry.z_pred = out.z_pred;
    entry.x_pred = out.x_pred;
    if (out.z_pred.is_zero()) {
      entry.error = "no state predicted";
    } else {
      try {
        Decoded d = decode_nearest(map, out.z_pred, SymbolKind::state);
        entry.state = d.symbol;
        entry.similarity = d.similarity;
      } catch (const AmbiguousDecode& e) {
        entry.error = e.what();
      }
    }
    trajectory.push_back(std::move(entry));
    z = out.z_pred;
  }
  return trajectory;
}

std::vector<ScriptStep> replay_script(const GroundingMap& map,
                                      std::span<const std::pair<std::string, std::string>> contexts,
                                      std::size_t supervised) {
  if (supervised >= contexts.size()) throw std::invalid_argument("supervised steps need a following context");
  std::vector<ScriptStep> steps;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    ScriptStep s;
    if (i <= supervised) {
      s.z = map.state_code(contexts[i].first);
      s.x = map.input_code(contexts[i].second);
    }
    if (i < supervised) {
      s.z_next = map.state_code(contexts[i + 1].first);
      s.x_next = map.input_code(contexts[i + 1].second);
    }
    steps.push_back(std::move(s));
  }
  return steps;
}

SuccessorModel successors_from(const GroundingMap& map,
                               std::span<const std::pair<std::string, std::string>> contexts) {
  SuccessorModel model;
  for (std::size_t i = 0; i + 1 < contexts.size(); ++i) {
    model = record_successor(std::move(model), map.states().index_of(contexts[i].first),
                             map.inputs().index_of(contexts[i].second),
                             map.inputs().index_of(contexts[i + 1].second));
  }
  return model;
}

std::vector<std::pair<std::string, std::string>> and_replay_contexts() {
  const std::string a(fixtures::kAnd);
  return {{"q_0", "T"},     {"q_T", a},       {"q_T" + a, "F"}, {"q_F", a},
          {"q_F" + a, "T"}, {"q_F", a},       {"q_F" + a, "T"}};
}

// ---------------------------------------------------------------------------

void write_metrics_csv(const RunReport& report, std::ostream& out) {
  out << "step,winner,recruited,preResponseMax,zCorrect\n";
  for (const StepRecord& r : report.steps) {
    out << r.step << ',';
    for (std::size_t i = 0; i < r.winners.size(); ++i) out << (i ? ";" : "") << r.winners[i];
    std::ostringstream pre;
    pre << std::setprecision(17) << r.pre_response_max;
    out << ',' << (r.recruited ? 1 : 0) << ',' << pre.str() << ',';
    if (r.z_correct) out << (*r.z_correct ? 1 : 0);
    out << '\n';
  }
}

std::string metrics_summary_json(const RunReport& report) {
  std::size_t supervised = 0;
  std::size_t correct = 0;
  for (const StepRecord& r : report.steps) {
    if (r.z_correct) {
      ++supervised;
      if (*r.z_correct) ++correct;
    }
  }
  nlohmann::ordered_json j{{"steps", report.steps.size()},
                           {"recruitCount", report.recruit_count},
                           {"exhaustedCount", report.exhausted_count}};
  if (supervised == 0) {
    j["agreementRate"] = nullptr;
  } else {
    j["agreementRate"] = static_cast<double>(correct) / static_cast<double>(supervised);
  }
  return j.dump(2) + "\n";
}

std::string verification_json(const VerificationReport& report) {
  nlohmann::ordered_json mismatches = nlohmann::ordered_json::array();
  for (const Mismatch& m : report.mismatches) {
    mismatches.push_back({{"state", m.state},
                          {"input", m.input},
                          {"z", m.z.to_bits()},
                          {"x", m.x.to_bits()},
                          {"expected", m.expected.to_bits()},
                          {"got", m.got.to_bits()}});
  }
  nlohmann::ordered_json j{{"totalQueries", report.total_queries},
                           {"mismatchCount", report.mismatches.size()},
                           {"recruitCount", report.recruit_count},
                           {"agreementRate", report.agreement_rate},
                           {"mismatches", std::move(mismatches)}};
  return j.dump(2) + "\n";
}

}  // namespace dnfa
