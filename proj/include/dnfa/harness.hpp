#pragma once

// Teacher-learner loop, brute-force oracles and verification reports.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dnfa/network.hpp"
#include "dnfa/pattern_codec.hpp"
#include "dnfa/symbolic_automata.hpp"

namespace dnfa {

enum class TeachingMode { table_sweep, sequence_replay, free_run };

/// One scripted step. A missing z or x is taken from the previous step's
/// prediction, which is how free-running chains are expressed.
struct ScriptStep {
  std::optional<BitPattern> z;
  std::optional<BitPattern> x;
  std::optional<BitPattern> z_next;
  std::optional<BitPattern> x_next;
  std::optional<AttentionMask> z_mask;
  std::optional<AttentionMask> x_mask;
  double learning_rate_gain = 1.0;
};

struct TeachingSchedule {
  TeachingMode mode = TeachingMode::table_sweep;
  std::size_t epochs = 1;
  std::vector<ScriptStep> steps;  // sequence_replay and free_run
  bool shuffle = false;           // table_sweep order; row-major when false
  std::uint64_t seed = 0;
  std::size_t free_steps = 0;     // free_run: steps after the scripted start
};

struct StepRecord {
  std::size_t step = 0;
  std::vector<std::size_t> winners;
  bool recruited = false;
  bool pool_exhausted = false;
  double pre_response_max = 0.0;
  BitPattern z_pred;
  BitPattern x_pred;
  bool z_supervised = false;
  bool x_supervised = false;
  std::optional<bool> z_correct;  // prediction vs supervision, when supervised
};

struct RunReport {
  std::vector<StepRecord> steps;
  std::size_t recruit_count = 0;
  std::size_t exhausted_count = 0;
};

struct Mismatch {
  std::string state;
  std::string input;
  BitPattern z;
  BitPattern x;
  BitPattern expected;
  BitPattern got;
};

struct VerificationReport {
  std::size_t total_queries = 0;
  std::vector<Mismatch> mismatches;
  std::size_t recruit_count = 0;
  double agreement_rate = 0.0;
};

RunReport teach_table(Network& net, const TransitionTable& table, const GroundingMap& map,
                      const TeachingSchedule& schedule);

/// Runs scripted steps (sequence_replay / free_run) without a teacher table.
RunReport run_schedule(Network& net, const TeachingSchedule& schedule);

/// Queries every (state, input) pair without supervision or learning.
VerificationReport verify_error_free(const Network& net, const TransitionTable& table, const GroundingMap& map);

struct Context {
  Vector top;
  Vector bottom;
};

/// Brute-force argmax of the two-part cosine match over stored contexts,
/// computed in extended precision; ties (within 1e-12) go to the lowest index.
std::size_t oracle_nearest_context(std::span<const Context> contexts, std::span<const double> z,
                                   std::span<const double> x);

/// Current weights of the initialized Y neurons, paired with their indices.
std::vector<std::pair<std::size_t, Context>> neuron_contexts(const Network& net);

struct FreeRunEntry {
  std::optional<std::string> state;  // decoded state, absent on decode error
  std::string error;
  double similarity = 0.0;
  BitPattern z_pred;
  BitPattern x_pred;
};

/// Chains predictions from `start` over `word` without supervision.
std::vector<FreeRunEntry> run_free(const Network& net, const GroundingMap& map, std::string_view start,
                                   std::span<const std::string> word);

/// Builds a replay script for a symbolic teacher sequence of (state, input)
/// contexts. The first `supervised` steps carry the next context as their
/// supervision; the next step is presented as given and the rest free-run.
std::vector<ScriptStep> replay_script(const GroundingMap& map,
                                      std::span<const std::pair<std::string, std::string>> contexts,
                                      std::size_t supervised);

/// Successor sets observed along a symbolic teacher sequence.
SuccessorModel successors_from(const GroundingMap& map, std::span<const std::pair<std::string, std::string>> contexts);

/// The logic-AND teacher sequence T∧F∧T∧T replayed with a repeated (q_F, ∧)
/// context: seven steps, five supervised.
std::vector<std::pair<std::string, std::string>> and_replay_contexts();

// Metrics

void write_metrics_csv(const RunReport& report, std::ostream& out);
std::string metrics_summary_json(const RunReport& report);
std::string verification_json(const VerificationReport& report);

}  // namespace dnfa
