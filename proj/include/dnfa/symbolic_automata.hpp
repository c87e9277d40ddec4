#pragma once

// Symbolic teacher machines: FA controls, TM controls and their lowering to
// Agent FA form, grand-table composition and observed-successor bookkeeping.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dnfa {

enum class SymbolKind { input, state };

/// Ordered, interned list of symbol tokens. Index order is declaration order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_.at(i); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::optional<std::size_t> find(std::string_view token) const;
  /// Throws std::invalid_argument for unknown tokens.
  std::size_t index_of(std::string_view token) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> tokens_;
};

/// Deterministic control δ: Q×Σ → Q, stored row-major by state then input.
class TransitionTable {
 public:
  TransitionTable() = default;
  TransitionTable(Alphabet states, Alphabet inputs, std::vector<std::size_t> entries);

  /// Builds a table from target state names, one row per state.
  static TransitionTable from_names(std::vector<std::string> states, std::vector<std::string> inputs,
                                    const std::vector<std::vector<std::string>>& rows);

  const Alphabet& states() const { return states_; }
  const Alphabet& inputs() const { return inputs_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_inputs() const { return inputs_.size(); }
  std::span<const std::size_t> entries() const { return entries_; }

  std::size_t next(std::size_t state, std::size_t input) const;

  bool operator==(const TransitionTable&) const = default;

 private:
  Alphabet states_;
  Alphabet inputs_;
  std::vector<std::size_t> entries_;
};

std::size_t step_fa(const TransitionTable& table, std::size_t state, std::size_t input);

/// State trajectory for `word`, excluding the start state.
std::vector<std::size_t> run_fa(const TransitionTable& table, std::size_t start,
                                std::span<const std::size_t> word);

// ---------------------------------------------------------------------------
// Turing machine controls

enum class HeadMove { R, L, S };
inline constexpr std::size_t kNumHeadMoves = 3;

char to_char(HeadMove move);

struct TmAction {
  std::size_t state = 0;
  std::size_t symbol = 0;
  HeadMove move = HeadMove::S;

  bool operator==(const TmAction&) const = default;
};

/// δ: Q×Γ → Q×Γ×D, total, row-major by state then tape symbol.
class TmControl {
 public:
  TmControl(Alphabet states, Alphabet tape_alphabet, std::vector<TmAction> delta);

  const Alphabet& states() const { return states_; }
  const Alphabet& tape_alphabet() const { return tape_; }
  const TmAction& action(std::size_t state, std::size_t symbol) const;

 private:
  Alphabet states_;
  Alphabet tape_;
  std::vector<TmAction> delta_;
};

struct ExtendedState {
  std::size_t state = 0;
  std::size_t symbol = 0;
  HeadMove move = HeadMove::S;

  bool operator==(const ExtendedState&) const = default;
};

/// Agent FA control δ′: (Q×Γ×D)×Γ → Q×Γ×D obtained by lowering a TM control.
class AgentFaControl {
 public:
  AgentFaControl(std::size_t num_states, std::size_t num_symbols, std::vector<std::size_t> entries);

  std::size_t num_extended_states() const { return num_states_ * num_symbols_ * kNumHeadMoves; }
  std::size_t num_inputs() const { return num_symbols_; }
  std::size_t entry_count() const { return entries_.size(); }

  std::size_t index_of(const ExtendedState& s) const;
  ExtendedState extended_state(std::size_t index) const;

  ExtendedState next(const ExtendedState& from, std::size_t input) const;
  std::size_t next(std::size_t from, std::size_t input) const;

  /// Symbolic form with "(q,γ,d)" state tokens, for printing or teaching.
  TransitionTable to_table(const TmControl& tm) const;

 private:
  std::size_t num_states_;
  std::size_t num_symbols_;
  std::vector<std::size_t> entries_;
};

/// δ′((q,γ,d), γ′) = lift(δ(q, γ′)) for every extended state.
AgentFaControl tm_to_agent_fa(const TmControl& tm);

/// Result of running a TM over a finite tape until the head leaves it.
struct TmTrace {
  std::vector<std::size_t> states;  // state after each step
  std::vector<std::size_t> tape;
  bool halted_inside = false;       // step budget exhausted with head on tape
};

/// Minimal tape interpreter; enough for read-only right-moving machines.
TmTrace run_tm(const TmControl& tm, std::size_t start, std::vector<std::size_t> tape,
               std::size_t max_steps);

// ---------------------------------------------------------------------------
// Grand tables

struct GrandTask {
  std::string tag;
  TransitionTable table;
  std::string entry_state;
};

/// Embeds several task controls into one table. Switch input i jumps to task
/// i's entry state from any other task and self-loops inside task i.
TransitionTable compose_grand(std::span<const GrandTask> tasks,
                              std::span<const std::string> switch_inputs);

std::string grand_state_token(std::string_view tag, std::string_view inner);

// ---------------------------------------------------------------------------

/// Observed next-input sets per (state, input) context.
class SuccessorModel {
 public:
  void record(std::size_t state, std::size_t input, std::size_t next_input);
  const std::set<std::size_t>& successors(std::size_t state, std::size_t input) const;
  std::size_t size() const { return successors_.size(); }

 private:
  std::map<std::pair<std::size_t, std::size_t>, std::set<std::size_t>> successors_;
};

SuccessorModel record_successor(SuccessorModel model, std::size_t state, std::size_t input,
                                std::size_t next_input);

}  // namespace dnfa
