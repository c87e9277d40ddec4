#include "dnfa/symbolic_automata.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace dnfa {

namespace {

std::string out_of_range_message(const char* what, std::size_t index, std::size_t size) {
  return std::string(what) + " index " + std::to_string(index) + " out of range [0," +
         std::to_string(size) + ")";
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& t : tokens_) {
    if (t.empty()) throw std::invalid_argument("symbol token must be non-empty");
    if (!seen.insert(t).second) throw std::invalid_argument("duplicate symbol token '" + t + "'");
  }
}

std::optional<std::size_t> Alphabet::find(std::string_view token) const {
  auto it = std::find(tokens_.begin(), tokens_.end(), token);
  if (it == tokens_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - tokens_.begin());
}

std::size_t Alphabet::index_of(std::string_view token) const {
  if (auto i = find(token)) return *i;
  throw std::invalid_argument("unknown symbol '" + std::string(token) + "'");
}

TransitionTable::TransitionTable(Alphabet states, Alphabet inputs, std::vector<std::size_t> entries)
    : states_(std::move(states)), inputs_(std::move(inputs)), entries_(std::move(entries)) {
  if (entries_.size() != states_.size() * inputs_.size()) {
    throw std::invalid_argument("transition table must have |Q|*|Sigma| = " +
                                std::to_string(states_.size() * inputs_.size()) + " entries, got " +
                                std::to_string(entries_.size()));
  }
  for (std::size_t target : entries_) {
    if (target >= states_.size()) {
      throw std::invalid_argument(out_of_range_message("target state", target, states_.size()));
    }
  }
}

TransitionTable TransitionTable::from_names(std::vector<std::string> states,
                                            std::vector<std::string> inputs,
                                            const std::vector<std::vector<std::string>>& rows) {
  Alphabet q(std::move(states));
  Alphabet s(std::move(inputs));
  if (rows.size() != q.size()) {
    throw std::invalid_argument("expected one row per state (" + std::to_string(q.size()) + "), got " +
                                std::to_string(rows.size()));
  }
  std::vector<std::size_t> entries;
  entries.reserve(q.size() * s.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != s.size()) {
      throw std::invalid_argument("row for state '" + q[i] + "' has " + std::to_string(rows[i].size()) +
                                  " entries, expected " + std::to_string(s.size()));
    }
    for (const auto& name : rows[i]) entries.push_back(q.index_of(name));
  }
  return TransitionTable(std::move(q), std::move(s), std::move(entries));
}

std::size_t TransitionTable::next(std::size_t state, std::size_t input) const {
  if (state >= num_states()) throw std::invalid_argument(out_of_range_message("state", state, num_states()));
  if (input >= num_inputs()) throw std::invalid_argument(out_of_range_message("input", input, num_inputs()));
  return entries_[state * num_inputs() + input];
}

std::size_t step_fa(const TransitionTable& table, std::size_t state, std::size_t input) {
  return table.next(state, input);
}

std::vector<std::size_t> run_fa(const TransitionTable& table, std::size_t start,
                                std::span<const std::size_t> word) {
  if (start >= table.num_states()) {
    throw std::invalid_argument(out_of_range_message("state", start, table.num_states()));
  }
  std::vector<std::size_t> trajectory;
  trajectory.reserve(word.size());
  std::size_t q = start;
  for (std::size_t s : word) {
    q = table.next(q, s);
    trajectory.push_back(q);
  }
  return trajectory;
}

// ---------------------------------------------------------------------------

char to_char(HeadMove move) {
  switch (move) {
    case HeadMove::R: return 'R';
    case HeadMove::L: return 'L';
    case HeadMove::S: return 'S';
  }
  return '?';
}

TmControl::TmControl(Alphabet states, Alphabet tape_alphabet, std::vector<TmAction> delta)
    : states_(std::move(states)), tape_(std::move(tape_alphabet)), delta_(std::move(delta)) {
  if (states_.empty() || tape_.empty()) throw std::invalid_argument("TM needs at least one state and symbol");
  if (delta_.size() != states_.size() * tape_.size()) {
    throw std::invalid_argument("TM delta must be total over Q x Gamma");
  }
  for (const auto& a : delta_) {
    if (a.state >= states_.size() || a.symbol >= tape_.size()) {
      throw std::invalid_argument("TM delta target outside declared sets");
    }
  }
}

const TmAction& TmControl::action(std::size_t state, std::size_t symbol) const {
  if (state >= states_.size()) throw std::invalid_argument(out_of_range_message("state", state, states_.size()));
  if (symbol >= tape_.size()) throw std::invalid_argument(out_of_range_message("symbol", symbol, tape_.size()));
  return delta_[state * tape_.size() + symbol];
}

AgentFaControl::AgentFaControl(std::size_t num_states, std::size_t num_symbols,
                               std::vector<std::size_t> entries)
    : num_states_(num_states), num_symbols_(num_symbols), entries_(std::move(entries)) {
  if (entries_.size() != num_extended_states() * num_symbols_) {
    throw std::invalid_argument("agent FA entries must be total over Q' x Gamma");
  }
}

std::size_t AgentFaControl::index_of(const ExtendedState& s) const {
  if (s.state >= num_states_ || s.symbol >= num_symbols_) {
    throw std::invalid_argument("extended state outside Q x Gamma x D");
  }
  return (s.state * num_symbols_ + s.symbol) * kNumHeadMoves + static_cast<std::size_t>(s.move);
}

ExtendedState AgentFaControl::extended_state(std::size_t index) const {
  if (index >= num_extended_states()) {
    throw std::invalid_argument(out_of_range_message("extended state", index, num_extended_states()));
  }
  return ExtendedState{index / (num_symbols_ * kNumHeadMoves), (index / kNumHeadMoves) % num_symbols_,
                       static_cast<HeadMove>(index % kNumHeadMoves)};
}

std::size_t AgentFaControl::next(std::size_t from, std::size_t input) const {
  if (from >= num_extended_states()) {
    throw std::invalid_argument(out_of_range_message("extended state", from, num_extended_states()));
  }
  if (input >= num_symbols_) throw std::invalid_argument(out_of_range_message("input", input, num_symbols_));
  return entries_[from * num_symbols_ + input];
}

ExtendedState AgentFaControl::next(const ExtendedState& from, std::size_t input) const {
  return extended_state(next(index_of(from), input));
}

TransitionTable AgentFaControl::to_table(const TmControl& tm) const {
  std::vector<std::string> names;
  names.reserve(num_extended_states());
  for (std::size_t i = 0; i < num_extended_states(); ++i) {
    const auto e = extended_state(i);
    names.push_back("(" + tm.states()[e.state] + "," + tm.tape_alphabet()[e.symbol] + "," +
                    to_char(e.move) + ")");
  }
  return TransitionTable(Alphabet(std::move(names)), tm.tape_alphabet(), entries_);
}

AgentFaControl tm_to_agent_fa(const TmControl& tm) {
  const std::size_t nq = tm.states().size();
  const std::size_t ng = tm.tape_alphabet().size();
  const std::size_t n_ext = nq * ng * kNumHeadMoves;
  std::vector<std::size_t> entries(n_ext * ng);
  for (std::size_t e = 0; e < n_ext; ++e) {
    // Only the state component of the source is read; γ and d are ignored.
    const std::size_t q = e / (ng * kNumHeadMoves);
    for (std::size_t g = 0; g < ng; ++g) {
      const TmAction& a = tm.action(q, g);
      entries[e * ng + g] = (a.state * ng + a.symbol) * kNumHeadMoves + static_cast<std::size_t>(a.move);
    }
  }
  return AgentFaControl(nq, ng, std::move(entries));
}

TmTrace run_tm(const TmControl& tm, std::size_t start, std::vector<std::size_t> tape,
               std::size_t max_steps) {
  TmTrace trace;
  trace.tape = std::move(tape);
  std::size_t q = start;
  std::size_t head = 0;
  for (std::size_t step = 0; step < max_steps; ++step) {
    if (head >= trace.tape.size()) return trace;
    const TmAction& a = tm.action(q, trace.tape[head]);
    q = a.state;
    trace.tape[head] = a.symbol;
    trace.states.push_back(q);
    if (a.move == HeadMove::R) {
      ++head;
    } else if (a.move == HeadMove::L) {
      if (head == 0) return trace;
      --head;
    }
  }
  trace.halted_inside = head < trace.tape.size();
  return trace;
}

// ---------------------------------------------------------------------------

std::string grand_state_token(std::string_view tag, std::string_view inner) {
  std::string out = "(";
  out += tag;
  out += ',';
  out += inner;
  out += ')';
  return out;
}

TransitionTable compose_grand(std::span<const GrandTask> tasks, std::span<const std::string> switch_inputs) {
  if (tasks.empty()) throw std::invalid_argument("compose_grand needs at least one task");
  if (switch_inputs.size() != tasks.size() && !(tasks.size() == 1 && switch_inputs.empty())) {
    throw std::invalid_argument("need exactly one switch input per task");
  }
  {
    std::unordered_set<std::string_view> seen;
    for (const auto& s : switch_inputs) {
      if (!seen.insert(s).second) throw std::invalid_argument("duplicate switch input '" + s + "'");
    }
    std::unordered_set<std::string_view> tags;
    for (const auto& t : tasks) {
      if (!tags.insert(t.tag).second) throw std::invalid_argument("duplicate task tag '" + t.tag + "'");
    }
  }

  std::vector<std::string> inputs(switch_inputs.begin(), switch_inputs.end());
  const std::size_t first_task_input = inputs.size();
  for (const auto& task : tasks) {
    for (const auto& s : task.table.inputs().tokens()) {
      if (std::find(switch_inputs.begin(), switch_inputs.end(), s) != switch_inputs.end()) {
        throw std::invalid_argument("switch input '" + s + "' is also an input of task '" + task.tag + "'");
      }
      if (std::find(inputs.begin(), inputs.end(), s) == inputs.end()) inputs.push_back(s);
    }
  }

  std::vector<std::string> states;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> entry_states;
  for (const auto& task : tasks) {
    if (task.entry_state.empty()) throw std::invalid_argument("task '" + task.tag + "' has no entry state");
    auto entry = task.table.states().find(task.entry_state);
    if (!entry) {
      throw std::invalid_argument("entry state '" + task.entry_state + "' not in task '" + task.tag + "'");
    }
    offsets.push_back(states.size());
    entry_states.push_back(states.size() + *entry);
    for (const auto& q : task.table.states().tokens()) states.push_back(grand_state_token(task.tag, q));
  }

  const std::size_t n_inputs = inputs.size();
  std::vector<std::size_t> entries;
  entries.reserve(states.size() * n_inputs);
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    const auto& table = tasks[ti].table;
    std::vector<std::size_t> column(n_inputs);
    for (std::size_t s = first_task_input; s < n_inputs; ++s) {
      auto local = table.inputs().find(inputs[s]);
      if (!local) {
        throw std::invalid_argument("task '" + tasks[ti].tag + "' does not define input '" + inputs[s] + "'");
      }
      column[s] = *local;
    }
    for (std::size_t q = 0; q < table.num_states(); ++q) {
      const std::size_t here = offsets[ti] + q;
      for (std::size_t s = 0; s < first_task_input; ++s) {
        entries.push_back(s == ti ? here : entry_states[s]);
      }
      for (std::size_t s = first_task_input; s < n_inputs; ++s) {
        entries.push_back(offsets[ti] + table.next(q, column[s]));
      }
    }
  }
  return TransitionTable(Alphabet(std::move(states)), Alphabet(std::move(inputs)), std::move(entries));
}

// ---------------------------------------------------------------------------

void SuccessorModel::record(std::size_t state, std::size_t input, std::size_t next_input) {
  successors_[{state, input}].insert(next_input);
}

const std::set<std::size_t>& SuccessorModel::successors(std::size_t state, std::size_t input) const {
  static const std::set<std::size_t> kEmpty;
  auto it = successors_.find({state, input});
  return it == successors_.end() ? kEmpty : it->second;
}

SuccessorModel record_successor(SuccessorModel model, std::size_t state, std::size_t input,
                                std::size_t next_input) {
  model.record(state, input, next_input);
  return model;
}

}  // namespace dnfa
