#include "dnfa/pattern_codec.hpp"

#include <algorithm>
#include <cmath>

#include "dnfa/vector_math.hpp"

namespace dnfa {

BitPattern::BitPattern(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("pattern components must lie in [0,1]");
  }
}

BitPattern BitPattern::zeros(std::size_t dim) { return BitPattern(std::vector<double>(dim, 0.0)); }

BitPattern BitPattern::from_bits(std::string_view bits) {
  if (bits.empty()) throw std::invalid_argument("empty bit string");
  std::vector<double> values;
  values.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may only contain 0 and 1: '" + std::string(bits) + "'");
    values.push_back(c == '1' ? 1.0 : 0.0);
  }
  return BitPattern(std::move(values));
}

std::string BitPattern::to_bits() const {
  std::string out;
  out.reserve(values_.size());
  for (double v : values_) out.push_back(v > 0.5 ? '1' : '0');
  return out;
}

bool BitPattern::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

AttentionMask::AttentionMask(std::vector<bool> bits) : bits_(std::move(bits)) {
  if (std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; })) {
    throw std::invalid_argument("attention mask must attend at least one component");
  }
}

AttentionMask AttentionMask::from_bits(std::string_view bits) {
  std::vector<bool> out;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("mask may only contain 0 and 1");
    out.push_back(c == '1');
  }
  return AttentionMask(std::move(out));
}

AttentionMask AttentionMask::all(std::size_t dim) { return AttentionMask(std::vector<bool>(dim, true)); }

BitPattern apply_mask(const BitPattern& p, const AttentionMask& m) {
  if (p.dim() != m.dim()) {
    throw std::invalid_argument("mask dimension " + std::to_string(m.dim()) + " does not match pattern dimension " +
                                std::to_string(p.dim()));
  }
  std::vector<double> out(p.values().begin(), p.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!m[i]) out[i] = 0.0;
  }
  return BitPattern(std::move(out));
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

std::size_t check_codes(const Alphabet& symbols, std::span<const BitPattern> codes, const char* what) {
  if (symbols.size() != codes.size()) {
    throw std::invalid_argument(std::string(what) + ": need one code per symbol");
  }
  if (codes.empty()) return 0;
  const std::size_t dim = codes.front().dim();
  if (dim == 0) throw std::invalid_argument(std::string(what) + ": code dimension must be positive");
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i].dim() != dim) {
      throw std::invalid_argument(std::string(what) + ": code for '" + symbols[i] + "' has dimension " +
                                  std::to_string(codes[i].dim()) + ", expected " + std::to_string(dim));
    }
    if (codes[i].is_zero()) {
      throw std::invalid_argument(std::string(what) + ": code for '" + symbols[i] + "' is all-zero");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (codes[i] == codes[j]) {
        throw std::invalid_argument(std::string(what) + ": '" + symbols[i] + "' and '" + symbols[j] +
                                    "' share a code");
      }
    }
  }
  return dim;
}

}  // namespace

AmbiguousDecode::AmbiguousDecode(std::vector<std::string> tied, double similarity)
    : std::runtime_error("ambiguous decode between: " + join(tied)), tied_(std::move(tied)),
      similarity_(similarity) {}

GroundingMap::GroundingMap(Alphabet states, std::vector<BitPattern> state_codes, Alphabet inputs,
                           std::vector<BitPattern> input_codes)
    : states_(std::move(states)), state_codes_(std::move(state_codes)), inputs_(std::move(inputs)),
      input_codes_(std::move(input_codes)) {
  z_dim_ = check_codes(states_, state_codes_, "state codes");
  x_dim_ = check_codes(inputs_, input_codes_, "input codes");
}

GroundingMap GroundingMap::for_table(const TransitionTable& table,
                                     const std::vector<std::pair<std::string, std::string>>& codes) {
  auto lookup = [&](const std::string& token) {
    auto it = std::find_if(codes.begin(), codes.end(), [&](const auto& kv) { return kv.first == token; });
    if (it == codes.end()) throw std::invalid_argument("missing pattern code for symbol '" + token + "'");
    return BitPattern::from_bits(it->second);
  };
  std::vector<BitPattern> z;
  for (const auto& q : table.states().tokens()) z.push_back(lookup(q));
  std::vector<BitPattern> x;
  for (const auto& s : table.inputs().tokens()) x.push_back(lookup(s));
  return GroundingMap(table.states(), std::move(z), table.inputs(), std::move(x));
}

const BitPattern& GroundingMap::state_code(std::string_view token) const {
  return state_codes_[states_.index_of(token)];
}

const BitPattern& GroundingMap::input_code(std::string_view token) const {
  return input_codes_[inputs_.index_of(token)];
}

const BitPattern& encode_state(const GroundingMap& map, std::string_view state) { return map.state_code(state); }
const BitPattern& encode_input(const GroundingMap& map, std::string_view input) { return map.input_code(input); }

Decoded decode_nearest(const GroundingMap& map, const BitPattern& p, SymbolKind kind) {
  const bool is_state = kind == SymbolKind::state;
  const Alphabet& symbols = is_state ? map.states() : map.inputs();
  const auto codes = is_state ? map.state_codes() : map.input_codes();
  if (codes.empty()) throw std::invalid_argument("grounding map has no codes of the requested kind");
  if (p.dim() != codes.front().dim()) throw std::invalid_argument("pattern dimension does not match grounding map");
  if (p.is_zero()) throw std::invalid_argument("cannot decode the zero pattern");

  const Vector query = normalize(p.values());
  std::vector<double> sims(codes.size());
  double best = -2.0;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    sims[i] = dot(normalize(codes[i].values()), query);
    best = std::max(best, sims[i]);
  }
  std::vector<std::string> tied;
  std::size_t winner = 0;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (sims[i] >= best - kTieTolerance) {
      if (tied.empty()) winner = i;
      tied.push_back(symbols[i]);
    }
  }
  if (tied.size() > 1) throw AmbiguousDecode(std::move(tied), best);
  // Exact codes decode with similarity exactly 1.
  const double similarity = codes[winner] == p ? 1.0 : sims[winner];
  return Decoded{symbols[winner], similarity};
}

std::vector<TrainingTriple> table_to_triples(const TransitionTable& table, const GroundingMap& map) {
  std::vector<TrainingTriple> triples;
  triples.reserve(table.num_states() * table.num_inputs());
  for (std::size_t q = 0; q < table.num_states(); ++q) {
    const BitPattern& z = map.state_code(table.states()[q]);
    for (std::size_t s = 0; s < table.num_inputs(); ++s) {
      triples.push_back(TrainingTriple{z, map.input_code(table.inputs()[s]),
                                       map.state_code(table.states()[table.next(q, s)])});
    }
  }
  return triples;
}

}  // namespace dnfa
