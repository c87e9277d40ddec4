#pragma once

// Grounding of symbols as fixed-dimension patterns, attention masks and the
// table-to-pattern conversion used for teaching.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dnfa/symbolic_automata.hpp"

namespace dnfa {

/// Real-valued pattern with components in [0,1]; binary in every fixture.
class BitPattern {
 public:
  BitPattern() = default;
  explicit BitPattern(std::vector<double> values);
  static BitPattern zeros(std::size_t dim);

  /// Big-endian text: "01010" -> [0,1,0,1,0].
  static BitPattern from_bits(std::string_view bits);
  /// Components above 0.5 print as '1'.
  std::string to_bits() const;

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  bool is_zero() const;

  bool operator==(const BitPattern&) const = default;

 private:
  std::vector<double> values_;
};

class AttentionMask {
 public:
  explicit AttentionMask(std::vector<bool> bits);
  static AttentionMask from_bits(std::string_view bits);
  static AttentionMask all(std::size_t dim);

  std::size_t dim() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<bool>& bits() const { return bits_; }

  bool operator==(const AttentionMask&) const = default;

 private:
  std::vector<bool> bits_;
};

/// Zeroes the unattended components.
BitPattern apply_mask(const BitPattern& p, const AttentionMask& m);

class AmbiguousDecode : public std::runtime_error {
 public:
  AmbiguousDecode(std::vector<std::string> tied, double similarity);
  const std::vector<std::string>& tied() const { return tied_; }
  double similarity() const { return similarity_; }

 private:
  std::vector<std::string> tied_;
  double similarity_;
};

struct Decoded {
  std::string symbol;
  double similarity = 0.0;
};

/// Symbol <-> pattern bijection for the states (Z) and inputs (X) of a table.
class GroundingMap {
 public:
  GroundingMap(Alphabet states, std::vector<BitPattern> state_codes, Alphabet inputs,
               std::vector<BitPattern> input_codes);

  /// Looks codes up by token; every table symbol must appear in `codes`.
  static GroundingMap for_table(const TransitionTable& table,
                                const std::vector<std::pair<std::string, std::string>>& codes);

  std::size_t z_dim() const { return z_dim_; }
  std::size_t x_dim() const { return x_dim_; }
  const Alphabet& states() const { return states_; }
  const Alphabet& inputs() const { return inputs_; }
  std::span<const BitPattern> state_codes() const { return state_codes_; }
  std::span<const BitPattern> input_codes() const { return input_codes_; }

  const BitPattern& state_code(std::string_view token) const;
  const BitPattern& input_code(std::string_view token) const;

 private:
  Alphabet states_;
  std::vector<BitPattern> state_codes_;
  Alphabet inputs_;
  std::vector<BitPattern> input_codes_;
  std::size_t z_dim_ = 0;
  std::size_t x_dim_ = 0;
};

const BitPattern& encode_state(const GroundingMap& map, std::string_view state);
const BitPattern& encode_input(const GroundingMap& map, std::string_view input);

/// Nearest code by cosine similarity. Throws std::invalid_argument for the zero
/// pattern and AmbiguousDecode when distinct symbols tie.
Decoded decode_nearest(const GroundingMap& map, const BitPattern& p, SymbolKind kind);

struct TrainingTriple {
  BitPattern z;
  BitPattern x;
  BitPattern z_next;
};

/// One triple per table entry, row-major.
std::vector<TrainingTriple> table_to_triples(const TransitionTable& table, const GroundingMap& map);

}  // namespace dnfa
