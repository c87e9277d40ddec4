#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dnfa/symbolic_automata.hpp"

namespace dnfa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits words like "T∧F" or "s3 T" into input tokens, longest match first.
/// "AND" is accepted for ∧. Throws std::invalid_argument on unknown symbols.
std::vector<std::string> tokenize_word(const Alphabet& inputs, const std::vector<std::string>& pieces);

}  // namespace dnfa::cli
