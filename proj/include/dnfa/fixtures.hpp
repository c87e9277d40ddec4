#pragma once

// Built-in teacher tables: the logic-AND task, the parity-counting task and
// their grand composition with switch inputs s1/s3.

#include <string_view>
#include <vector>

#include "dnfa/table_io.hpp"

namespace dnfa::fixtures {

inline constexpr std::string_view kAnd = "∧";  // ∧

TransitionTable task1_table();
GroundingMap task1_grounding();

TransitionTable task3_table();
GroundingMap task3_grounding();

TransitionTable grand13_table();
GroundingMap grand13_grounding();

/// Names accepted by build_fixture: task1, task3, grand13.
const std::vector<std::string_view>& fixture_names();
/// Throws std::invalid_argument for unknown names.
TableFile build_fixture(std::string_view name);

}  // namespace dnfa::fixtures
