#pragma once

#include <string>

namespace dnfa {

/// Snapshots (one JSON document per line) of a fixed set of teaching runs
/// with maintenance disabled: task1 sweep, grand13 sweep, the AND replay and
/// an under-provisioned task1 sweep.
std::string reference_run_snapshots();

}  // namespace dnfa
