#include "reference_runs.hpp"

#include "dnfa/fixtures.hpp"
#include "dnfa/harness.hpp"
#include "dnfa/snapshot.hpp"

namespace dnfa {

namespace {

std::string sweep(const TransitionTable& table, const GroundingMap& map, std::size_t capacity, std::size_t epochs) {
  Network net(NetworkConfig{map.z_dim(), map.x_dim(), capacity, 1, 7, 1e-9, {}});
  TeachingSchedule schedule;
  schedule.epochs = epochs;
  teach_table(net, table, map, schedule);
  return snapshot_to_json(net).dump() + "\n";
}

}  // namespace

std::string reference_run_snapshots() {
  std::string out;
  out += sweep(fixtures::task1_table(), fixtures::task1_grounding(), 18, 2);
  out += sweep(fixtures::grand13_table(), fixtures::grand13_grounding(), 40, 1);
  out += sweep(fixtures::task1_table(), fixtures::task1_grounding(), 10, 3);

  const GroundingMap map = fixtures::task1_grounding();
  const auto contexts = and_replay_contexts();
  Network net(NetworkConfig{map.z_dim(), map.x_dim(), 8, 1, 7, 1e-9, {}});
  TeachingSchedule schedule;
  schedule.mode = TeachingMode::sequence_replay;
  schedule.steps = replay_script(map, contexts, 5);
  run_schedule(net, schedule);
  out += snapshot_to_json(net).dump() + "\n";
  return out;
}

}  // namespace dnfa
