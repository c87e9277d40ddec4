#include "dnfa/fixtures.hpp"

#include <stdexcept>
#include <string>

namespace dnfa::fixtures {

namespace {

const std::string A(kAnd);
const std::string qTA = "q_T" + A;
const std::string qFA = "q_F" + A;

}  // namespace

TransitionTable task1_table() {
  return TransitionTable::from_names({"q_0", "q_T", "q_F", qTA, qFA, "q_-"}, {"T", "F", A},
                                     {
                                         {"q_T", "q_F", "q_-"},
                                         {"q_-", "q_-", qTA},
                                         {"q_-", "q_-", qFA},
                                         {"q_T", "q_F", "q_-"},
                                         {"q_F", "q_F", "q_-"},
                                         {"q_-", "q_-", "q_-"},
                                     });
}

GroundingMap task1_grounding() {
  return GroundingMap::for_table(task1_table(), {{"q_0", "001"},
                                                 {"q_T", "010"},
                                                 {"q_F", "011"},
                                                 {qTA, "100"},
                                                 {qFA, "101"},
                                                 {"q_-", "110"},
                                                 {"T", "010"},
                                                 {"F", "011"},
                                                 {A, "100"}});
}

TransitionTable task3_table() {
  return TransitionTable::from_names({"q_e", "q_o"}, {"T", "F", A},
                                     {
                                         {"q_o", "q_o", "q_o"},
                                         {"q_e", "q_e", "q_e"},
                                     });
}

GroundingMap task3_grounding() {
  return GroundingMap::for_table(task3_table(),
                                 {{"q_e", "01"}, {"q_o", "10"}, {"T", "010"}, {"F", "011"}, {A, "100"}});
}

TransitionTable grand13_table() {
  const std::vector<GrandTask> tasks{{"q1", task1_table(), "q_0"}, {"q3", task3_table(), "q_e"}};
  const std::vector<std::string> switches{"s1", "s3"};
  return compose_grand(tasks, switches);
}

GroundingMap grand13_grounding() {
  return GroundingMap::for_table(grand13_table(), {{"(q1,q_0)", "01001"},
                                                   {"(q1,q_T)", "01010"},
                                                   {"(q1,q_F)", "01011"},
                                                   {"(q1," + qTA + ")", "01100"},
                                                   {"(q1," + qFA + ")", "01101"},
                                                   {"(q1,q_-)", "01110"},
                                                   {"(q3,q_e)", "11000"},
                                                   {"(q3,q_o)", "11001"},
                                                   {"s1", "101"},
                                                   {"s3", "111"},
                                                   {"T", "010"},
                                                   {"F", "011"},
                                                   {A, "100"}});
}

const std::vector<std::string_view>& fixture_names() {
  static const std::vector<std::string_view> names{"task1", "task3", "grand13"};
  return names;
}

TableFile build_fixture(std::string_view name) {
  if (name == "task1") return {task1_table(), task1_grounding()};
  if (name == "task3") return {task3_table(), task3_grounding()};
  if (name == "grand13") return {grand13_table(), grand13_grounding()};
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "' (expected task1, task3 or grand13)");
}

}  // namespace dnfa::fixtures
