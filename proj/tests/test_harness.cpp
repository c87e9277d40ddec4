#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"

#include "dnfa/fixtures.hpp"
#include "dnfa/harness.hpp"
#include "test_support.hpp"

namespace dnfa {
namespace {

const std::string A(fixtures::kAnd);

Network taught(std::string_view fixture, std::size_t capacity, std::size_t epochs = 1, std::uint64_t seed = 0) {
  const TableFile f = fixtures::build_fixture(fixture);
  Network net({f.grounding->z_dim(), f.grounding->x_dim(), capacity, 1, seed});
  teach_table(net, f.table, *f.grounding, {.epochs = epochs});
  return net;
}

std::vector<std::string> states_of(const std::vector<FreeRunEntry>& run) {
  std::vector<std::string> out;
  for (const auto& e : run) out.push_back(e.state.value_or("<" + e.error + ">"));
  return out;
}

TEST(TeachTable, RecruitsOneNeuronPerTransition) {
  const TableFile t1 = fixtures::build_fixture("task1");
  Network net({3, 3, 18, 1, 0});
  EXPECT_EQ(teach_table(net, t1.table, *t1.grounding, {}).recruit_count, 18u);
  EXPECT_EQ(teach_table(net, t1.table, *t1.grounding, {}).recruit_count, 0u);
  EXPECT_EQ(net.initialized_count(), 18u);

  const TableFile g = fixtures::build_fixture("grand13");
  Network grand({5, 3, 40, 1, 0});
  EXPECT_EQ(teach_table(grand, g.table, *g.grounding, {}).recruit_count, 40u);
}

TEST(Verify, TaughtUntaughtAndGrand) {
  const TableFile t1 = fixtures::build_fixture("task1");
  const VerificationReport good = verify_error_free(taught("task1", 18), t1.table, *t1.grounding);
  EXPECT_EQ(good.total_queries, 18u);
  EXPECT_TRUE(good.mismatches.empty());
  EXPECT_EQ(good.agreement_rate, 1.0);
  EXPECT_EQ(good.recruit_count, 18u);

  const VerificationReport fresh = verify_error_free(Network({3, 3, 18, 1, 0}), t1.table, *t1.grounding);
  EXPECT_EQ(fresh.mismatches.size(), 18u);
  EXPECT_EQ(fresh.agreement_rate, 0.0);

  const TableFile g = fixtures::build_fixture("grand13");
  const VerificationReport grand = verify_error_free(taught("grand13", 40), g.table, *g.grounding);
  EXPECT_EQ(grand.total_queries, 40u);
  EXPECT_TRUE(grand.mismatches.empty());
}

TEST(Oracle, NearestContextExamples) {
  const std::vector<Context> cs{{{1, 1, 0}, {1, 0, 0}}, {{1, 0, 0}, {1, 0, 0}}};
  EXPECT_EQ(oracle_nearest_context(cs, std::vector<double>{1, 1, 1}, std::vector<double>{1, 0, 0}), 0u);
  EXPECT_EQ(oracle_nearest_context(cs, std::vector<double>{1, 0, 0}, std::vector<double>{1, 0, 0}), 1u);
  const std::vector<Context> tied{{{1, 0}, {1}}, {{0, 1}, {1}}};
  EXPECT_EQ(oracle_nearest_context(tied, std::vector<double>{1, 1}, std::vector<double>{1}), 0u);
  EXPECT_THROW(oracle_nearest_context({}, std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
}

TEST(RunFree, Task1Word) {
  const Network net = taught("task1", 18);
  const std::vector<std::string> word{"T", A, "F", A, "T", A, "T"};
  EXPECT_EQ(states_of(run_free(net, fixtures::task1_grounding(), "q_0", word)),
            (std::vector<std::string>{"q_T", "q_T" + A, "q_F", "q_F" + A, "q_F", "q_F" + A, "q_F"}));
}

TEST(RunFree, MatchesSymbolicRunOnRandomWords) {
  const Network net = taught("task1", 18);
  const TransitionTable t = fixtures::task1_table();
  const GroundingMap map = fixtures::task1_grounding();
  testing::Gen gen(12);
  for (int i = 0; i < 200; ++i) {
    const auto word = gen.word(t.num_inputs(), 32);
    const std::size_t start = gen.index(t.num_states());
    const auto expected = run_fa(t, start, word);
    const auto got = states_of(run_free(net, map, t.states()[start], testing::tokens_of(t.inputs(), word)));
    ASSERT_EQ(got, testing::tokens_of(t.states(), expected));
  }
}

TEST(RunFree, GrandTaskSwitch) {
  const Network net = taught("grand13", 40);
  const std::vector<std::string> word{"s3", "T", "F", "s1", "T", A, "F"};
  EXPECT_EQ(states_of(run_free(net, fixtures::grand13_grounding(), "(q1,q_0)", word)),
            (std::vector<std::string>{"(q3,q_e)", "(q3,q_o)", "(q3,q_e)", "(q1,q_0)", "(q1,q_T)",
                                      "(q1,q_T" + A + ")", "(q1,q_F)"}));
  EXPECT_TRUE(run_free(net, fixtures::grand13_grounding(), "(q1,q_0)", {}).empty());
}

TEST(RunFree, UntaughtNetworkReportsErrors) {
  const auto run = run_free(Network({3, 3, 4, 1, 0}), fixtures::task1_grounding(), "q_0",
                            std::vector<std::string>{"T"});
  ASSERT_EQ(run.size(), 1u);
  EXPECT_FALSE(run[0].state.has_value());
  EXPECT_FALSE(run[0].error.empty());
}

TEST(Metrics, CsvAndSummary) {
  const TableFile t1 = fixtures::build_fixture("task1");
  Network net({3, 3, 18, 1, 0});
  const RunReport r = teach_table(net, t1.table, *t1.grounding, {});
  std::ostringstream csv;
  write_metrics_csv(r, csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "step,winner,recruited,preResponseMax,zCorrect");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 18u);

  const auto j = nlohmann::json::parse(metrics_summary_json(r));
  EXPECT_EQ(j["steps"], 18);
  EXPECT_EQ(j["recruitCount"], 18);
  EXPECT_EQ(j["agreementRate"], 0.0);  // every first presentation predicts nothing yet

  const RunReport second = teach_table(net, t1.table, *t1.grounding, {});
  EXPECT_EQ(nlohmann::json::parse(metrics_summary_json(second))["agreementRate"], 1.0);

  std::ostringstream empty;
  write_metrics_csv(RunReport{}, empty);
  EXPECT_EQ(empty.str(), "step,winner,recruited,preResponseMax,zCorrect\n");
  EXPECT_TRUE(nlohmann::json::parse(metrics_summary_json(RunReport{}))["agreementRate"].is_null());
}

TEST(Metrics, VerificationJson) {
  const TableFile t1 = fixtures::build_fixture("task1");
  const auto j = nlohmann::json::parse(verification_json(verify_error_free(taught("task1", 18), t1.table,
                                                                           *t1.grounding)));
  EXPECT_EQ(j["totalQueries"], 18);
  EXPECT_EQ(j["mismatchCount"], 0);
  EXPECT_TRUE(j["mismatches"].empty());
}

TEST(TeachProperty, ShuffledOrderGivesSameFunction) {
  const TableFile f = fixtures::build_fixture("grand13");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Network net({5, 3, 40, 1, seed});
    teach_table(net, f.table, *f.grounding, {.shuffle = true, .seed = seed});
    EXPECT_TRUE(verify_error_free(net, f.table, *f.grounding).mismatches.empty());
  }
}

TEST(TeachProperty, ExtraEpochsChangeNoWeights) {
  const Network once = taught("task1", 18, 1);
  const Network thrice = taught("task1", 18, 3);
  for (std::size_t i = 0; i < 18; ++i) {
    EXPECT_EQ(once.y_area().neurons[i].top_down, thrice.y_area().neurons[i].top_down);
    EXPECT_EQ(once.y_area().neurons[i].bottom_up, thrice.y_area().neurons[i].bottom_up);
  }
  // Projection rows are frequency averages: equal up to rounding, same predictions.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 18; ++j) EXPECT_NEAR(once.to_z().weights[i][j], thrice.to_z().weights[i][j], 1e-15);
  }
  const TableFile f = fixtures::build_fixture("task1");
  EXPECT_EQ(verification_json(verify_error_free(once, f.table, *f.grounding)),
            verification_json(verify_error_free(thrice, f.table, *f.grounding)));
}

TEST(TeachProperty, GrandTasksDoNotInterfere) {
  // Inside each task the grand network reproduces that task's own control.
  const Network net = taught("grand13", 40);
  const GroundingMap map = fixtures::grand13_grounding();
  const TransitionTable t1 = fixtures::task1_table();
  for (std::size_t q = 0; q < t1.num_states(); ++q) {
    for (std::size_t s = 0; s < t1.num_inputs(); ++s) {
      const auto run = run_free(net, map, grand_state_token("q1", t1.states()[q]),
                                std::vector<std::string>{t1.inputs()[s]});
      ASSERT_EQ(run[0].state, grand_state_token("q1", t1.states()[t1.next(q, s)]));
    }
  }
}

TEST(Replay, SuccessorOfRepeatedContext) {
  const GroundingMap map = fixtures::task1_grounding();
  const auto contexts = and_replay_contexts();
  const SuccessorModel m = successors_from(map, contexts);
  EXPECT_EQ(m.successors(map.states().index_of("q_F"), map.inputs().index_of(A)),
            (std::set<std::size_t>{map.inputs().index_of("T")}));

  Network net({3, 3, 8, 1, 7});
  TeachingSchedule s;
  s.mode = TeachingMode::sequence_replay;
  s.steps = replay_script(map, contexts, 5);
  const RunReport r = run_schedule(net, s);
  EXPECT_EQ(decode_nearest(map, r.steps[5].x_pred, SymbolKind::input).symbol, "T");
  EXPECT_THROW(replay_script(map, contexts, 7), std::invalid_argument);
}

TEST(Schedule, FreeRunChainsPredictions) {
  const GroundingMap map = fixtures::task1_grounding();
  Network net({3, 3, 8, 1, 7});
  TeachingSchedule teach;
  teach.mode = TeachingMode::sequence_replay;
  teach.steps = replay_script(map, and_replay_contexts(), 5);
  run_schedule(net, teach);

  TeachingSchedule free;
  free.mode = TeachingMode::free_run;
  free.steps = {ScriptStep{map.state_code("q_F"), map.input_code(A)}};
  free.free_steps = 1;
  const RunReport r = run_schedule(net, free);
  ASSERT_EQ(r.steps.size(), 2u);
  EXPECT_EQ(r.steps[1].winners, std::vector<std::size_t>{4});
  EXPECT_EQ(r.recruit_count, 0u);
  EXPECT_THROW(run_schedule(net, TeachingSchedule{.mode = TeachingMode::free_run}), std::invalid_argument);
}

}  // namespace
}  // namespace dnfa
