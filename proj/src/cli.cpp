#include "dnfa/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "dnfa/fixtures.hpp"
#include "dnfa/harness.hpp"
#include "dnfa/snapshot.hpp"
#include "dnfa/table_io.hpp"

namespace dnfa::cli {

namespace {

using json = nlohmann::ordered_json;

/// Raised for bad invocations that get past the argument parser.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::shared_ptr<spdlog::logger> logger() {
  static auto log = [] {
    auto l = spdlog::stderr_color_mt("dnfa");
    const char* env = std::getenv("DN_LOG");
    l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
    l->set_pattern("[%l] %v");
    return l;
  }();
  return log;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

struct Options {
  std::string fixture;
  std::string table_path;
  std::string snapshot_path;
  std::string out_path;
  std::string metrics_prefix;
  std::string start;
  std::size_t capacity = 0;
  std::size_t k = 1;
  std::size_t epochs = 1;
  std::uint64_t seed = 0;
  std::string maintenance = "off";
  double grow_thresh = 1.0;
  double trim_thresh = 1.5;
  std::vector<std::string> word;
};

TableFile load_table_with_codes(const std::string& path) {
  TableFile f = read_table_file(path);
  if (!f.grounding) throw std::runtime_error("table '" + path + "' has no patterns field");
  return f;
}

/// Table from --table, falling back to the copy embedded by `teach`.
TableFile table_for_snapshot(const Options& o, const json& snapshot_doc) {
  if (!o.table_path.empty()) return load_table_with_codes(o.table_path);
  if (auto it = snapshot_doc.find("table"); it != snapshot_doc.end()) {
    TableFile f = table_from_json(*it);
    if (f.grounding) return f;
  }
  throw UsageError("no --table given and the snapshot carries no table");
}

void check_dims(const Network& net, const GroundingMap& map) {
  if (net.config().z_dim != map.z_dim() || net.config().x_dim != map.x_dim()) {
    throw std::runtime_error("table patterns (" + std::to_string(map.z_dim()) + "," + std::to_string(map.x_dim()) +
                             ") do not match snapshot dimensions (" + std::to_string(net.config().z_dim) + "," +
                             std::to_string(net.config().x_dim) + ")");
  }
}

int cmd_build_table(const Options& o, std::ostream& out) {
  TableFile f;
  try {
    f = fixtures::build_fixture(o.fixture);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string text = dump_table(f.table, &*f.grounding);
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_text(o.out_path, text);
  }
  return kExitOk;
}

int cmd_teach(const Options& o, std::ostream& out) {
  if (o.snapshot_path.empty() && o.out_path.empty()) throw UsageError("teach needs --snapshot or --out");
  TableFile f = load_table_with_codes(o.table_path);
  const std::size_t contexts = f.table.num_states() * f.table.num_inputs();

  NetworkConfig cfg;
  cfg.z_dim = f.grounding->z_dim();
  cfg.x_dim = f.grounding->x_dim();
  cfg.capacity = o.capacity == 0 ? contexts : o.capacity;
  cfg.k = o.k;
  cfg.seed = o.seed;
  cfg.maintenance = MaintenanceConfig{o.maintenance == "on", o.grow_thresh, o.trim_thresh};
  Network net(cfg);

  TeachingSchedule schedule;
  schedule.epochs = o.epochs;
  schedule.seed = o.seed;
  RunReport report = teach_table(net, f.table, *f.grounding, schedule);
  logger()->info("taught {} steps, recruited {}", report.steps.size(), report.recruit_count);

  const bool under = cfg.capacity < contexts;
  if (under) logger()->warn("capacity {} < {} contexts: network is under-provisioned", cfg.capacity, contexts);
  json extra{{"underProvisioned", under}, {"table", table_to_json(f.table, &*f.grounding)}};
  save_snapshot(net, o.snapshot_path.empty() ? o.out_path : o.snapshot_path, extra);

  if (!o.metrics_prefix.empty()) {
    std::ostringstream csv;
    write_metrics_csv(report, csv);
    write_text(o.metrics_prefix + ".csv", csv.str());
    write_text(o.metrics_prefix + ".json", metrics_summary_json(report));
  }
  out << "taught " << report.steps.size() << " steps; " << net.initialized_count() << "/" << cfg.capacity
      << " neurons initialized" << (under ? " (under-provisioned)" : "") << "\n";
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const json doc = read_json_file(o.snapshot_path);
  Network net = snapshot_from_json(doc);
  TableFile f = table_for_snapshot(o, doc);
  check_dims(net, *f.grounding);
  VerificationReport report = verify_error_free(net, f.table, *f.grounding);
  if (!o.out_path.empty()) write_text(o.out_path, verification_json(report));
  if (!o.metrics_prefix.empty()) write_text(o.metrics_prefix + ".json", verification_json(report));
  out << "agreement " << report.total_queries - report.mismatches.size() << "/" << report.total_queries << "\n";
  for (const Mismatch& m : report.mismatches) {
    out << "  mismatch (" << m.state << ", " << m.input << "): expected " << m.expected.to_bits() << " got "
        << m.got.to_bits() << "\n";
  }
  return report.mismatches.empty() ? kExitOk : kExitFailure;
}

int cmd_run(const Options& o, std::ostream& out) {
  const json doc = read_json_file(o.snapshot_path);
  Network net = snapshot_from_json(doc);
  TableFile f = table_for_snapshot(o, doc);
  check_dims(net, *f.grounding);
  std::vector<std::string> word;
  try {
    word = tokenize_word(f.table.inputs(), o.word);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string start = o.start.empty() ? f.table.states()[0] : o.start;
  if (!f.table.states().find(start)) throw UsageError("unknown start state '" + start + "'");

  const auto trajectory = run_free(net, *f.grounding, start, word);
  bool ok = true;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (i) out << ' ';
    if (trajectory[i].state) {
      out << *trajectory[i].state;
    } else {
      out << '?';
      ok = false;
      logger()->error("step {}: {}", i, trajectory[i].error);
    }
  }
  if (!trajectory.empty()) out << '\n';
  return ok ? kExitOk : kExitFailure;
}

int cmd_inspect(const Options& o, std::ostream& out) {
  const json doc = read_json_file(o.snapshot_path);
  Network net = snapshot_from_json(doc);
  json summary{{"zDim", net.config().z_dim},
               {"xDim", net.config().x_dim},
               {"capacity", net.config().capacity},
               {"k", net.config().k},
               {"initialized", net.initialized_count()},
               {"time", net.time()},
               {"seed", net.config().seed},
               {"maintenance", net.config().maintenance.enabled},
               {"exhaustedUpdates", net.exhausted_updates()},
               {"underProvisioned", doc.value("underProvisioned", false)}};
  out << summary.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

std::vector<std::string> tokenize_word(const Alphabet& inputs, const std::vector<std::string>& pieces) {
  std::vector<std::string> tokens;
  for (const std::string& raw : pieces) {
    std::istringstream words(raw);
    std::string piece;
    while (words >> piece) {
      std::size_t pos = 0;
      while (pos < piece.size()) {
        std::string best;
        std::size_t best_len = 0;
        for (const auto& t : inputs.tokens()) {
          if (t.size() > best_len && piece.compare(pos, t.size(), t) == 0) {
            best = t;
            best_len = t.size();
          }
        }
        if (best_len < 3 && piece.compare(pos, 3, "AND") == 0 && inputs.find(fixtures::kAnd)) {
          best = std::string(fixtures::kAnd);
          best_len = 3;
        }
        if (best_len == 0) {
          throw std::invalid_argument("unknown input symbol at '" + piece.substr(pos) + "'");
        }
        tokens.push_back(best);
        pos += best_len;
      }
    }
  }
  return tokens;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Developmental-network automaton learner"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build-table", "Write a built-in teacher table as JSON");
  build->add_option("name", o.fixture, "task1, task3 or grand13")->required();
  build->add_option("--out", o.out_path, "Output path (stdout if omitted)");

  auto* teach = app.add_subcommand("teach", "Teach a fresh network from a table file");
  teach->add_option("--table", o.table_path, "Table JSON with patterns")->required();
  teach->add_option("--snapshot", o.snapshot_path, "Snapshot output path");
  teach->add_option("--out", o.out_path, "Alias for --snapshot");
  teach->add_option("--capacity", o.capacity, "Y neurons (default |Q|*|Sigma|)")->check(CLI::PositiveNumber);
  teach->add_option("--k", o.k, "Top-k winners")->check(CLI::PositiveNumber);
  teach->add_option("--epochs", o.epochs, "Table sweeps")->check(CLI::PositiveNumber);
  teach->add_option("--seed", o.seed, "Seed for the initial random weights");
  teach->add_option("--metrics", o.metrics_prefix, "Write <prefix>.csv and <prefix>.json");
  teach->add_option("--maintenance", o.maintenance, "Synaptic maintenance")->check(CLI::IsMember({"on", "off"}));
  teach->add_option("--grow-thresh", o.grow_thresh, "Grow when beta ratio is below this");
  teach->add_option("--trim-thresh", o.trim_thresh, "Trim when beta ratio is above this");

  auto* verify = app.add_subcommand("verify", "Check a snapshot against its teacher table");
  verify->add_option("--snapshot", o.snapshot_path, "Snapshot path")->required();
  verify->add_option("--table", o.table_path, "Table JSON (default: the one embedded by teach)");
  verify->add_option("--out", o.out_path, "Verification report JSON");
  verify->add_option("--metrics", o.metrics_prefix, "Also write <prefix>.json");

  auto* run_cmd = app.add_subcommand("run", "Free-run a snapshot over an input word");
  run_cmd->add_option("--snapshot", o.snapshot_path, "Snapshot path")->required();
  run_cmd->add_option("--table", o.table_path, "Table JSON (default: embedded)");
  run_cmd->add_option("--start", o.start, "Start state (default: first state)");
  run_cmd->add_option("word", o.word, "Input symbols, e.g. 'T∧F' or T AND F");

  auto* inspect = app.add_subcommand("inspect", "Summarize a snapshot");
  inspect->add_option("--snapshot", o.snapshot_path, "Snapshot path")->required();

  std::vector<const char*> argv{"dnfa"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build_table(o, out);
    if (teach->parsed()) return cmd_teach(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (run_cmd->parsed()) return cmd_run(o, out);
    if (inspect->parsed()) return cmd_inspect(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace dnfa::cli
