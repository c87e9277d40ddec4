#include "dnfa/snapshot.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dnfa {

using json = nlohmann::ordered_json;

namespace {

json bools(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<bool> bools_from(const json& j) {
  const auto s = j.get<std::string>();
  std::vector<bool> out;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("snapshot mask must be a 0/1 string");
    out.push_back(c == '1');
  }
  return out;
}

json projection_json(const ProjectionArea& a) {
  return json{{"ages", a.ages}, {"weights", a.weights}};
}

ProjectionArea projection_from(const json& j, std::size_t source_size) {
  ProjectionArea a;
  a.ages = j.at("ages").get<std::vector<std::uint64_t>>();
  a.weights = j.at("weights").get<std::vector<Vector>>();
  a.source_size = source_size;
  return a;
}

}  // namespace

json snapshot_to_json(const Network& net) {
  const NetworkConfig& c = net.config();
  json neurons = json::array();
  for (const Neuron& n : net.y_area().neurons) {
    neurons.push_back(json{{"initialized", n.initialized},
                           {"age", n.age},
                           {"vt", n.top_down},
                           {"vb", n.bottom_up},
                           {"maskT", bools(n.top_mask)},
                           {"maskB", bools(n.bottom_mask)},
                           {"betaT", n.top_beta},
                           {"betaB", n.bottom_beta}});
  }
  return json{{"format", "dnfa-snapshot"},
              {"version", kSnapshotVersion},
              {"zDim", c.z_dim},
              {"xDim", c.x_dim},
              {"capacity", c.capacity},
              {"k", c.k},
              {"epsilon", c.epsilon},
              {"seed", c.seed},
              {"maintenance",
               {{"enabled", c.maintenance.enabled},
                {"growThreshold", c.maintenance.grow_threshold},
                {"trimThreshold", c.maintenance.trim_threshold}}},
              {"time", net.time()},
              {"exhaustedUpdates", net.exhausted_updates()},
              {"neurons", std::move(neurons)},
              {"toZ", projection_json(net.to_z())},
              {"toX", projection_json(net.to_x())}};
}

Network snapshot_from_json(const json& doc) {
  if (doc.value("format", std::string{}) != "dnfa-snapshot") throw std::invalid_argument("not a dnfa snapshot");
  const int version = doc.at("version").get<int>();
  if (version != kSnapshotVersion) {
    throw std::invalid_argument("unsupported snapshot version " + std::to_string(version));
  }
  NetworkConfig c;
  c.z_dim = doc.at("zDim").get<std::size_t>();
  c.x_dim = doc.at("xDim").get<std::size_t>();
  c.capacity = doc.at("capacity").get<std::size_t>();
  c.k = doc.at("k").get<std::size_t>();
  c.epsilon = doc.at("epsilon").get<double>();
  c.seed = doc.at("seed").get<std::uint64_t>();
  const json& m = doc.at("maintenance");
  c.maintenance.enabled = m.at("enabled").get<bool>();
  c.maintenance.grow_threshold = m.at("growThreshold").get<double>();
  c.maintenance.trim_threshold = m.at("trimThreshold").get<double>();

  YArea y;
  y.k = c.k;
  for (const json& jn : doc.at("neurons")) {
    Neuron n;
    n.initialized = jn.at("initialized").get<bool>();
    n.age = jn.at("age").get<std::uint64_t>();
    n.top_down = jn.at("vt").get<Vector>();
    n.bottom_up = jn.at("vb").get<Vector>();
    n.top_mask = bools_from(jn.at("maskT"));
    n.bottom_mask = bools_from(jn.at("maskB"));
    n.top_beta = jn.at("betaT").get<Vector>();
    n.bottom_beta = jn.at("betaB").get<Vector>();
    y.neurons.push_back(std::move(n));
  }
  return Network::restore(c, std::move(y), projection_from(doc.at("toZ"), c.capacity),
                          projection_from(doc.at("toX"), c.capacity), doc.at("time").get<std::uint64_t>(),
                          doc.at("exhaustedUpdates").get<std::uint64_t>());
}

void save_snapshot(const Network& net, const std::filesystem::path& path, const json& extra) {
  json doc = snapshot_to_json(net);
  for (const auto& [key, value] : extra.items()) doc[key] = value;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << doc.dump(1) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return json::parse(buf.str());
}

Network load_snapshot(const std::filesystem::path& path) { return snapshot_from_json(read_json_file(path)); }

}  // namespace dnfa
