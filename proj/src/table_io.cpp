#include "dnfa/table_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dnfa {

using json = nlohmann::ordered_json;

TableFile table_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("table document must be a JSON object");
  auto states = doc.at("states").get<std::vector<std::string>>();
  auto inputs = doc.at("inputs").get<std::vector<std::string>>();
  auto rows = doc.at("entries").get<std::vector<std::vector<std::string>>>();
  TableFile file{TransitionTable::from_names(std::move(states), std::move(inputs), rows), std::nullopt};

  if (auto it = doc.find("patterns"); it != doc.end()) {
    for (const auto& q : file.table.states().tokens()) {
      if (file.table.inputs().find(q)) {
        throw std::invalid_argument("symbol '" + q + "' is both a state and an input; patterns would be ambiguous");
      }
    }
    std::vector<std::pair<std::string, std::string>> codes;
    for (const auto& [symbol, bits] : it->items()) codes.emplace_back(symbol, bits.get<std::string>());
    file.grounding = GroundingMap::for_table(file.table, codes);
  }
  return file;
}

json table_to_json(const TransitionTable& table, const GroundingMap* grounding) {
  json rows = json::array();
  for (std::size_t q = 0; q < table.num_states(); ++q) {
    json row = json::array();
    for (std::size_t s = 0; s < table.num_inputs(); ++s) row.push_back(table.states()[table.next(q, s)]);
    rows.push_back(std::move(row));
  }
  json doc{{"states", table.states().tokens()}, {"inputs", table.inputs().tokens()}, {"entries", std::move(rows)}};
  if (grounding) {
    json patterns = json::object();
    for (std::size_t i = 0; i < grounding->states().size(); ++i) {
      patterns[grounding->states()[i]] = grounding->state_codes()[i].to_bits();
    }
    for (std::size_t i = 0; i < grounding->inputs().size(); ++i) {
      patterns[grounding->inputs()[i]] = grounding->input_codes()[i].to_bits();
    }
    doc["patterns"] = std::move(patterns);
  }
  return doc;
}

TableFile parse_table(std::string_view text) { return table_from_json(json::parse(text)); }

std::string dump_table(const TransitionTable& table, const GroundingMap* grounding) {
  return table_to_json(table, grounding).dump(2) + "\n";
}

TableFile read_table_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open table file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str());
}

}  // namespace dnfa
