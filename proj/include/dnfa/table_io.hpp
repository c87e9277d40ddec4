#pragma once

// Table files: UTF-8 JSON with `states`, `inputs`, row-major `entries` and an
// optional `patterns` map from symbol to big-endian bit string.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "dnfa/pattern_codec.hpp"
#include "dnfa/symbolic_automata.hpp"

namespace dnfa {

struct TableFile {
  TransitionTable table;
  std::optional<GroundingMap> grounding;
};

TableFile table_from_json(const nlohmann::ordered_json& doc);
nlohmann::ordered_json table_to_json(const TransitionTable& table, const GroundingMap* grounding = nullptr);

TableFile parse_table(std::string_view text);
/// Canonical text: two-space indent, trailing newline, symbols in file order.
std::string dump_table(const TransitionTable& table, const GroundingMap* grounding = nullptr);

TableFile read_table_file(const std::filesystem::path& path);

}  // namespace dnfa
