#pragma once

// Versioned JSON snapshots of a Network. Doubles are written in shortest
// round-trip form, so load(save(net)) == net bit for bit.

#include <filesystem>

#include "json.hpp"

#include "dnfa/network.hpp"

namespace dnfa {

inline constexpr int kSnapshotVersion = 1;

nlohmann::ordered_json snapshot_to_json(const Network& net);
Network snapshot_from_json(const nlohmann::ordered_json& doc);

/// `extra` members (e.g. the embedded teacher table) are appended verbatim.
void save_snapshot(const Network& net, const std::filesystem::path& path,
                   const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());
nlohmann::ordered_json read_json_file(const std::filesystem::path& path);
Network load_snapshot(const std::filesystem::path& path);

}  // namespace dnfa
