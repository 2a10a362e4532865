#pragma once

// Collage file format: one UTF-8 JSON document with the top-level keys
// schema_version (= 1), fragments, containers, inbox and viewport.

#include <filesystem>

#include <json.hpp>

#include "collage/store.hpp"

namespace collage {

inline constexpr int kSchemaVersion = 1;

nlohmann::json collage_to_json(const Collage& c);

/// Strict: unknown keys, wrong types and broken invariants are rejected with
/// SchemaVersionMismatch or ValidationFailure. Corpus statistics are rebuilt.
Collage collage_from_json(const nlohmann::json& j);

nlohmann::json fragment_to_json(const Fragment& f);
nlohmann::json placement_to_json(const Placement& p);
Placement placement_from_json(const nlohmann::json& j);
nlohmann::json viewport_to_json(const Viewport& v);
Viewport viewport_from_json(const nlohmann::json& j);

void save_collage(const std::filesystem::path& path, const Collage& c);
Collage load_collage(const std::filesystem::path& path);

}  // namespace collage
