#pragma once
// Canonical JSON serialization of BlockageModel files: fixed key order,
// 9-significant-digit floats, schema validation with unknown-field
// rejection, byte-identical round trips.

#include <string>
#include <utility>

#include "json.hpp"

#include "blockfade/types.hpp"

namespace blockfade {

inline constexpr const char* kModelSchema = "blockfade-model/1";

nlohmann::ordered_json model_to_json(const BlockageModel& model,
                                     const Provenance& prov);
BlockageModel model_from_json(const nlohmann::ordered_json& j,
                              Provenance* prov = nullptr);

// serialize = dump(2) + trailing newline; parse validates the schema.
std::string serialize_model(const BlockageModel& model, const Provenance& prov);
std::pair<BlockageModel, Provenance> parse_model(const std::string& text);

void write_model(const std::string& path, const BlockageModel& model,
                 const Provenance& prov);
std::pair<BlockageModel, Provenance> read_model(const std::string& path);

}  // namespace blockfade
