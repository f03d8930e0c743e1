#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ktf/atom_mask.hpp"
#include "ktf/closure_model.hpp"

namespace ktf {

// A model together with the optional descriptive fields of its file.
struct ModelDocument {
  ClosureModel model;
  std::string name;
  std::string provenance;
  nlohmann::json extra;  // any further keys, kept verbatim (object or null)
};

// Schema:
//   {"n": int, "atoms": [names], "rows": [[[names] per atom] per topology],
//    "kind": "point" | "block" (optional), "name", "provenance" (optional),
//    anything else is preserved}
ModelDocument model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ModelDocument& doc);
nlohmann::json model_to_json(const ClosureModel& model);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize_model(const ModelDocument& doc);
std::string serialize_model(const ClosureModel& model);
ModelDocument parse_model(std::string_view text);
ModelDocument load_model_file(const std::filesystem::path& path);

// Comma separated atom names (optionally in braces), or a hex bit string
// "0x..." with atom 0 as the least significant bit. "{}" and "" are empty.
AtomMask parse_mask(const ClosureModel& model, std::string_view text);
// "{P0,P3}"
std::string format_mask(const ClosureModel& model, const AtomMask& s);
nlohmann::json mask_to_json(const ClosureModel& model, const AtomMask& s);

}  // namespace ktf
