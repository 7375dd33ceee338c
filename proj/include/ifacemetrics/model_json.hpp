#pragma once

#include "ifacemetrics/code_model.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ifacemetrics {

/// Schema tag written to and required from every model file.
inline constexpr std::string_view kModelSchema = "iface-model/1";

/// Parses the neutral JSON code-model. Throws SchemaError with the JSON
/// pointer of the first offending node; unknown fields are rejected.
std::vector<TypeDecl> model_from_json(std::string_view text);

/// Serializes declarations (name order, two-space indent, trailing newline).
std::string model_to_json(const std::vector<TypeDecl>& decls);

std::vector<TypeDecl> load_model_json(const std::filesystem::path& path);
void save_model_json(const CodeModel& model, const std::filesystem::path& path);

}  // namespace ifacemetrics
