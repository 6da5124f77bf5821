#pragma once

#include <string>

#include "kintwin/model.hpp"

namespace kintwin {

// "kintwin-model v1" text format; see docs/formats.md. The returned model is
// finalized and validated.
ModelSpec load_model(const std::string& path);
ModelSpec parse_model(const std::string& text, const std::string& origin = "<string>");

void save_model(const ModelSpec& model, const std::string& path);
std::string serialize_model(const ModelSpec& model);

}  // namespace kintwin
