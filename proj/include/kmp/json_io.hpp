#pragma once

#include "kmp/presentation.hpp"

#include <json.hpp>

namespace kmp {

/// Presentations serialize as
/// {"generators":["a",...],"relators":[[["a",1],["b",-1]],...]}.
nlohmann::json word_to_json(const Word& w);
Word word_from_json(const nlohmann::json& j);
nlohmann::json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j);

} // namespace kmp
