#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace travelkit::bench {

// NFKC with case folding, punctuation replaced by spaces, whitespace
// collapsed and trimmed. Idempotent. Input is UTF-8.
std::string normalize_text(std::string_view s);

// normalize_text split on single spaces.
std::vector<std::string> normalized_tokens(std::string_view s);

}  // namespace travelkit::bench
