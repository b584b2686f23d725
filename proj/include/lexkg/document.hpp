#pragma once

#include <optional>
#include <string>

namespace lexkg {

/// One court decision to extract from.
struct DocumentRecord {
    std::string id;
    std::string text;
    std::optional<std::string> date;         // ISO YYYY-MM-DD
    std::optional<std::string> source_path;
};

}  // namespace lexkg
