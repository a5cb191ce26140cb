#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace telcokit {

struct LineError {
    size_t line_number = 0;  // 1-based
    std::string message;
};

// Streams a JSON-Lines file. Well-formed lines go to on_record with their
// 1-based line number, malformed lines go to on_error. Blank lines are
// skipped. Throws std::runtime_error if the file cannot be opened.
void read_jsonl(const std::string& path,
                const std::function<void(size_t, nlohmann::json)>& on_record,
                const std::function<void(const LineError&)>& on_error);

// Convenience wrapper collecting records and errors.
std::pair<std::vector<nlohmann::json>, std::vector<LineError>> read_jsonl_all(
    const std::string& path);

void write_jsonl(const std::string& path, const std::vector<nlohmann::json>& rows);

}  // namespace telcokit
