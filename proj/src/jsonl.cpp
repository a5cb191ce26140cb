#include "telcokit/jsonl.hpp"

#include <fstream>
#include <stdexcept>

namespace telcokit {

void read_jsonl(const std::string& path,
                const std::function<void(size_t, nlohmann::json)>& on_record,
                const std::function<void(const LineError&)>& on_error) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            on_error({lineno, "malformed JSON"});
            continue;
        }
        on_record(lineno, std::move(j));
    }
}

std::pair<std::vector<nlohmann::json>, std::vector<LineError>> read_jsonl_all(
    const std::string& path) {
    std::vector<nlohmann::json> rows;
    std::vector<LineError> errors;
    read_jsonl(
        path, [&](size_t, nlohmann::json j) { rows.push_back(std::move(j)); },
        [&](const LineError& e) { errors.push_back(e); });
    return {std::move(rows), std::move(errors)};
}

void write_jsonl(const std::string& path, const std::vector<nlohmann::json>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    for (const auto& row : rows) out << row.dump() << "\n";
}

}  // namespace telcokit
