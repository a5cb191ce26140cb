#pragma once

#include <string>
#include <string_view>

#include "telcokit/llm_client.hpp"

namespace telcokit::evalkit {

struct JudgeScore {
    bool ok = false;
    int score = 0;          // 1..5 when ok
    std::string raw;        // verbatim judge reply (or error message)
};

struct JudgeConfig {
    std::string model = "gpt-4-128k";
};

// Asks the judge model to rate prediction relevance against the reference on
// a 1..5 scale and parses the first standalone integer in range from the
// reply. A reply without one, or an endpoint failure, yields an error row.
JudgeScore judge_score(std::string_view reference, std::string_view prediction,
                       llm::ChatClient& client, const JudgeConfig& config = {});

// Reply parser exposed for fixture tests.
JudgeScore parse_judge_reply(std::string_view reply);

}  // namespace telcokit::evalkit
