#include "telcokit/judge.hpp"

#include <cctype>

#include "telcokit/prompts.hpp"

namespace telcokit::evalkit {

JudgeScore parse_judge_reply(std::string_view reply) {
    JudgeScore out;
    out.raw = std::string(reply);
    for (size_t i = 0; i < reply.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(reply[i]))) continue;
        size_t end = i;
        while (end < reply.size() && std::isdigit(static_cast<unsigned char>(reply[end]))) ++end;
        bool standalone = (i == 0 || !std::isalnum(static_cast<unsigned char>(reply[i - 1]))) &&
                          (end == reply.size() ||
                           !std::isalnum(static_cast<unsigned char>(reply[end])));
        if (standalone && end - i == 1 && reply[i] >= '1' && reply[i] <= '5') {
            out.ok = true;
            out.score = reply[i] - '0';
            return out;
        }
        i = end;
    }
    return out;
}

JudgeScore judge_score(std::string_view reference, std::string_view prediction,
                       llm::ChatClient& client, const JudgeConfig& config) {
    llm::ChatRequest request;
    request.model = config.model;
    request.user = prompts::builtin("judge_rubric")
                       .render({{"output", std::string(reference)},
                                {"prediction", std::string(prediction)}});
    request.temperature = 0.0;
    try {
        auto response = client.chat(request);
        return parse_judge_reply(response.text);
    } catch (const llm::TransportError& err) {
        JudgeScore out;
        out.raw = std::string("endpoint error: ") + err.what();
        return out;
    }
}

}  // namespace telcokit::evalkit
