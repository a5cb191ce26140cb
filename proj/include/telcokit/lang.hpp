#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace telcokit::refine {

struct LanguageGuess {
    std::string language;  // ISO-639-1 code, or "und"
    double confidence = 0.0;
};

// Character-trigram classifier over bundled per-language samples
// (en, fr, de, es, it). Texts shorter than 20 characters come back as
// ("und", 0).
LanguageGuess detect_language(std::string_view text);

std::vector<std::string> supported_languages();

}  // namespace telcokit::refine
