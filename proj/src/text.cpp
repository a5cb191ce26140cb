#include "telcokit/text.hpp"

#include <array>
#include <cctype>
#include <sstream>

namespace telcokit {

uint64_t fnv1a64(std::string_view data, uint64_t seed) {
    uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string Digest128::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(32, '0');
    for (int i = 0; i < 16; ++i) {
        uint64_t w = i < 8 ? hi : lo;
        int shift = 56 - 8 * (i % 8);
        unsigned char b = static_cast<unsigned char>((w >> shift) & 0xff);
        out[2 * i] = digits[b >> 4];
        out[2 * i + 1] = digits[b & 0xf];
    }
    return out;
}

Digest128 digest128(std::string_view data) {
    Digest128 d;
    d.hi = fnv1a64(data);
    d.lo = splitmix64(fnv1a64(data, 0x84222325cbf29ce4ULL));
    return d;
}

namespace {

// One rewrite pass: tag removal, entity decoding, space-run collapsing.
std::string strip_markup_pass(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    auto is_tag_open = [&](size_t pos) {
        if (text[pos] != '<' || pos + 1 >= text.size()) return false;
        char c = text[pos + 1];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '/' || c == '!' || c == '?';
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '<' && is_tag_open(i)) {
            size_t close = text.find('>', i + 1);
            if (close != std::string_view::npos) {
                // Tags render as a word break so "a<br>b" does not fuse.
                out.push_back(' ');
                i = close + 1;
                continue;
            }
        }
        if (c == '&') {
            static const std::array<std::pair<std::string_view, char>, 7> entities = {{
                {"&amp;", '&'},
                {"&lt;", '<'},
                {"&gt;", '>'},
                {"&quot;", '"'},
                {"&nbsp;", ' '},
                {"&#38;", '&'},
                {"&#160;", ' '},
            }};
            bool matched = false;
            for (auto [name, repl] : entities) {
                if (text.substr(i, name.size()) == name) {
                    out.push_back(repl);
                    i += name.size();
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
        }
        out.push_back(c);
        ++i;
    }
    // Collapse horizontal whitespace runs; newlines pass through.
    std::string collapsed;
    collapsed.reserve(out.size());
    bool in_space = false;
    for (char c : out) {
        if (c == '\n') {
            while (!collapsed.empty() && collapsed.back() == ' ') collapsed.pop_back();
            collapsed.push_back('\n');
            in_space = false;
        } else if (c == ' ' || c == '\t' || c == '\r') {
            if (!in_space && !collapsed.empty() && collapsed.back() != '\n') collapsed.push_back(' ');
            in_space = true;
        } else {
            collapsed.push_back(c);
            in_space = false;
        }
    }
    while (!collapsed.empty() && (collapsed.back() == ' ')) collapsed.pop_back();
    if (!collapsed.empty() && collapsed.front() == ' ') collapsed.erase(collapsed.begin());
    return collapsed;
}

}  // namespace

std::string strip_markup(std::string_view text) {
    std::string cur(text);
    // Entity decoding can reintroduce tag syntax ("&lt;p&gt;" -> "<p>"),
    // so iterate until stable; each pass can only shrink the string.
    for (int iter = 0; iter < 16; ++iter) {
        std::string next = strip_markup_pass(cur);
        if (next == cur) break;
        cur = std::move(next);
    }
    return cur;
}

std::vector<std::string> word_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                out.push_back(std::move(cur));
                cur.clear();
            }
        } else {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                out.push_back(std::move(cur));
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

size_t count_words(std::string_view text) {
    size_t n = 0;
    bool in_word = false;
    for (char c : text) {
        bool space = std::isspace(static_cast<unsigned char>(c));
        if (!space && !in_word) ++n;
        in_word = !space;
    }
    return n;
}

double alpha_ratio(std::string_view text) {
    size_t alpha = 0, total = 0;
    for (unsigned char c : text) {
        if (std::isspace(c)) continue;
        ++total;
        if (std::isalpha(c)) ++alpha;
    }
    return total == 0 ? 0.0 : static_cast<double>(alpha) / static_cast<double>(total);
}

double punct_ratio(std::string_view text) {
    size_t punct = 0, total = 0;
    for (unsigned char c : text) {
        if (std::isspace(c)) continue;
        ++total;
        if (std::ispunct(c)) ++punct;
    }
    return total == 0 ? 0.0 : static_cast<double>(punct) / static_cast<double>(total);
}

std::string normalize_for_dedup(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_space = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

std::string to_lower(std::string_view text) {
    std::string out(text);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace telcokit
