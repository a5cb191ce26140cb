#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace telcokit {

// 64-bit FNV-1a.
uint64_t fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL);

// splitmix64 finalizer, used to derive independent per-slot hash keys.
uint64_t splitmix64(uint64_t x);

struct Digest128 {
    uint64_t hi = 0;
    uint64_t lo = 0;
    bool operator==(const Digest128&) const = default;
    auto operator<=>(const Digest128&) const = default;
    std::string hex() const;
};

// 128-bit content digest (two independent FNV streams, mixed).
Digest128 digest128(std::string_view data);

// Removes angle-bracket tags, decodes the five common HTML entities
// (amp, lt, gt, quot, nbsp) and numeric decimal entities for them,
// collapses runs of spaces/tabs to one space, preserves newlines.
// Iterated to a fixed point so the function is idempotent.
std::string strip_markup(std::string_view text);

// Lowercased whitespace word tokens.
std::vector<std::string> word_tokens(std::string_view text);

// Whitespace tokens without case folding.
std::vector<std::string> split_words(std::string_view text);

size_t count_words(std::string_view text);

// Fraction of bytes that are ASCII alphabetic, over non-space bytes.
double alpha_ratio(std::string_view text);

// Fraction of bytes that are ASCII punctuation, over non-space bytes.
double punct_ratio(std::string_view text);

// Unicode NFC is out of scope for the bundled normalizer; canonical text
// normalization here is: lowercase ASCII, collapse all whitespace runs to
// a single space, trim.
std::string normalize_for_dedup(std::string_view text);

std::string to_lower(std::string_view text);

}  // namespace telcokit
