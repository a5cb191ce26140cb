#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace telcokit {

// Tokenizer contract used by manifest accounting and packing. The concrete
// subword tokenizer of a real base model lives outside this artifact; the
// bundled whitespace tokenizer is reversible (decode(encode(x)) == x) and
// never emits the pad id.
class Tokenizer {
public:
    virtual ~Tokenizer() = default;
    virtual std::string name() const = 0;
    virtual std::vector<int64_t> encode(std::string_view text) = 0;
    virtual std::string decode(std::span<const int64_t> ids) const = 0;
    virtual int64_t pad_token() const = 0;
    virtual size_t vocab_size() const = 0;
};

// Reversible whitespace tokenizer. A token is a maximal "whitespace* word"
// span, so concatenating decoded tokens reproduces the input byte-for-byte.
// Ids are assigned in first-seen order starting at 1; id 0 is the pad.
class WhitespaceTokenizer : public Tokenizer {
public:
    std::string name() const override { return "whitespace-v1"; }
    std::vector<int64_t> encode(std::string_view text) override;
    std::string decode(std::span<const int64_t> ids) const override;
    int64_t pad_token() const override { return 0; }
    size_t vocab_size() const override { return id_to_token_.size(); }

private:
    int64_t intern(std::string token);
    std::unordered_map<std::string, int64_t> token_to_id_;
    std::vector<std::string> id_to_token_{""};  // slot 0 = pad, decodes to nothing
};

// Loads a fixed "token<TAB>id" (or "token id") vocabulary file. Encoding
// maps whitespace-split words; unknown words map to the <unk> id when the
// vocabulary defines one, otherwise encoding fails.
class FileVocabTokenizer : public Tokenizer {
public:
    explicit FileVocabTokenizer(const std::string& path);
    std::string name() const override { return name_; }
    std::vector<int64_t> encode(std::string_view text) override;
    std::string decode(std::span<const int64_t> ids) const override;
    int64_t pad_token() const override { return pad_id_; }
    size_t vocab_size() const override { return token_to_id_.size(); }

private:
    std::string name_;
    std::unordered_map<std::string, int64_t> token_to_id_;
    std::unordered_map<int64_t, std::string> id_to_token_;
    int64_t pad_id_ = 0;
    int64_t unk_id_ = -1;
};

std::unique_ptr<Tokenizer> make_tokenizer(const std::string& spec);

}  // namespace telcokit
