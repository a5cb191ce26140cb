#include "telcokit/tokenizer.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace telcokit {

namespace {
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
}

int64_t WhitespaceTokenizer::intern(std::string token) {
    auto it = token_to_id_.find(token);
    if (it != token_to_id_.end()) return it->second;
    int64_t id = static_cast<int64_t>(id_to_token_.size());
    token_to_id_.emplace(token, id);
    id_to_token_.push_back(std::move(token));
    return id;
}

std::vector<int64_t> WhitespaceTokenizer::encode(std::string_view text) {
    std::vector<int64_t> ids;
    size_t i = 0;
    while (i < text.size()) {
        size_t start = i;
        while (i < text.size() && is_space(text[i])) ++i;
        while (i < text.size() && !is_space(text[i])) ++i;
        ids.push_back(intern(std::string(text.substr(start, i - start))));
    }
    return ids;
}

std::string WhitespaceTokenizer::decode(std::span<const int64_t> ids) const {
    std::string out;
    for (int64_t id : ids) {
        if (id < 0 || static_cast<size_t>(id) >= id_to_token_.size())
            throw std::out_of_range("token id out of range: " + std::to_string(id));
        out += id_to_token_[static_cast<size_t>(id)];
    }
    return out;
}

FileVocabTokenizer::FileVocabTokenizer(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vocabulary file: " + path);
    name_ = "file-vocab:" + path;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string token;
        int64_t id;
        if (!(ss >> token >> id)) throw std::runtime_error("bad vocabulary line: " + line);
        token_to_id_[token] = id;
        id_to_token_[id] = token;
        if (token == "<pad>") pad_id_ = id;
        if (token == "<unk>") unk_id_ = id;
    }
}

std::vector<int64_t> FileVocabTokenizer::encode(std::string_view text) {
    std::vector<int64_t> ids;
    std::string word;
    auto flush = [&] {
        if (word.empty()) return;
        auto it = token_to_id_.find(word);
        if (it != token_to_id_.end()) {
            ids.push_back(it->second);
        } else if (unk_id_ >= 0) {
            ids.push_back(unk_id_);
        } else {
            throw std::runtime_error("out-of-vocabulary word with no <unk>: " + word);
        }
        word.clear();
    };
    for (char c : text) {
        if (is_space(c)) flush();
        else word.push_back(c);
    }
    flush();
    return ids;
}

std::string FileVocabTokenizer::decode(std::span<const int64_t> ids) const {
    std::string out;
    for (int64_t id : ids) {
        auto it = id_to_token_.find(id);
        if (it == id_to_token_.end())
            throw std::out_of_range("token id out of range: " + std::to_string(id));
        if (!out.empty()) out.push_back(' ');
        out += it->second;
    }
    return out;
}

std::unique_ptr<Tokenizer> make_tokenizer(const std::string& spec) {
    if (spec.empty() || spec == "whitespace") return std::make_unique<WhitespaceTokenizer>();
    if (spec.rfind("vocab:", 0) == 0) return std::make_unique<FileVocabTokenizer>(spec.substr(6));
    throw std::runtime_error("unknown tokenizer spec: " + spec);
}

}  // namespace telcokit
