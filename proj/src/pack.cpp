#include "telcokit/pack.hpp"

#include <stdexcept>

namespace telcokit::pack {

nlohmann::json PackedBlock::to_json() const {
    nlohmann::json members_json = nlohmann::json::array();
    for (const auto& m : members)
        members_json.push_back({{"id", m.id}, {"start", m.start}, {"end", m.end}});
    return nlohmann::json{
        {"tokens", tokens},
        {"pad_count", pad_count},
        {"members", members_json},
    };
}

std::string format_instruction(const igen::InstructionRecord& rec) {
    std::string out = "[INST] " + rec.instruction;
    if (!rec.input.empty()) out += "\n\n" + rec.input;
    out += " [/INST] " + rec.output;
    return out;
}

std::vector<ChunkedDoc> chunk_raw(const std::vector<DocumentRecord>& docs, Tokenizer& tokenizer,
                                  size_t block_size, bool keep_remainder) {
    if (block_size < 1) throw std::invalid_argument("block_size must be >= 1");
    std::vector<ChunkedDoc> out;
    out.reserve(docs.size());
    for (const auto& doc : docs) {
        ChunkedDoc chunked;
        chunked.doc_id = doc.id;
        auto ids = tokenizer.encode(doc.text);
        size_t full = ids.size() / block_size;
        for (size_t c = 0; c < full; ++c) {
            chunked.chunks.emplace_back(ids.begin() + static_cast<long>(c * block_size),
                                        ids.begin() + static_cast<long>((c + 1) * block_size));
        }
        size_t remainder = ids.size() - full * block_size;
        if (remainder > 0) {
            if (keep_remainder) {
                std::vector<int64_t> tail(ids.end() - static_cast<long>(remainder), ids.end());
                tail.resize(block_size, tokenizer.pad_token());
                chunked.chunks.push_back(std::move(tail));
            } else {
                chunked.dropped_tail_tokens = remainder;
            }
        }
        out.push_back(std::move(chunked));
    }
    return out;
}

std::vector<PackedBlock> pack_blocks(const std::vector<igen::InstructionRecord>& records,
                                     Tokenizer& tokenizer, size_t block_size) {
    if (block_size < 1) throw std::invalid_argument("block_size must be >= 1");
    std::vector<PackedBlock> blocks;
    PackedBlock current;
    auto close_block = [&] {
        if (current.members.empty()) return;
        current.pad_count = block_size - current.tokens.size();
        current.tokens.resize(block_size, tokenizer.pad_token());
        blocks.push_back(std::move(current));
        current = PackedBlock{};
    };

    size_t seq = 0;
    for (const auto& rec : records) {
        std::string member_id = rec.meta.count("id") ? rec.meta.at("id")
                                                     : "record:" + std::to_string(seq);
        ++seq;
        auto ids = tokenizer.encode(format_instruction(rec));
        if (ids.size() > block_size)
            throw OverlongRecordError(member_id, ids.size(), block_size);
        if (current.tokens.size() + ids.size() > block_size) close_block();
        MemberSpan span;
        span.id = member_id;
        span.start = current.tokens.size();
        span.end = span.start + ids.size();
        current.tokens.insert(current.tokens.end(), ids.begin(), ids.end());
        current.members.push_back(std::move(span));
    }
    close_block();
    return blocks;
}

}  // namespace telcokit::pack
