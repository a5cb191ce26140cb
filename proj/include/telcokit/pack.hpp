#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "telcokit/document.hpp"
#include "telcokit/instructgen.hpp"
#include "telcokit/tokenizer.hpp"

namespace telcokit::pack {

inline constexpr size_t kDefaultBlockSize = 4096;

struct MemberSpan {
    std::string id;
    size_t start = 0;  // token offsets within the block, [start, end)
    size_t end = 0;
};

struct PackedBlock {
    std::vector<int64_t> tokens;  // exactly block_size long
    size_t pad_count = 0;         // pads occupy only the tail
    std::vector<MemberSpan> members;

    nlohmann::json to_json() const;
};

struct ChunkedDoc {
    std::string doc_id;
    std::vector<std::vector<int64_t>> chunks;  // each exactly block_size (unless padded tail kept)
    size_t dropped_tail_tokens = 0;
};

// Frozen byte layout: "[INST] " + instruction ("\n\n" + input when input is
// non-empty) + " [/INST] " + output.
std::string format_instruction(const igen::InstructionRecord& rec);

// Per-document tokenization and contiguous segmentation. The trailing
// remainder is dropped by default; keep_remainder pads it to block_size.
std::vector<ChunkedDoc> chunk_raw(const std::vector<DocumentRecord>& docs, Tokenizer& tokenizer,
                                  size_t block_size = kDefaultBlockSize,
                                  bool keep_remainder = false);

// Thrown when a single formatted record exceeds the block size; packing has
// no truncation rule, the caller must shorten or drop the record.
class OverlongRecordError : public std::runtime_error {
public:
    OverlongRecordError(std::string id, size_t tokens, size_t block_size)
        : std::runtime_error("record " + id + " tokenizes to " + std::to_string(tokens) +
                             " tokens, above block size " + std::to_string(block_size)),
          id_(std::move(id)) {}
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

// Greedy in-order packing; a record never straddles two blocks, block tails
// are padded with the tokenizer's pad id.
std::vector<PackedBlock> pack_blocks(const std::vector<igen::InstructionRecord>& records,
                                     Tokenizer& tokenizer,
                                     size_t block_size = kDefaultBlockSize);

}  // namespace telcokit::pack
