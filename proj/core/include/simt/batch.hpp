#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "simt/chat_client.hpp"
#include "simt/jsonl.hpp"
#include "simt/prompt.hpp"

namespace simt {

// One request of a batch job. custom_id is a non-reversible content hash of
// the normalized (trimmed) sentence, so resubmitting the same corpus always
// produces the same ids.
struct BatchRequest {
    std::string custom_id;
    std::string sentence;
    json body; // full chat-completion payload
};

struct BatchShard {
    std::string shard_id;
    std::vector<BatchRequest> requests;
};

struct BatchJob {
    std::vector<BatchShard> shards;
    std::size_t input_count = 0;   // sentences before trim/dedup
    std::size_t request_count = 0; // after trim/dedup

    std::vector<const BatchRequest*> all_requests() const;
};

// Trims sentences, removes exact duplicates in stable first-occurrence
// order, hashes each survivor to its custom_id, and splits into
// ceil(n / shard_size) shards.
BatchJob build_batch(const std::vector<std::string>& sentences, const PromptSpec& spec,
                     const InferenceConfig& config, int shard_size);

// shard_NNN.jsonl files, one {"custom_id","body"} line per request. Writing
// the same job twice produces byte-identical files.
std::vector<std::filesystem::path> write_shards(const BatchJob& job,
                                                const std::filesystem::path& dir);

// Merge of {"custom_id","response"} result files: one record per custom_id
// in first-seen order. Identical duplicates collapse; differing payloads for
// one id are kept (first wins) and reported as conflicts.
struct MergeResult {
    std::vector<json> records;
    std::vector<std::string> conflict_ids;
};

MergeResult merge_results(const std::vector<std::filesystem::path>& result_files);

} // namespace simt
