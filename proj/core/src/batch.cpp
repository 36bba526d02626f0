#include "simt/batch.hpp"

#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "simt/errors.hpp"
#include "simt/sha256.hpp"

namespace simt {

namespace {

std::string trim_copy(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

std::vector<const BatchRequest*> BatchJob::all_requests() const {
    std::vector<const BatchRequest*> out;
    for (const auto& shard : shards) {
        for (const auto& req : shard.requests) out.push_back(&req);
    }
    return out;
}

BatchJob build_batch(const std::vector<std::string>& sentences, const PromptSpec& spec,
                     const InferenceConfig& config, int shard_size) {
    if (shard_size < 1) throw DataError("shard size must be >= 1");

    BatchJob job;
    job.input_count = sentences.size();
    const std::string system_prompt = render_prompt(spec, PromptMode::SingleShot);

    std::unordered_set<std::string> seen;
    std::vector<BatchRequest> requests;
    for (const auto& raw : sentences) {
        const std::string sentence = trim_copy(raw);
        if (sentence.empty()) continue;
        if (!seen.insert(sentence).second) continue;
        BatchRequest req;
        req.custom_id = content_id(sentence);
        req.sentence = sentence;
        req.body = {{"model", config.model},
                    {"messages",
                     json::array({json{{"role", "system"}, {"content", system_prompt}},
                                  json{{"role", "user"}, {"content", sentence}}})},
                    {"temperature", config.temperature},
                    {"top_p", config.top_p},
                    {"seed", config.seed},
                    {"max_tokens", config.max_tokens},
                    {"response_format", {{"type", "json_object"}}}};
        requests.push_back(std::move(req));
    }
    job.request_count = requests.size();

    for (std::size_t begin = 0; begin < requests.size();
         begin += static_cast<std::size_t>(shard_size)) {
        BatchShard shard;
        char name[32];
        std::snprintf(name, sizeof(name), "shard_%03zu", job.shards.size());
        shard.shard_id = name;
        const std::size_t end =
            std::min(requests.size(), begin + static_cast<std::size_t>(shard_size));
        for (std::size_t i = begin; i < end; ++i) shard.requests.push_back(requests[i]);
        job.shards.push_back(std::move(shard));
    }
    return job;
}

std::vector<std::filesystem::path> write_shards(const BatchJob& job,
                                                const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> paths;
    for (const auto& shard : job.shards) {
        std::vector<json> lines;
        lines.reserve(shard.requests.size());
        for (const auto& req : shard.requests) {
            lines.push_back({{"custom_id", req.custom_id}, {"body", req.body}});
        }
        const auto path = dir / (shard.shard_id + ".jsonl");
        write_jsonl(path, lines);
        paths.push_back(path);
    }
    return paths;
}

MergeResult merge_results(const std::vector<std::filesystem::path>& result_files) {
    MergeResult merged;
    std::unordered_map<std::string, std::size_t> index_of;
    std::unordered_set<std::string> conflicted;
    for (const auto& file : result_files) {
        read_jsonl(file, [&](const json& record, int line_no) {
            if (!record.contains("custom_id")) {
                throw DataError(file.string() + ":" + std::to_string(line_no) +
                                ": result record without custom_id");
            }
            const std::string id = record.at("custom_id").get<std::string>();
            auto it = index_of.find(id);
            if (it == index_of.end()) {
                index_of.emplace(id, merged.records.size());
                merged.records.push_back(record);
            } else if (merged.records[it->second] != record) {
                if (conflicted.insert(id).second) merged.conflict_ids.push_back(id);
            }
        });
    }
    return merged;
}

} // namespace simt
