#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "simt/batch.hpp"
#include "simt/errors.hpp"
#include "simt/sha256.hpp"

using namespace simt;

namespace {

PromptSpec bare_spec() {
    return PromptSpec{}; // READ/WRITE only; no stats needed
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("sha256 matches the published test vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    CHECK(content_id("abc") == "ba7816bf8f01cfea");
}

TEST_CASE("trim and dedup keep first occurrences") {
    const auto job = build_batch({"a", "a ", "b", " a", "", "  "}, bare_spec(), {}, 10);
    CHECK(job.input_count == 6);
    CHECK(job.request_count == 2);
    const auto reqs = job.all_requests();
    CHECK(reqs[0]->sentence == "a");
    CHECK(reqs[1]->sentence == "b");
}

TEST_CASE("custom ids depend only on the normalized text") {
    const auto a = build_batch({"hello world"}, bare_spec(), {}, 1);
    const auto b = build_batch({"  hello world  ", "x"}, bare_spec(), {}, 7);
    CHECK(a.all_requests()[0]->custom_id == b.all_requests()[0]->custom_id);
    CHECK(a.all_requests()[0]->custom_id == content_id("hello world"));
    CHECK(a.all_requests()[0]->custom_id.size() == 16);
}

TEST_CASE("five sentences shard into sizes 2,2,1") {
    const auto job = build_batch({"s1", "s2", "s3", "s4", "s5"}, bare_spec(), {}, 2);
    REQUIRE(job.shards.size() == 3);
    CHECK(job.shards[0].requests.size() == 2);
    CHECK(job.shards[1].requests.size() == 2);
    CHECK(job.shards[2].requests.size() == 1);
    CHECK(job.shards[0].shard_id == "shard_000");
    CHECK(job.shards[2].shard_id == "shard_002");
    CHECK_THROWS_AS(build_batch({"x"}, bare_spec(), {}, 0), DataError);
}

TEST_CASE("request bodies carry the single-shot prompt and decoding controls") {
    InferenceConfig config;
    config.model = "test-model";
    config.seed = 5;
    const auto job = build_batch({"a sentence"}, bare_spec(), config, 4);
    const auto& body = job.all_requests()[0]->body;
    CHECK(body.at("model") == "test-model");
    CHECK(body.at("seed") == 5);
    CHECK(body.at("response_format").at("type") == "json_object");
    CHECK(body.at("messages").size() == 2);
    CHECK(body.at("messages").at(1).at("content") == "a sentence");
}

TEST_CASE("writing the same job twice is byte-identical") {
    std::vector<std::string> sentences;
    for (int i = 0; i < 40; ++i) sentences.push_back("sentence " + std::to_string(i % 30));
    const auto dir_a = temp_dir("simt_batch_a");
    const auto dir_b = temp_dir("simt_batch_b");
    const auto job_a = build_batch(sentences, bare_spec(), {}, 8);
    const auto job_b = build_batch(sentences, bare_spec(), {}, 8);
    const auto paths_a = write_shards(job_a, dir_a);
    const auto paths_b = write_shards(job_b, dir_b);
    REQUIRE(paths_a.size() == paths_b.size());
    CHECK(job_a.request_count == 30); // duplicates collapsed
    for (std::size_t i = 0; i < paths_a.size(); ++i) {
        CHECK(slurp(paths_a[i]) == slurp(paths_b[i]));
    }
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("merge unions disjoint files and collapses identical records") {
    const auto dir = temp_dir("simt_merge");
    std::filesystem::create_directories(dir);
    write_jsonl(dir / "r1.jsonl", {{{"custom_id", "a"}, {"response", 1}},
                                   {{"custom_id", "b"}, {"response", 2}}});
    write_jsonl(dir / "r2.jsonl", {{{"custom_id", "b"}, {"response", 2}},
                                   {{"custom_id", "c"}, {"response", 3}}});
    const auto merged = merge_results({dir / "r1.jsonl", dir / "r2.jsonl"});
    REQUIRE(merged.records.size() == 3);
    CHECK(merged.conflict_ids.empty());
    CHECK(merged.records[0].at("custom_id") == "a");
    CHECK(merged.records[2].at("custom_id") == "c");
    std::filesystem::remove_all(dir);
}

TEST_CASE("conflicting payloads are reported by custom_id, first one kept") {
    const auto dir = temp_dir("simt_merge_conflict");
    std::filesystem::create_directories(dir);
    write_jsonl(dir / "r1.jsonl", {{{"custom_id", "a"}, {"response", 1}}});
    write_jsonl(dir / "r2.jsonl", {{{"custom_id", "a"}, {"response", 999}}});
    const auto merged = merge_results({dir / "r1.jsonl", dir / "r2.jsonl"});
    REQUIRE(merged.records.size() == 1);
    CHECK(merged.records[0].at("response") == 1);
    REQUIRE(merged.conflict_ids.size() == 1);
    CHECK(merged.conflict_ids[0] == "a");
    std::filesystem::remove_all(dir);
}
