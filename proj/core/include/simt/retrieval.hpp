#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simt/jsonl.hpp"

namespace simt {

// A demonstration example: source/target pair with an optional category
// label and an optional embedding vector supplied by an external encoder.
struct BankExample {
    std::string id;
    std::string source_text;
    std::string target_text;
    std::optional<std::string> category;
    std::optional<std::vector<double>> embedding;
};

// Validates that all present embeddings share one dimensionality.
struct ExampleBank {
    std::vector<BankExample> examples;

    std::optional<std::size_t> embedding_dim() const;
    void validate() const;
};

// Ordered keyword rules; the final rule must have an empty keyword list and
// names the fallback category.
struct KeywordRule {
    std::string category;
    std::vector<std::string> keywords;
};

// First rule with any case-insensitive keyword hit wins; fallback otherwise.
std::string classify_by_keywords(const std::string& text,
                                 const std::vector<KeywordRule>& rules);

// K-means over the bank's embedded examples. Assignments map example ids to
// the argmin-distance cluster, ties broken by lowest cluster id.
struct ClusterModel {
    int k = 0;
    std::vector<std::vector<double>> centroids;
    std::map<std::string, int> assignments;
    std::vector<double> distortion_trace; // total in-cluster squared distance per iteration

    int nearest_centroid(const std::vector<double>& query) const;
};

// Lloyd's iterations from a seeded initialization (k distinct examples)
// until the assignment fixpoint or 100 iterations. Fully deterministic for a
// fixed (bank, k, seed).
ClusterModel kmeans_fit(const ExampleBank& bank, int k, std::uint64_t seed);

// Embedding path: nearest centroid, then the n nearest embedded examples of
// that cluster (ties by bank order). Returns fewer when the pool is smaller.
std::vector<BankExample> retrieve_by_embedding(const std::vector<double>& query,
                                               const ClusterModel& model,
                                               const ExampleBank& bank, int n);

// Keyword path: classify, then the first n bank examples of that category.
std::vector<BankExample> retrieve_by_keywords(const std::string& query_text,
                                              const std::vector<KeywordRule>& rules,
                                              const ExampleBank& bank, int n);

double squared_distance(const std::vector<double>& a, const std::vector<double>& b);

// --- file formats ----------------------------------------------------------
// Bank JSONL:  {"id": "...", "src": "...", "tgt": "...", "cat": "..."?, "emb": [..]?}
// Rules file:  JSON array [{"cat": "...", "keywords": [...]}, ..., {"cat": "...", "keywords": []}]

ExampleBank load_bank(const std::filesystem::path& path);
json bank_example_to_json(const BankExample& example);

std::vector<KeywordRule> load_keyword_rules(const std::filesystem::path& path);

} // namespace simt
