#include "simt/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "simt/errors.hpp"
#include "simt/rng.hpp"

namespace simt {

namespace {

std::string ascii_lower(const std::string& text) {
    std::string out = text;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

constexpr int kMaxIterations = 100;

} // namespace

std::optional<std::size_t> ExampleBank::embedding_dim() const {
    for (const auto& ex : examples) {
        if (ex.embedding) return ex.embedding->size();
    }
    return std::nullopt;
}

void ExampleBank::validate() const {
    std::optional<std::size_t> dim;
    for (const auto& ex : examples) {
        if (!ex.embedding) continue;
        if (!dim) {
            dim = ex.embedding->size();
        } else if (*dim != ex.embedding->size()) {
            throw DataError("bank example '" + ex.id + "' has embedding dim " +
                            std::to_string(ex.embedding->size()) + ", expected " +
                            std::to_string(*dim));
        }
    }
}

std::string classify_by_keywords(const std::string& text,
                                 const std::vector<KeywordRule>& rules) {
    if (rules.empty()) throw DataError("empty keyword rule list");
    if (!rules.back().keywords.empty()) {
        throw DataError("last keyword rule must be the fallback (empty keyword list)");
    }
    const std::string haystack = ascii_lower(text);
    for (const auto& rule : rules) {
        if (rule.keywords.empty()) return rule.category; // fallback reached
        for (const auto& keyword : rule.keywords) {
            if (haystack.find(ascii_lower(keyword)) != std::string::npos) {
                return rule.category;
            }
        }
    }
    return rules.back().category;
}

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw DataError("embedding dimension mismatch: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

int ClusterModel::nearest_centroid(const std::vector<double>& query) const {
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int c = 0; c < static_cast<int>(centroids.size()); ++c) {
        const double d = squared_distance(query, centroids[static_cast<std::size_t>(c)]);
        if (d < best_dist) {
            best_dist = d;
            best = c;
        }
    }
    return best;
}

ClusterModel kmeans_fit(const ExampleBank& bank, int k, std::uint64_t seed) {
    bank.validate();
    std::vector<const BankExample*> embedded;
    for (const auto& ex : bank.examples) {
        if (ex.embedding) embedded.push_back(&ex);
    }
    if (k < 1) throw DataError("k must be >= 1");
    if (static_cast<int>(embedded.size()) < k) {
        throw DataError("k-means needs at least k=" + std::to_string(k) +
                        " embedded examples, bank has " + std::to_string(embedded.size()));
    }

    // Seeded draw of k distinct example indices, in draw order.
    SplitMix64 rng(seed);
    std::vector<std::size_t> pool(embedded.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    ClusterModel model;
    model.k = k;
    for (int c = 0; c < k; ++c) {
        const std::size_t pick =
            static_cast<std::size_t>(rng.next_below(pool.size() - static_cast<std::size_t>(c))) +
            static_cast<std::size_t>(c);
        std::swap(pool[static_cast<std::size_t>(c)], pool[pick]);
        model.centroids.push_back(*embedded[pool[static_cast<std::size_t>(c)]]->embedding);
    }

    std::vector<int> assignment(embedded.size(), -1);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        bool changed = false;
        double distortion = 0.0;
        for (std::size_t i = 0; i < embedded.size(); ++i) {
            const int c = model.nearest_centroid(*embedded[i]->embedding);
            distortion += squared_distance(*embedded[i]->embedding,
                                           model.centroids[static_cast<std::size_t>(c)]);
            if (assignment[i] != c) {
                assignment[i] = c;
                changed = true;
            }
        }
        model.distortion_trace.push_back(distortion);
        if (!changed) break;

        const std::size_t dim = model.centroids[0].size();
        std::vector<std::vector<double>> sums(static_cast<std::size_t>(k),
                                              std::vector<double>(dim, 0.0));
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < embedded.size(); ++i) {
            const auto c = static_cast<std::size_t>(assignment[i]);
            ++counts[c];
            for (std::size_t d = 0; d < dim; ++d) sums[c][d] += (*embedded[i]->embedding)[d];
        }
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
            if (counts[c] == 0) continue; // empty cluster keeps its centroid
            for (std::size_t d = 0; d < dim; ++d) {
                model.centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
            }
        }
    }

    for (std::size_t i = 0; i < embedded.size(); ++i) {
        model.assignments[embedded[i]->id] = assignment[i];
    }
    return model;
}

std::vector<BankExample> retrieve_by_embedding(const std::vector<double>& query,
                                               const ClusterModel& model,
                                               const ExampleBank& bank, int n) {
    if (n < 1) throw DataError("retrieval count must be >= 1");
    if (model.centroids.empty()) throw DataError("cluster model has no centroids");
    bool any_embedding = false;
    for (const auto& ex : bank.examples) {
        if (ex.embedding) any_embedding = true;
    }
    if (!any_embedding) throw DataError("bank has no embeddings for the embedding path");

    const int cluster = model.nearest_centroid(query);
    std::vector<std::pair<double, std::size_t>> candidates; // (distance, bank index)
    for (std::size_t i = 0; i < bank.examples.size(); ++i) {
        const auto& ex = bank.examples[i];
        if (!ex.embedding) continue;
        auto it = model.assignments.find(ex.id);
        if (it == model.assignments.end() || it->second != cluster) continue;
        candidates.emplace_back(squared_distance(query, *ex.embedding), i);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) {
                         if (a.first != b.first) return a.first < b.first;
                         return a.second < b.second;
                     });
    std::vector<BankExample> out;
    for (std::size_t i = 0; i < candidates.size() && static_cast<int>(out.size()) < n; ++i) {
        out.push_back(bank.examples[candidates[i].second]);
    }
    return out;
}

std::vector<BankExample> retrieve_by_keywords(const std::string& query_text,
                                              const std::vector<KeywordRule>& rules,
                                              const ExampleBank& bank, int n) {
    if (n < 1) throw DataError("retrieval count must be >= 1");
    const std::string category = classify_by_keywords(query_text, rules);
    std::vector<BankExample> out;
    for (const auto& ex : bank.examples) {
        if (ex.category == category) {
            out.push_back(ex);
            if (static_cast<int>(out.size()) == n) break;
        }
    }
    return out;
}

ExampleBank load_bank(const std::filesystem::path& path) {
    ExampleBank bank;
    read_jsonl(path, [&](const json& record, int line_no) {
        try {
            BankExample ex;
            ex.id = record.at("id").get<std::string>();
            ex.source_text = record.at("src").get<std::string>();
            ex.target_text = record.at("tgt").get<std::string>();
            if (record.contains("cat") && !record.at("cat").is_null()) {
                ex.category = record.at("cat").get<std::string>();
            }
            if (record.contains("emb") && !record.at("emb").is_null()) {
                std::vector<double> emb;
                for (const auto& v : record.at("emb")) emb.push_back(v.get<double>());
                ex.embedding = std::move(emb);
            }
            bank.examples.push_back(std::move(ex));
        } catch (const json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": bad bank record: " + e.what());
        }
    });
    bank.validate();
    return bank;
}

json bank_example_to_json(const BankExample& example) {
    json j = {{"id", example.id}, {"src", example.source_text}, {"tgt", example.target_text}};
    if (example.category) j["cat"] = *example.category;
    if (example.embedding) j["emb"] = *example.embedding;
    return j;
}

std::vector<KeywordRule> load_keyword_rules(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": invalid JSON: " + e.what());
    }
    if (!doc.is_array() || doc.empty()) {
        throw DataError(path.string() + ": rules file must be a non-empty JSON array");
    }
    std::vector<KeywordRule> rules;
    for (const auto& entry : doc) {
        KeywordRule rule;
        rule.category = entry.at("cat").get<std::string>();
        for (const auto& k : entry.at("keywords")) rule.keywords.push_back(k.get<std::string>());
        rules.push_back(std::move(rule));
    }
    if (!rules.back().keywords.empty()) {
        throw DataError(path.string() + ": last rule must be the fallback (empty keyword list)");
    }
    return rules;
}

} // namespace simt
