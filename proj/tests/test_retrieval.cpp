#include "doctest.h"

#include <filesystem>
#include <set>

#include "simt/errors.hpp"
#include "simt/retrieval.hpp"

#include "support/generators.hpp"

using namespace simt;

namespace {

const std::filesystem::path kData = SIMT_DATA_DIR;

BankExample embedded(const std::string& id, std::vector<double> emb,
                     const std::string& cat = "") {
    BankExample ex;
    ex.id = id;
    ex.source_text = "src " + id;
    ex.target_text = "tgt " + id;
    if (!cat.empty()) ex.category = cat;
    ex.embedding = std::move(emb);
    return ex;
}

// Two well-separated blobs around (0,...) and (10,...).
ExampleBank planted_blobs(int per_blob, std::size_t dim, simt_test::Gen& gen) {
    ExampleBank bank;
    for (int b = 0; b < 2; ++b) {
        for (int i = 0; i < per_blob; ++i) {
            std::vector<double> emb(dim);
            for (auto& v : emb) v = 10.0 * b + gen.uniform(-0.5, 0.5);
            bank.examples.push_back(
                embedded("b" + std::to_string(b) + "_" + std::to_string(i), std::move(emb)));
        }
    }
    return bank;
}

std::vector<KeywordRule> toy_rules() {
    return {{"first", {"apple", "pear"}}, {"second", {"banana"}}, {"misc", {}}};
}

} // namespace

TEST_CASE("first matching rule wins, case-insensitively") {
    CHECK(classify_by_keywords("I like BANANA and apple pie", toy_rules()) == "first");
    CHECK(classify_by_keywords("banana split", toy_rules()) == "second");
    CHECK(classify_by_keywords("nothing matches here", toy_rules()) == "misc");
}

TEST_CASE("rule lists are validated") {
    CHECK_THROWS_AS(classify_by_keywords("x", {}), DataError);
    CHECK_THROWS_AS(classify_by_keywords("x", {{"no_fallback", {"kw"}}}), DataError);
}

TEST_CASE("shipped default rules classify a dev-style sentence by hand scan") {
    const auto rules = load_keyword_rules(kData / "rules" / "keyword_categories.json");
    // manual scan: no machine_translation/speech/representation keyword, then
    // "datasets" contains "dataset"
    CHECK(classify_by_keywords("We train the model on sixteen datasets.", rules) ==
          "data_resources");
    // rule order decides when several categories match
    CHECK(classify_by_keywords("the translation dataset", rules) == "machine_translation");
    CHECK(classify_by_keywords("completely unrelated words", rules) == "general");
}

TEST_CASE("k equal to the number of examples separates every point") {
    simt_test::Gen gen(333);
    ExampleBank bank;
    for (int i = 0; i < 5; ++i) {
        bank.examples.push_back(embedded("e" + std::to_string(i),
                                         {static_cast<double>(3 * i), 1.0}));
    }
    const auto model = kmeans_fit(bank, 5, 42);
    CHECK(model.distortion_trace.back() == doctest::Approx(0.0));
    std::set<int> clusters;
    for (const auto& [id, c] : model.assignments) clusters.insert(c);
    CHECK(clusters.size() == 5);
}

TEST_CASE("planted blobs are recovered for k=2") {
    simt_test::Gen gen(444);
    const auto bank = planted_blobs(6, 4, gen);
    const auto model = kmeans_fit(bank, 2, 7);
    const int blob0_cluster = model.assignments.at("b0_0");
    const int blob1_cluster = model.assignments.at("b1_0");
    CHECK(blob0_cluster != blob1_cluster);
    for (const auto& ex : bank.examples) {
        const int want = ex.id[1] == '0' ? blob0_cluster : blob1_cluster;
        CHECK(model.assignments.at(ex.id) == want);
    }
}

TEST_CASE("a fixed seed reproduces the model bit-exactly") {
    simt_test::Gen gen(555);
    const auto bank = planted_blobs(5, 3, gen);
    const auto a = kmeans_fit(bank, 3, 99);
    const auto b = kmeans_fit(bank, 3, 99);
    CHECK(a.centroids == b.centroids); // exact double equality
    CHECK(a.assignments == b.assignments);
}

TEST_CASE("distortion is non-increasing across iterations") {
    simt_test::Gen gen(666);
    for (int it = 0; it < 20; ++it) {
        ExampleBank bank;
        const int n = gen.uniform_int(6, 20);
        for (int i = 0; i < n; ++i) {
            bank.examples.push_back(embedded(
                "e" + std::to_string(i), {gen.uniform(0, 5), gen.uniform(0, 5)}));
        }
        const auto model = kmeans_fit(bank, gen.uniform_int(1, 4),
                                      static_cast<std::uint64_t>(it));
        for (std::size_t i = 1; i < model.distortion_trace.size(); ++i) {
            CHECK(model.distortion_trace[i] <= model.distortion_trace[i - 1] + 1e-9);
        }
    }
}

TEST_CASE("fit requires at least k embedded examples") {
    ExampleBank bank;
    bank.examples.push_back(embedded("a", {1.0}));
    CHECK_THROWS_AS(kmeans_fit(bank, 2, 0), DataError);
}

TEST_CASE("an exact-match query ranks its own example first") {
    simt_test::Gen gen(777);
    const auto bank = planted_blobs(4, 3, gen);
    const auto model = kmeans_fit(bank, 2, 11);
    const auto query = *bank.examples[5].embedding;
    const auto picked = retrieve_by_embedding(query, model, bank, 3);
    REQUIRE_FALSE(picked.empty());
    CHECK(picked[0].id == bank.examples[5].id);
}

TEST_CASE("a centroid query returns only members of its blob") {
    simt_test::Gen gen(888);
    const auto bank = planted_blobs(5, 4, gen);
    const auto model = kmeans_fit(bank, 2, 13);
    const std::vector<double> query(4, 10.0); // blob-1 center
    for (const auto& ex : retrieve_by_embedding(query, model, bank, 5)) {
        CHECK(ex.id.substr(0, 2) == "b1");
    }
}

TEST_CASE("every retrieved example belongs to the argmin cluster of the query") {
    simt_test::Gen gen(999);
    for (int it = 0; it < 30; ++it) {
        ExampleBank bank;
        const int n = gen.uniform_int(4, 15);
        for (int i = 0; i < n; ++i) {
            bank.examples.push_back(embedded(
                "e" + std::to_string(i), {gen.uniform(0, 8), gen.uniform(0, 8)}));
        }
        const int k = gen.uniform_int(1, 3);
        if (n < k) continue;
        const auto model = kmeans_fit(bank, k, static_cast<std::uint64_t>(it));
        const std::vector<double> query = {gen.uniform(0, 8), gen.uniform(0, 8)};
        const int want = model.nearest_centroid(query);
        for (const auto& ex : retrieve_by_embedding(query, model, bank, 4)) {
            CHECK(model.assignments.at(ex.id) == want);
        }
    }
}

TEST_CASE("keyword retrieval drains small pools in bank order") {
    ExampleBank bank;
    for (int i = 0; i < 4; ++i) {
        BankExample ex;
        ex.id = "e" + std::to_string(i);
        ex.source_text = "text";
        ex.target_text = "text";
        ex.category = i < 2 ? "second" : "first";
        bank.examples.push_back(ex);
    }
    const auto picked = retrieve_by_keywords("banana", toy_rules(), bank, 5);
    REQUIRE(picked.size() == 2);
    CHECK(picked[0].id == "e0");
    CHECK(picked[1].id == "e1");
}

TEST_CASE("embedding retrieval demands embeddings") {
    ExampleBank bank;
    BankExample ex;
    ex.id = "plain";
    bank.examples.push_back(ex);
    ClusterModel model;
    model.k = 1;
    model.centroids = {{0.0}};
    CHECK_THROWS_AS(retrieve_by_embedding({0.0}, model, bank, 1), DataError);
}

TEST_CASE("bank loading validates shared embedding dimensionality") {
    ExampleBank bank;
    bank.examples.push_back(embedded("a", {1.0, 2.0}));
    bank.examples.push_back(embedded("b", {1.0}));
    CHECK_THROWS_AS(bank.validate(), DataError);

    const auto shipped = load_bank(kData / "bank" / "example_bank.jsonl");
    CHECK(shipped.examples.size() == 10);
    CHECK(shipped.embedding_dim() == 4);
}
