#pragma once

#include <string>
#include <vector>

#include "simt/jsonl.hpp"
#include "simt/lang.hpp"

namespace simt {

// Surface-overlap quality scores for one hypothesis/reference corpus.
// TER is a percentage of reference length and exceeds 100 when the edit
// count is larger than the reference.
struct ScoreReport {
    double bleu = 0.0;   // [0, 100]
    double chrf = 0.0;   // [0, 100]
    double ter = 0.0;    // >= 0, unbounded above
    int n_sentences = 0;

    json to_json() const;
};

// Corpus BLEU: modified 4-gram precisions pooled over the corpus, brevity
// penalty, no smoothing. Orders with no hypothesis n-grams anywhere are
// dropped from the geometric mean (effective order).
double bleu_corpus(const std::vector<std::string>& hypotheses,
                   const std::vector<std::string>& references,
                   LangProfile profile);

// Sentence BLEU for diagnostics, with exponential smoothing: the k-th order
// whose match count is zero contributes 1/(2^k * total) instead of zero.
double bleu_sentence(const std::string& hypothesis, const std::string& reference,
                     LangProfile profile);

// chrF: character n-gram F-score, n = 1..6, beta = 2, whitespace removed.
// Orders with no n-grams on either side are skipped.
double chrf_corpus(const std::vector<std::string>& hypotheses,
                   const std::vector<std::string>& references);
double chrf_sentence(const std::string& hypothesis, const std::string& reference);

// TER with greedy shift search (at most max_shifts shifts per sentence, each
// costing one edit), then token-level edit distance. Corpus TER is
// 100 * total_edits / total_reference_length.
double ter_corpus(const std::vector<std::string>& hypotheses,
                  const std::vector<std::string>& references,
                  LangProfile profile, int max_shifts = 10);
double ter_sentence(const std::string& hypothesis, const std::string& reference,
                    LangProfile profile, int max_shifts = 10);

ScoreReport score_corpus(const std::vector<std::string>& hypotheses,
                         const std::vector<std::string>& references,
                         LangProfile profile);

} // namespace simt
