#include "simt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "simt/errors.hpp"
#include "simt/utf8.hpp"

namespace simt {

namespace {

constexpr int kBleuOrder = 4;
constexpr int kChrfOrder = 6;
constexpr double kChrfBeta = 2.0;

using Tokens = std::vector<std::string>;
using NgramCounts = std::unordered_map<std::string, int>;

void check_corpus(std::size_t hyp_count, std::size_t ref_count) {
    if (hyp_count != ref_count) {
        throw DataError("hypothesis/reference length mismatch: " + std::to_string(hyp_count) +
                        " vs " + std::to_string(ref_count));
    }
    if (hyp_count == 0) throw DataError("empty corpus");
}

// N-grams keyed as tokens joined with an unlikely separator byte.
NgramCounts count_ngrams(const Tokens& tokens, int n) {
    NgramCounts counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
        std::string key;
        for (int k = 0; k < n; ++k) {
            if (k > 0) key.push_back('\x1f');
            key += tokens[i + static_cast<std::size_t>(k)];
        }
        ++counts[key];
    }
    return counts;
}

int clipped_matches(const NgramCounts& hyp, const NgramCounts& ref) {
    int matches = 0;
    for (const auto& [gram, count] : hyp) {
        auto it = ref.find(gram);
        if (it != ref.end()) matches += std::min(count, it->second);
    }
    return matches;
}

struct BleuStats {
    long long matches[kBleuOrder + 1] = {0};
    long long totals[kBleuOrder + 1] = {0};
    long long hyp_len = 0;
    long long ref_len = 0;

    void add(const Tokens& hyp, const Tokens& ref) {
        hyp_len += static_cast<long long>(hyp.size());
        ref_len += static_cast<long long>(ref.size());
        for (int n = 1; n <= kBleuOrder; ++n) {
            auto hn = count_ngrams(hyp, n);
            auto rn = count_ngrams(ref, n);
            matches[n] += clipped_matches(hn, rn);
            for (const auto& [gram, count] : hn) totals[n] += count;
        }
    }
};

double brevity_penalty(long long hyp_len, long long ref_len) {
    if (hyp_len == 0) return 0.0;
    if (hyp_len >= ref_len) return 1.0;
    return std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
}

double bleu_from_stats(const BleuStats& stats, bool smooth) {
    double log_sum = 0.0;
    int orders = 0;
    double smoothing = 1.0;
    for (int n = 1; n <= kBleuOrder; ++n) {
        if (stats.totals[n] == 0) continue;
        double p;
        if (stats.matches[n] == 0) {
            if (!smooth) return 0.0;
            smoothing *= 2.0;
            p = 1.0 / (smoothing * static_cast<double>(stats.totals[n]));
        } else {
            p = static_cast<double>(stats.matches[n]) / static_cast<double>(stats.totals[n]);
        }
        log_sum += std::log(p);
        ++orders;
    }
    if (orders == 0) return 0.0;
    return 100.0 * brevity_penalty(stats.hyp_len, stats.ref_len) *
           std::exp(log_sum / static_cast<double>(orders));
}

struct ChrfStats {
    long long matches[kChrfOrder + 1] = {0};
    long long hyp_totals[kChrfOrder + 1] = {0};
    long long ref_totals[kChrfOrder + 1] = {0};

    void add(const std::string& hyp, const std::string& ref) {
        Tokens hyp_chars = utf8_codepoints(strip_whitespace(hyp));
        Tokens ref_chars = utf8_codepoints(strip_whitespace(ref));
        for (int n = 1; n <= kChrfOrder; ++n) {
            auto hn = count_ngrams(hyp_chars, n);
            auto rn = count_ngrams(ref_chars, n);
            matches[n] += clipped_matches(hn, rn);
            for (const auto& [g, c] : hn) hyp_totals[n] += c;
            for (const auto& [g, c] : rn) ref_totals[n] += c;
        }
    }
};

double chrf_from_stats(const ChrfStats& stats) {
    double precision_sum = 0.0;
    double recall_sum = 0.0;
    int orders = 0;
    for (int n = 1; n <= kChrfOrder; ++n) {
        if (stats.hyp_totals[n] == 0 && stats.ref_totals[n] == 0) continue;
        precision_sum += stats.hyp_totals[n] > 0
                             ? static_cast<double>(stats.matches[n]) /
                                   static_cast<double>(stats.hyp_totals[n])
                             : 0.0;
        recall_sum += stats.ref_totals[n] > 0
                          ? static_cast<double>(stats.matches[n]) /
                                static_cast<double>(stats.ref_totals[n])
                          : 0.0;
        ++orders;
    }
    if (orders == 0) return 0.0;
    const double p = precision_sum / static_cast<double>(orders);
    const double r = recall_sum / static_cast<double>(orders);
    const double b2 = kChrfBeta * kChrfBeta;
    if (p + r == 0.0) return 0.0;
    return 100.0 * (1.0 + b2) * p * r / (b2 * p + r);
}

int levenshtein(const Tokens& a, const Tokens& b) {
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    std::vector<int> prev(n + 1);
    std::vector<int> cur(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= m; ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= n; ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

constexpr int kMaxShiftSpan = 10;

std::string join_key(const Tokens& tokens, std::size_t begin, std::size_t len) {
    std::string key;
    for (std::size_t k = 0; k < len; ++k) {
        if (k > 0) key.push_back('\x1f');
        key += tokens[begin + k];
    }
    return key;
}

// Edits for one sentence: greedy best-first shift search (each applied shift
// costs one edit and must strictly reduce the remaining edit distance),
// followed by plain token edit distance.
int ter_edits(Tokens hyp, const Tokens& ref, int max_shifts) {
    // Spans worth moving must occur verbatim in the reference.
    std::unordered_set<std::string> ref_spans;
    for (int n = 1; n <= kMaxShiftSpan; ++n) {
        if (static_cast<std::size_t>(n) > ref.size()) break;
        for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= ref.size(); ++i) {
            ref_spans.insert(join_key(ref, i, static_cast<std::size_t>(n)));
        }
    }

    int shifts = 0;
    int base = levenshtein(hyp, ref);
    while (shifts < max_shifts && base > 0 && hyp.size() > 1) {
        int best = base;
        Tokens best_hyp;
        for (std::size_t i = 0; i < hyp.size(); ++i) {
            const std::size_t max_len =
                std::min<std::size_t>(kMaxShiftSpan, hyp.size() - i);
            for (std::size_t len = 1; len <= max_len; ++len) {
                if (!ref_spans.count(join_key(hyp, i, len))) continue;
                Tokens removed;
                removed.reserve(hyp.size() - len);
                removed.insert(removed.end(), hyp.begin(),
                               hyp.begin() + static_cast<std::ptrdiff_t>(i));
                removed.insert(removed.end(),
                               hyp.begin() + static_cast<std::ptrdiff_t>(i + len), hyp.end());
                for (std::size_t j = 0; j <= removed.size(); ++j) {
                    if (j == i) continue; // no-op move
                    Tokens candidate;
                    candidate.reserve(hyp.size());
                    candidate.insert(candidate.end(), removed.begin(),
                                     removed.begin() + static_cast<std::ptrdiff_t>(j));
                    candidate.insert(candidate.end(),
                                     hyp.begin() + static_cast<std::ptrdiff_t>(i),
                                     hyp.begin() + static_cast<std::ptrdiff_t>(i + len));
                    candidate.insert(candidate.end(),
                                     removed.begin() + static_cast<std::ptrdiff_t>(j),
                                     removed.end());
                    const int d = levenshtein(candidate, ref);
                    if (d < best) {
                        best = d;
                        best_hyp = std::move(candidate);
                    }
                }
            }
        }
        if (best >= base) break;
        hyp = std::move(best_hyp);
        base = best;
        ++shifts;
    }
    return shifts + base;
}

} // namespace

double bleu_corpus(const std::vector<std::string>& hypotheses,
                   const std::vector<std::string>& references, LangProfile profile) {
    check_corpus(hypotheses.size(), references.size());
    BleuStats stats;
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        stats.add(profile_units(hypotheses[i], profile), profile_units(references[i], profile));
    }
    return bleu_from_stats(stats, /*smooth=*/false);
}

double bleu_sentence(const std::string& hypothesis, const std::string& reference,
                     LangProfile profile) {
    BleuStats stats;
    stats.add(profile_units(hypothesis, profile), profile_units(reference, profile));
    return bleu_from_stats(stats, /*smooth=*/true);
}

double chrf_corpus(const std::vector<std::string>& hypotheses,
                   const std::vector<std::string>& references) {
    check_corpus(hypotheses.size(), references.size());
    ChrfStats stats;
    for (std::size_t i = 0; i < hypotheses.size(); ++i) stats.add(hypotheses[i], references[i]);
    return chrf_from_stats(stats);
}

double chrf_sentence(const std::string& hypothesis, const std::string& reference) {
    ChrfStats stats;
    stats.add(hypothesis, reference);
    return chrf_from_stats(stats);
}

double ter_corpus(const std::vector<std::string>& hypotheses,
                  const std::vector<std::string>& references, LangProfile profile,
                  int max_shifts) {
    check_corpus(hypotheses.size(), references.size());
    long long edits = 0;
    long long ref_len = 0;
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        Tokens hyp = profile_units(hypotheses[i], profile);
        Tokens ref = profile_units(references[i], profile);
        edits += ter_edits(std::move(hyp), ref, max_shifts);
        ref_len += static_cast<long long>(ref.size());
    }
    if (ref_len == 0) throw DataError("empty reference corpus");
    return 100.0 * static_cast<double>(edits) / static_cast<double>(ref_len);
}

double ter_sentence(const std::string& hypothesis, const std::string& reference,
                    LangProfile profile, int max_shifts) {
    return ter_corpus({hypothesis}, {reference}, profile, max_shifts);
}

ScoreReport score_corpus(const std::vector<std::string>& hypotheses,
                         const std::vector<std::string>& references, LangProfile profile) {
    ScoreReport report;
    report.bleu = bleu_corpus(hypotheses, references, profile);
    report.chrf = chrf_corpus(hypotheses, references);
    report.ter = ter_corpus(hypotheses, references, profile);
    report.n_sentences = static_cast<int>(hypotheses.size());
    return report;
}

json ScoreReport::to_json() const {
    return {{"bleu", bleu}, {"chrf", chrf}, {"ter", ter}, {"n_sentences", n_sentences}};
}

} // namespace simt
