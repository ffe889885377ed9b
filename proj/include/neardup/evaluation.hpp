#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "neardup/lsh_index.hpp"
#include "neardup/synth.hpp"

namespace neardup {

/// How per-document duplicate scores are produced.
///  - stream: query-before-insert in corpus order; a document is scored
///    against documents that precede it, mirroring a deduplication pass
///    where the first occurrence is kept. This is the default for
///    benchmark evaluation (originals precede their duplicates).
///  - all_pairs: score against every co-bucketed document in the full
///    index, symmetric in both directions.
enum class ScoreMode : std::uint8_t { stream = 0, all_pairs = 1 };

std::string to_string(ScoreMode mode);
ScoreMode score_mode_from_string(std::string_view name);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

struct EvalReport {
    LshParams params;
    std::uint64_t family_seed = 0;
    ScoreMode score_mode = ScoreMode::stream;
    double auc = 0.0;
    std::vector<RocPoint> roc;
    double build_seconds = 0.0;
    double scan_seconds = 0.0;
    std::size_t doc_count = 0;
    std::size_t duplicate_pairs_found = 0;
};

struct SweepGrid {
    std::vector<std::uint32_t> permutation_values;
    std::vector<std::uint32_t> ngram_values;
    std::vector<double> threshold_values;

    void validate() const;
    std::size_t cell_count() const noexcept {
        return permutation_values.size() * ngram_values.size() * threshold_values.size();
    }
};

/// One sweep cell: either a report or the error that failed it.
struct SweepCell {
    LshParams params;
    std::size_t grid_index = 0;
    std::optional<EvalReport> report;
    std::string error;
};

struct EvalOptions {
    std::uint64_t family_seed = 1;
    ScoreMode score_mode = ScoreMode::stream;
    unsigned workers = 1;
};

/// Fills in the banding layout for (permutations, ngram, threshold) via
/// choose_bands.
LshParams make_params(std::uint32_t permutations, std::uint32_t ngram, double threshold,
                      VerifyMode verify_mode = VerifyMode::exact);

/// Max verified similarity over each document's candidates (0 without
/// candidates), against the full index. The index must contain exactly the
/// corpus documents.
std::unordered_map<std::string, double> score_documents(const LshIndex& index,
                                                        const LabeledCorpus& corpus);

/// ROC points and trapezoidal AUC for duplicate-vs-original scores. Equal
/// scores are processed as one block. Throws if either class is missing or
/// the key sets differ.
std::pair<std::vector<RocPoint>, double> compute_roc_auc(
    const std::unordered_map<std::string, double>& scores,
    const std::unordered_map<std::string, Label>& labels);

/// Builds an index over the corpus (timed), scores documents and runs the
/// duplicate scan (timed), and assembles ROC/AUC.
EvalReport evaluate(const LabeledCorpus& corpus, LshParams params,
                    const EvalOptions& opts = {});

/// Evaluates every cell of the three-hyperparameter grid in deterministic
/// grid order; cells are returned sorted by descending AUC (failed cells
/// last, in grid order) with per-cell errors recorded rather than dropped.
std::vector<SweepCell> sweep(const LabeledCorpus& corpus, const SweepGrid& grid,
                             VerifyMode verify_mode = VerifyMode::exact,
                             const EvalOptions& opts = {});

/// Fraction of documents that are non-representative members of some
/// duplicate cluster.
double duplication_percentage(const std::vector<Document>& corpus, LshParams params,
                              std::uint64_t family_seed = 1, unsigned workers = 1);

}  // namespace neardup
