#include "neardup/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "neardup/detail/parallel.hpp"

namespace neardup {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string to_string(ScoreMode mode) {
    return mode == ScoreMode::stream ? "stream" : "all-pairs";
}

ScoreMode score_mode_from_string(std::string_view name) {
    if (name == "stream") return ScoreMode::stream;
    if (name == "all-pairs") return ScoreMode::all_pairs;
    throw std::invalid_argument("unknown score mode: " + std::string(name));
}

void SweepGrid::validate() const {
    auto check_unique = [](const auto& values, const char* what) {
        if (values.empty()) throw std::invalid_argument(std::string("SweepGrid: empty ") + what);
        auto sorted = values;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument(std::string("SweepGrid: duplicate ") + what);
        }
    };
    check_unique(permutation_values, "permutation values");
    check_unique(ngram_values, "ngram values");
    check_unique(threshold_values, "threshold values");
    for (const double t : threshold_values) {
        if (!(t > 0.0 && t < 1.0)) {
            throw std::invalid_argument("SweepGrid: thresholds must be in (0,1)");
        }
    }
}

LshParams make_params(std::uint32_t permutations, std::uint32_t ngram, double threshold,
                      VerifyMode verify_mode) {
    LshParams params;
    params.permutations = permutations;
    params.ngram = ngram;
    params.threshold = threshold;
    params.verify_mode = verify_mode;
    const BandChoice choice = choose_bands(permutations, threshold);
    params.bands = choice.bands;
    params.rows = choice.rows;
    params.validate();
    return params;
}

std::unordered_map<std::string, double> score_documents(const LshIndex& index,
                                                        const LabeledCorpus& corpus) {
    if (index.size() != corpus.documents.size()) {
        throw std::invalid_argument("score_documents: index and corpus sizes differ");
    }
    std::unordered_map<std::string, double> scores;
    scores.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents) {
        const auto self = index.index_of(doc.id);
        if (!self) throw std::invalid_argument("score_documents: " + doc.id + " not in index");
        double best = 0.0;
        for (const std::uint32_t other : index.probe(index.signature(*self))) {
            if (other == *self) continue;
            best = std::max(best, index.similarity(other, *self));
        }
        scores.emplace(doc.id, best);
    }
    return scores;
}

std::pair<std::vector<RocPoint>, double> compute_roc_auc(
    const std::unordered_map<std::string, double>& scores,
    const std::unordered_map<std::string, Label>& labels) {
    if (scores.size() != labels.size()) {
        throw std::invalid_argument("compute_roc_auc: score/label key sets differ");
    }
    std::vector<std::pair<double, bool>> items;  // (score, is_duplicate)
    items.reserve(scores.size());
    std::size_t positives = 0;
    for (const auto& [id, score] : scores) {
        const auto it = labels.find(id);
        if (it == labels.end()) {
            throw std::invalid_argument("compute_roc_auc: no label for " + id);
        }
        const bool dup = it->second == Label::duplicate;
        positives += dup ? 1 : 0;
        items.emplace_back(score, dup);
    }
    const std::size_t negatives = items.size() - positives;
    if (positives == 0 || negatives == 0) {
        throw std::invalid_argument("compute_roc_auc: AUC undefined for single-class input");
    }

    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<RocPoint> roc;
    roc.push_back({0.0, 0.0});
    std::size_t tp = 0;
    std::size_t fp = 0;
    double auc = 0.0;
    std::size_t i = 0;
    while (i < items.size()) {
        // One block per distinct score value, so ties contribute a single
        // diagonal segment instead of an order-dependent staircase.
        std::size_t j = i;
        while (j < items.size() && items[j].first == items[i].first) {
            tp += items[j].second ? 1 : 0;
            fp += items[j].second ? 0 : 1;
            ++j;
        }
        const RocPoint prev = roc.back();
        const RocPoint next{static_cast<double>(fp) / static_cast<double>(negatives),
                            static_cast<double>(tp) / static_cast<double>(positives)};
        auc += (next.fpr - prev.fpr) * (next.tpr + prev.tpr) / 2.0;
        roc.push_back(next);
        i = j;
    }
    return {std::move(roc), auc};
}

EvalReport evaluate(const LabeledCorpus& corpus, LshParams params, const EvalOptions& opts) {
    params.validate();
    EvalReport report;
    report.params = params;
    report.family_seed = opts.family_seed;
    report.score_mode = opts.score_mode;
    report.doc_count = corpus.documents.size();

    // Build phase: shingle and sign every document (parallel).
    const auto build_start = Clock::now();
    const HashFamily family = make_family(params.permutations, opts.family_seed);
    std::vector<ShingleSet> sets(corpus.documents.size());
    std::vector<MinHashSignature> sigs(corpus.documents.size());
    detail::parallel_for(corpus.documents.size(), opts.workers, [&](std::size_t i) {
        sets[i] = shingle(corpus.documents[i], params.ngram);
        sigs[i] = sign(sets[i], family);
    });
    LshIndex index(params, opts.family_seed);
    report.build_seconds = seconds_since(build_start);

    // Scan phase: bucket + score, then the full duplicate scan.
    const auto scan_start = Clock::now();
    std::unordered_map<std::string, double> scores;
    scores.reserve(corpus.documents.size());
    if (opts.score_mode == ScoreMode::stream) {
        for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
            double best = 0.0;
            for (const std::uint32_t prior : index.probe(sigs[i])) {
                const double sim =
                    params.verify_mode == VerifyMode::exact
                        ? exact_jaccard(sets[i], index.shingles(prior))
                        : estimate_jaccard(sigs[i], index.signature(prior));
                best = std::max(best, sim);
            }
            scores.emplace(corpus.documents[i].id, best);
            index.insert_set(std::move(sets[i]));
        }
    } else {
        for (auto& set : sets) index.insert_set(std::move(set));
        scores = score_documents(index, corpus);
    }
    const DedupResult dedup = index.dedup_scan();
    report.duplicate_pairs_found = dedup.pairs.size();
    report.scan_seconds = seconds_since(scan_start);

    auto [roc, auc] = compute_roc_auc(scores, corpus.labels);
    report.roc = std::move(roc);
    report.auc = auc;
    return report;
}

std::vector<SweepCell> sweep(const LabeledCorpus& corpus, const SweepGrid& grid,
                             VerifyMode verify_mode, const EvalOptions& opts) {
    grid.validate();
    std::vector<SweepCell> cells;
    cells.reserve(grid.cell_count());
    std::size_t grid_index = 0;
    for (const std::uint32_t k : grid.permutation_values) {
        for (const std::uint32_t n : grid.ngram_values) {
            for (const double t : grid.threshold_values) {
                SweepCell cell;
                cell.grid_index = grid_index++;
                try {
                    cell.params = make_params(k, n, t, verify_mode);
                    cell.report = evaluate(corpus, cell.params, opts);
                } catch (const std::exception& e) {
                    cell.error = e.what();
                }
                cells.push_back(std::move(cell));
            }
        }
    }
    std::stable_sort(cells.begin(), cells.end(), [](const SweepCell& a, const SweepCell& b) {
        const bool a_ok = a.report.has_value();
        const bool b_ok = b.report.has_value();
        if (a_ok != b_ok) return a_ok;
        if (!a_ok) return a.grid_index < b.grid_index;
        if (a.report->auc != b.report->auc) return a.report->auc > b.report->auc;
        return a.grid_index < b.grid_index;
    });
    return cells;
}

double duplication_percentage(const std::vector<Document>& corpus, LshParams params,
                              std::uint64_t family_seed, unsigned workers) {
    params.validate();
    if (corpus.empty()) return 0.0;
    LshIndex index(params, family_seed);
    index.build(corpus, workers);
    const DedupResult dedup = index.dedup_scan();
    std::size_t removable = 0;
    for (const auto& cluster : dedup.clusters) removable += cluster.removable.size();
    return static_cast<double>(removable) / static_cast<double>(corpus.size());
}

}  // namespace neardup
