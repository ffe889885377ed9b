#include "neardup/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "neardup/detail/parallel.hpp"
#include "neardup/minhash.hpp"

namespace neardup {

std::string to_string(Label label) {
    return label == Label::original ? "original" : "duplicate";
}

Label label_from_string(std::string_view name) {
    if (name == "original") return Label::original;
    if (name == "duplicate") return Label::duplicate;
    throw std::invalid_argument("unknown label: " + std::string(name));
}

std::string to_string(ResemblanceMetric metric) {
    return metric == ResemblanceMetric::word_set ? "word-set" : "char-ngram";
}

ResemblanceMetric resemblance_metric_from_string(std::string_view name) {
    if (name == "word-set") return ResemblanceMetric::word_set;
    if (name == "char-ngram") return ResemblanceMetric::char_ngram;
    throw std::invalid_argument("unknown resemblance metric: " + std::string(name));
}

void SynthConfig::validate() const {
    if (!(duplicate_fraction > 0.0 && duplicate_fraction < 1.0)) {
        throw std::invalid_argument("SynthConfig: duplicate_fraction must be in (0,1)");
    }
    if (!(resemblance_low > 0.0 && resemblance_low < resemblance_high &&
          resemblance_high < 1.0)) {
        throw std::invalid_argument("SynthConfig: need 0 < resemblance_low < resemblance_high < 1");
    }
    if (donor_pool_size == 0 || donor_article_count == 0) {
        throw std::invalid_argument("SynthConfig: donor pool sizes must be positive");
    }
    if (donor_len_min == 0 || donor_len_min > donor_len_max) {
        throw std::invalid_argument("SynthConfig: invalid donor sentence length range");
    }
    if (min_sentences < 2) throw std::invalid_argument("SynthConfig: min_sentences too small");
    if (max_attempts == 0) throw std::invalid_argument("SynthConfig: max_attempts must be positive");
    if (metric == ResemblanceMetric::char_ngram && metric_ngram == 0) {
        throw std::invalid_argument("SynthConfig: metric_ngram must be positive");
    }
}

bool LabeledCorpus::is_duplicate(const std::string& id) const {
    const auto it = labels.find(id);
    return it != labels.end() && it->second == Label::duplicate;
}

namespace {

// Hashed word-unigram set of the normalized text.
std::vector<std::uint64_t> word_set(std::string_view text) {
    const std::string norm = normalize(text);
    std::vector<std::uint64_t> words;
    std::size_t start = 0;
    const std::string_view view = norm;
    while (start < view.size()) {
        std::size_t end = view.find(' ', start);
        if (end == std::string_view::npos) end = view.size();
        if (end > start) {
            words.push_back(detail::hash_bytes(view.substr(start, end - start),
                                               detail::kDigestSeed));
        }
        start = end + 1;
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

double sorted_jaccard(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::size_t inter = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

}  // namespace

double resemblance(std::string_view a, std::string_view b, ResemblanceMetric metric,
                   std::uint32_t metric_ngram) {
    if (metric == ResemblanceMetric::word_set) {
        return sorted_jaccard(word_set(a), word_set(b));
    }
    const ShingleSet sa = shingle(Document{"a", std::string(a)}, metric_ngram);
    const ShingleSet sb = shingle(Document{"b", std::string(b)}, metric_ngram);
    return exact_jaccard(sa, sb);
}

std::pair<DonorPool, std::vector<Document>> build_donor_pool(
    const std::vector<Document>& corpus, const SynthConfig& cfg) {
    cfg.validate();
    if (corpus.size() <= cfg.donor_article_count) {
        throw std::invalid_argument("build_donor_pool: corpus must have more than " +
                                    std::to_string(cfg.donor_article_count) + " documents");
    }
    detail::Rng rng = detail::derive_rng(cfg.rng_seed, "donor-pool");
    std::vector<std::size_t> picked = rng.sample_indices(corpus.size(), cfg.donor_article_count);
    std::sort(picked.begin(), picked.end());

    DonorPool pool;
    std::vector<std::string> qualified;
    std::unordered_set<std::string> seen;
    for (const std::size_t idx : picked) {
        pool.donor_ids.push_back(corpus[idx].id);
        for (auto& sentence : split_sentences(corpus[idx]).sentences) {
            const std::size_t words = word_count(sentence);
            if (words < cfg.donor_len_min || words > cfg.donor_len_max) continue;
            if (seen.insert(sentence).second) qualified.push_back(std::move(sentence));
        }
    }
    if (qualified.size() < cfg.donor_pool_size) {
        throw std::invalid_argument(
            "build_donor_pool: only " + std::to_string(qualified.size()) +
            " qualifying sentences, need " + std::to_string(cfg.donor_pool_size));
    }
    detail::Rng pick_rng = detail::derive_rng(cfg.rng_seed, "donor-sentences");
    for (const std::size_t idx :
         pick_rng.sample_indices(qualified.size(), cfg.donor_pool_size)) {
        pool.sentences.push_back(qualified[idx]);
    }

    std::unordered_set<std::size_t> removed(picked.begin(), picked.end());
    std::vector<Document> remaining;
    remaining.reserve(corpus.size() - picked.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!removed.count(i)) remaining.push_back(corpus[i]);
    }
    return {std::move(pool), std::move(remaining)};
}

namespace {

std::string join_sentences(const std::vector<std::string>& sentences) {
    std::string out;
    for (const auto& s : sentences) {
        if (!out.empty()) out.push_back(' ');
        out += s;
    }
    return out;
}

}  // namespace

Document perturb(const Document& doc, const std::vector<std::string>& donors,
                 const SynthConfig& cfg, detail::Rng& rng, std::string dup_id) {
    const std::vector<std::string> sentences = split_sentences(doc).sentences;
    if (sentences.size() < cfg.min_sentences) {
        throw std::invalid_argument("perturb: document " + doc.id + " has fewer than " +
                                    std::to_string(cfg.min_sentences) + " sentences");
    }
    if (donors.empty()) throw std::invalid_argument("perturb: donor pool is empty");

    const std::size_t total = sentences.size();
    // Edit counts are searched, not fixed: the band is an outcome, so start
    // small and walk counts up (too similar) or down (too different),
    // re-randomizing positions every attempt.
    std::size_t removals = 1;
    std::size_t insertions = 1;
    const std::size_t max_removals = total - 1;

    for (std::uint32_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        std::vector<std::string> draft;
        if (removals > 0) {
            std::vector<std::size_t> doomed = rng.sample_indices(total, removals);
            std::unordered_set<std::size_t> drop(doomed.begin(), doomed.end());
            for (std::size_t i = 0; i < total; ++i) {
                if (!drop.count(i)) draft.push_back(sentences[i]);
            }
        } else {
            draft = sentences;
        }
        if (insertions > 0) {
            for (const std::size_t donor_idx :
                 rng.sample_indices(donors.size(), std::min(insertions, donors.size()))) {
                const std::size_t pos = rng.bounded(draft.size() + 1);
                draft.insert(draft.begin() + static_cast<std::ptrdiff_t>(pos),
                             donors[donor_idx]);
            }
        }
        const std::string candidate = join_sentences(draft);
        const double res = resemblance(doc.text, candidate, cfg.metric, cfg.metric_ngram);
        if (res >= cfg.resemblance_low && res <= cfg.resemblance_high) {
            return Document{std::move(dup_id), candidate};
        }
        if (res > cfg.resemblance_high) {
            // Too similar: escalate whichever count is smaller.
            if (removals <= insertions && removals < max_removals) {
                ++removals;
            } else if (insertions < donors.size()) {
                ++insertions;
            } else if (removals < max_removals) {
                ++removals;
            }
        } else {
            // Too different: back off.
            if (removals >= insertions && removals > 0) {
                --removals;
            } else if (insertions > 0) {
                --insertions;
            }
        }
    }
    throw std::runtime_error("perturb: resemblance band [" +
                             std::to_string(cfg.resemblance_low) + ", " +
                             std::to_string(cfg.resemblance_high) +
                             "] unreachable for document " + doc.id + " within " +
                             std::to_string(cfg.max_attempts) + " attempts");
}

namespace {

std::string make_dup_id(const std::string& source_id,
                        const std::unordered_set<std::string>& taken) {
    std::string id = source_id + "-dup";
    for (std::uint64_t counter = 2; taken.count(id); ++counter) {
        id = source_id + "-dup" + std::to_string(counter);
    }
    return id;
}

}  // namespace

LabeledCorpus synthesize(const std::vector<Document>& corpus, const SynthConfig& cfg,
                         unsigned workers) {
    cfg.validate();
    auto [pool, remaining] = build_donor_pool(corpus, cfg);

    std::vector<std::size_t> sentence_counts(remaining.size());
    detail::parallel_for(remaining.size(), workers, [&](std::size_t i) {
        sentence_counts[i] = split_sentences(remaining[i]).sentences.size();
    });
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
        if (sentence_counts[i] >= cfg.min_sentences) eligible.push_back(i);
    }

    // ceil with a tiny slack so fractions chosen as exact ratios (1258/5028)
    // are not pushed over the integer by floating-point error.
    const double requested = cfg.duplicate_fraction * static_cast<double>(remaining.size());
    const auto dup_count = static_cast<std::size_t>(std::max(0.0, std::ceil(requested - 1e-9)));
    if (dup_count > eligible.size()) {
        throw std::invalid_argument(
            "synthesize: requested " + std::to_string(dup_count) + " duplicates but only " +
            std::to_string(eligible.size()) + " documents have at least " +
            std::to_string(cfg.min_sentences) + " sentences");
    }

    detail::Rng source_rng = detail::derive_rng(cfg.rng_seed, "sources");
    std::vector<std::size_t> chosen = source_rng.sample_indices(eligible.size(), dup_count);
    std::vector<std::size_t> sources;
    sources.reserve(dup_count);
    for (const std::size_t pick : chosen) sources.push_back(eligible[pick]);
    std::sort(sources.begin(), sources.end());

    std::unordered_set<std::string> taken;
    taken.reserve(remaining.size() + dup_count);
    for (const auto& doc : remaining) taken.insert(doc.id);
    std::vector<std::string> dup_ids(dup_count);
    for (std::size_t i = 0; i < dup_count; ++i) {
        dup_ids[i] = make_dup_id(remaining[sources[i]].id, taken);
        taken.insert(dup_ids[i]);
    }

    std::vector<Document> duplicates(dup_count);
    detail::parallel_for(dup_count, workers, [&](std::size_t i) {
        const Document& source = remaining[sources[i]];
        detail::Rng rng = detail::derive_rng(cfg.rng_seed, "perturb:" + source.id);
        duplicates[i] = perturb(source, pool.sentences, cfg, rng, dup_ids[i]);
    });

    LabeledCorpus out;
    out.donor_ids = pool.donor_ids;
    out.documents.reserve(remaining.size() + dup_count);
    for (auto& doc : remaining) {
        out.labels.emplace(doc.id, Label::original);
        out.documents.push_back(std::move(doc));
    }
    for (std::size_t i = 0; i < dup_count; ++i) {
        out.labels.emplace(duplicates[i].id, Label::duplicate);
        out.provenance.emplace(duplicates[i].id, out.documents[sources[i]].id);
        out.documents.push_back(std::move(duplicates[i]));
    }
    return out;
}

}  // namespace neardup
