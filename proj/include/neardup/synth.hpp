#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "neardup/detail/rng.hpp"
#include "neardup/text.hpp"

namespace neardup {

enum class Label : std::uint8_t { original = 0, duplicate = 1 };

std::string to_string(Label label);
Label label_from_string(std::string_view name);

/// How original/duplicate resemblance is measured. The default is Jaccard
/// over word-unigram sets of the normalized texts, deliberately independent
/// of the detector's character shingles so the benchmark does not encode
/// the detector.
enum class ResemblanceMetric : std::uint8_t { word_set = 0, char_ngram = 1 };

std::string to_string(ResemblanceMetric metric);
ResemblanceMetric resemblance_metric_from_string(std::string_view name);

struct SynthConfig {
    double duplicate_fraction = 0.25;
    double resemblance_low = 0.87;
    double resemblance_high = 0.94;
    std::uint32_t donor_pool_size = 2000;
    std::uint32_t donor_article_count = 300;
    std::uint32_t donor_len_min = 8;   // words
    std::uint32_t donor_len_max = 20;  // words
    std::uint64_t rng_seed = 1;
    ResemblanceMetric metric = ResemblanceMetric::word_set;
    std::uint32_t metric_ngram = 12;   // used when metric == char_ngram
    std::uint32_t min_sentences = 10;  // shorter docs are never perturbation sources
    std::uint32_t max_attempts = 50;   // band search budget per duplicate

    void validate() const;
};

struct DonorPool {
    std::vector<std::string> sentences;
    std::vector<std::string> donor_ids;  // articles excluded from the corpus
};

/// Labeled benchmark: originals plus synthetic near-duplicates, with
/// provenance back to each duplicate's source. Donor articles appear
/// nowhere in `documents`.
struct LabeledCorpus {
    std::vector<Document> documents;  // originals first, duplicates after
    std::unordered_map<std::string, Label> labels;
    std::unordered_map<std::string, std::string> provenance;  // duplicate -> source
    std::vector<std::string> donor_ids;

    bool is_duplicate(const std::string& id) const;
};

/// Similarity of two texts under the configured resemblance metric.
double resemblance(std::string_view a, std::string_view b,
                   ResemblanceMetric metric = ResemblanceMetric::word_set,
                   std::uint32_t metric_ngram = 12);

/// Removes donor_article_count articles by seeded random choice and collects
/// donor_pool_size distinct sentences of donor_len_min..donor_len_max words
/// from them. Returns the pool and the surviving corpus (original order).
std::pair<DonorPool, std::vector<Document>> build_donor_pool(
    const std::vector<Document>& corpus, const SynthConfig& cfg);

/// Produces a near-duplicate of `doc` by removing sentences and inserting
/// donor sentences at seeded random positions, searching edit counts until
/// resemblance lands inside [resemblance_low, resemblance_high]. Throws if
/// the band is unreachable within cfg.max_attempts.
Document perturb(const Document& doc, const std::vector<std::string>& donors,
                 const SynthConfig& cfg, detail::Rng& rng, std::string dup_id);

/// Full benchmark construction: donor extraction, seeded source selection,
/// one duplicate per source. Deterministic for identical (corpus, cfg).
LabeledCorpus synthesize(const std::vector<Document>& corpus, const SynthConfig& cfg,
                         unsigned workers = 1);

}  // namespace neardup
