#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "neardup/minhash.hpp"
#include "neardup/text.hpp"

namespace neardup {

enum class VerifyMode : std::uint8_t { exact = 0, estimate = 1 };

std::string to_string(VerifyMode mode);
VerifyMode verify_mode_from_string(std::string_view name);

/// The three paper-level hyperparameters (permutations k, shingle size n,
/// threshold t) plus the banding layout derived from them. Only the first
/// bands*rows signature positions participate in bucketing.
struct LshParams {
    std::uint32_t permutations = 128;
    std::uint32_t ngram = 12;
    double threshold = 0.65;
    std::uint32_t bands = 0;
    std::uint32_t rows = 0;
    VerifyMode verify_mode = VerifyMode::exact;

    void validate() const;
};

struct BandChoice {
    std::uint32_t bands = 0;
    std::uint32_t rows = 0;
};

/// Probability that two documents of Jaccard similarity s share at least
/// one band under a (bands, rows) layout: 1 - (1 - s^r)^b.
double candidate_probability(double s, std::uint32_t bands, std::uint32_t rows);

/// Picks (b, r) with b*r <= k minimizing false-positive plus false-negative
/// area around the threshold:
///   FP = integral over [0,t] of 1-(1-s^r)^b,  FN = integral over [t,1] of (1-s^r)^b,
/// each evaluated with a 1000-point midpoint rule. Ties prefer larger b*r,
/// then larger b.
BandChoice choose_bands(std::uint32_t k, double threshold);

/// A verified duplicate pair; ids are in canonical (id_a < id_b) order and
/// similarity is at or above the index threshold.
struct DuplicatePair {
    std::string id_a;
    std::string id_b;
    double similarity = 0.0;
};

struct DuplicateCluster {
    std::string representative;            // lexicographically smallest member
    std::vector<std::string> removable;    // sorted; the rest of the component
};

struct DedupResult {
    std::vector<DuplicatePair> pairs;      // sorted by (id_a, id_b)
    std::vector<DuplicateCluster> clusters;  // sorted by representative
    std::size_t verified_pairs = 0;        // distinct candidate pairs checked
    std::size_t oversized_buckets = 0;     // buckets past the giant-bucket cap
};

/// Banded LSH index over MinHash signatures. Build is append-only; after
/// the build phase the structure is immutable and all queries are const.
class LshIndex {
public:
    LshIndex(LshParams params, std::uint64_t family_seed);

    /// Shingles and signs the document, then buckets it. Throws on a
    /// duplicate id.
    void insert(const Document& doc);

    /// Inserts a pre-shingled set (set.n must match the index n-gram size).
    void insert_set(ShingleSet set);

    /// Inserts a set whose signature was already computed with this index's
    /// family; avoids re-signing when callers batch the work.
    void insert_prepared(ShingleSet set, MinHashSignature sig);

    /// Parallel shingle+sign over the corpus, then deterministic serial
    /// bucketing in corpus order.
    void build(const std::vector<Document>& corpus, unsigned workers = 1);

    /// Ids co-bucketed with doc_id in any band, excluding doc_id. Sorted.
    std::vector<std::string> candidates(const std::string& doc_id) const;

    /// Similarity check against the threshold; exact mode compares stored
    /// shingle sets, estimate mode compares signatures.
    std::optional<DuplicatePair> verify(const std::string& id_a, const std::string& id_b) const;

    /// Verifies every co-bucketed pair exactly once and reports pairs at or
    /// above the threshold plus their connected components.
    DedupResult dedup_scan() const;

    bool contains(const std::string& doc_id) const;
    std::size_t size() const noexcept { return ids_.size(); }
    const LshParams& params() const noexcept { return params_; }
    std::uint64_t family_seed() const noexcept { return family_.seed; }

    /// Buckets larger than this are still fully verified but are counted
    /// and logged; guards against silent quadratic blowup.
    void set_giant_bucket_cap(std::size_t cap) noexcept { giant_bucket_cap_ = cap; }
    std::size_t giant_bucket_cap() const noexcept { return giant_bucket_cap_; }

    // Index-internal views, used by scoring, persistence, and tests.
    using Bucket = std::vector<std::uint32_t>;
    using BandMap = std::unordered_map<std::uint64_t, Bucket>;

    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const MinHashSignature& signature(std::uint32_t idx) const { return signatures_.at(idx); }
    const ShingleSet& shingles(std::uint32_t idx) const { return shingle_store_.at(idx); }
    const std::vector<BandMap>& band_maps() const noexcept { return buckets_; }
    std::optional<std::uint32_t> index_of(const std::string& doc_id) const;

    /// Co-bucketed indices for a signature that is not (yet) in the index;
    /// the probe used for streaming query-before-insert scoring.
    std::vector<std::uint32_t> probe(const MinHashSignature& sig) const;

    /// Similarity between two stored documents under the verify mode.
    double similarity(std::uint32_t a, std::uint32_t b) const;

    /// Band key for positions [band*rows, (band+1)*rows) of a signature;
    /// the band index is mixed in so buckets never collide across bands.
    std::uint64_t band_key(const MinHashSignature& sig, std::uint32_t band) const;

    /// Rebuilds an index from persisted parts; band maps are taken as-is.
    static LshIndex from_parts(LshParams params, std::uint64_t family_seed,
                               std::vector<std::string> ids,
                               std::vector<MinHashSignature> signatures,
                               std::vector<ShingleSet> shingle_store,
                               std::vector<BandMap> buckets);

private:
    void bucket_signature(std::uint32_t idx);
    std::uint32_t require(const std::string& doc_id) const;

    LshParams params_;
    HashFamily family_;
    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::uint32_t> id_to_idx_;
    std::vector<MinHashSignature> signatures_;
    std::vector<ShingleSet> shingle_store_;  // populated only in exact mode
    std::vector<BandMap> buckets_;           // one map per band
    std::size_t giant_bucket_cap_ = 10000;
};

}  // namespace neardup
