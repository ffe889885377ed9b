#include "neardup/lsh_index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "neardup/detail/hash.hpp"
#include "neardup/detail/parallel.hpp"

namespace neardup {

std::string to_string(VerifyMode mode) {
    return mode == VerifyMode::exact ? "exact" : "estimate";
}

VerifyMode verify_mode_from_string(std::string_view name) {
    if (name == "exact") return VerifyMode::exact;
    if (name == "estimate") return VerifyMode::estimate;
    throw std::invalid_argument("unknown verify mode: " + std::string(name));
}

void LshParams::validate() const {
    if (permutations == 0) throw std::invalid_argument("LshParams: permutations must be positive");
    if (ngram == 0) throw std::invalid_argument("LshParams: ngram must be positive");
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw std::invalid_argument("LshParams: threshold must be in (0,1)");
    }
    if (bands == 0 || rows == 0) throw std::invalid_argument("LshParams: bands/rows must be positive");
    if (static_cast<std::uint64_t>(bands) * rows > permutations) {
        throw std::invalid_argument("LshParams: bands*rows exceeds permutations");
    }
}

double candidate_probability(double s, std::uint32_t bands, std::uint32_t rows) {
    return 1.0 - std::pow(1.0 - std::pow(s, static_cast<double>(rows)),
                          static_cast<double>(bands));
}

namespace {

constexpr int kIntegrationPoints = 1000;

// FP + FN area of the banding S-curve around the threshold, both integrals
// by midpoint rule.
double banding_cost(std::uint32_t b, std::uint32_t r, double t) {
    double fp = 0.0;
    for (int i = 0; i < kIntegrationPoints; ++i) {
        const double s = (i + 0.5) * t / kIntegrationPoints;
        fp += candidate_probability(s, b, r);
    }
    fp *= t / kIntegrationPoints;

    double fn = 0.0;
    for (int i = 0; i < kIntegrationPoints; ++i) {
        const double s = t + (i + 0.5) * (1.0 - t) / kIntegrationPoints;
        fn += 1.0 - candidate_probability(s, b, r);
    }
    fn *= (1.0 - t) / kIntegrationPoints;

    return fp + fn;
}

}  // namespace

BandChoice choose_bands(std::uint32_t k, double threshold) {
    if (k == 0) throw std::invalid_argument("choose_bands: k must be positive");
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw std::invalid_argument("choose_bands: threshold must be in (0,1)");
    }
    BandChoice best{1, 1};
    double best_cost = banding_cost(1, 1, threshold);
    for (std::uint32_t b = 1; b <= k; ++b) {
        for (std::uint32_t r = 1; b * r <= k; ++r) {
            if (b == 1 && r == 1) continue;
            const double cost = banding_cost(b, r, threshold);
            const std::uint64_t used = static_cast<std::uint64_t>(b) * r;
            const std::uint64_t best_used = static_cast<std::uint64_t>(best.bands) * best.rows;
            if (cost < best_cost ||
                (cost == best_cost && (used > best_used ||
                                       (used == best_used && b > best.bands)))) {
                best_cost = cost;
                best = {b, r};
            }
        }
    }
    return best;
}

LshIndex::LshIndex(LshParams params, std::uint64_t family_seed) : params_(params) {
    params_.validate();
    family_ = make_family(params_.permutations, family_seed);
    buckets_.resize(params_.bands);
}

std::uint64_t LshIndex::band_key(const MinHashSignature& sig, std::uint32_t band) const {
    // Hash the r row values as little-endian bytes, seeded per band.
    unsigned char buf[8];
    std::uint64_t h = 0xCBF29CE484222325ull ^ (detail::kBandKeySeed + band);
    const std::uint32_t begin = band * params_.rows;
    for (std::uint32_t i = 0; i < params_.rows; ++i) {
        std::uint64_t v = sig.values[begin + i];
        for (int byte = 0; byte < 8; ++byte) {
            buf[byte] = static_cast<unsigned char>(v & 0xFF);
            v >>= 8;
        }
        for (int byte = 0; byte < 8; ++byte) {
            h ^= buf[byte];
            h *= 0x100000001B3ull;
        }
    }
    return detail::mix64(h);
}

void LshIndex::bucket_signature(std::uint32_t idx) {
    for (std::uint32_t band = 0; band < params_.bands; ++band) {
        buckets_[band][band_key(signatures_[idx], band)].push_back(idx);
    }
}

void LshIndex::insert_prepared(ShingleSet set, MinHashSignature sig) {
    if (set.n != params_.ngram) {
        throw std::invalid_argument("insert: shingle size does not match index");
    }
    if (set.doc_id.empty()) throw std::invalid_argument("insert: empty document id");
    if (sig.family_seed != family_.seed || sig.k() != params_.permutations) {
        throw std::invalid_argument("insert: signature from a different family");
    }
    if (id_to_idx_.count(set.doc_id)) {
        throw std::invalid_argument("insert: duplicate document id: " + set.doc_id);
    }
    const auto idx = static_cast<std::uint32_t>(ids_.size());
    ids_.push_back(set.doc_id);
    id_to_idx_.emplace(set.doc_id, idx);
    signatures_.push_back(std::move(sig));
    if (params_.verify_mode == VerifyMode::exact) {
        shingle_store_.push_back(std::move(set));
    }
    bucket_signature(idx);
}

void LshIndex::insert_set(ShingleSet set) {
    MinHashSignature sig = sign(set, family_);
    insert_prepared(std::move(set), std::move(sig));
}

void LshIndex::insert(const Document& doc) {
    insert_set(shingle(doc, params_.ngram));
}

void LshIndex::build(const std::vector<Document>& corpus, unsigned workers) {
    std::vector<ShingleSet> sets(corpus.size());
    std::vector<MinHashSignature> sigs(corpus.size());
    detail::parallel_for(corpus.size(), workers, [&](std::size_t i) {
        sets[i] = shingle(corpus[i], params_.ngram);
        sigs[i] = sign(sets[i], family_);
    });
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        insert_prepared(std::move(sets[i]), std::move(sigs[i]));
    }
}

std::optional<std::uint32_t> LshIndex::index_of(const std::string& doc_id) const {
    const auto it = id_to_idx_.find(doc_id);
    if (it == id_to_idx_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t LshIndex::require(const std::string& doc_id) const {
    const auto idx = index_of(doc_id);
    if (!idx) throw std::invalid_argument("unknown document id: " + doc_id);
    return *idx;
}

bool LshIndex::contains(const std::string& doc_id) const {
    return id_to_idx_.count(doc_id) != 0;
}

std::vector<std::uint32_t> LshIndex::probe(const MinHashSignature& sig) const {
    if (sig.k() != params_.permutations) {
        throw std::invalid_argument("probe: signature length does not match index");
    }
    std::vector<std::uint32_t> found;
    for (std::uint32_t band = 0; band < params_.bands; ++band) {
        const auto it = buckets_[band].find(band_key(sig, band));
        if (it == buckets_[band].end()) continue;
        found.insert(found.end(), it->second.begin(), it->second.end());
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

std::vector<std::string> LshIndex::candidates(const std::string& doc_id) const {
    const std::uint32_t self = require(doc_id);
    std::vector<std::uint32_t> found = probe(signatures_[self]);
    std::vector<std::string> out;
    out.reserve(found.size());
    for (const std::uint32_t idx : found) {
        if (idx != self) out.push_back(ids_[idx]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double LshIndex::similarity(std::uint32_t a, std::uint32_t b) const {
    if (params_.verify_mode == VerifyMode::exact) {
        return exact_jaccard(shingle_store_.at(a), shingle_store_.at(b));
    }
    return estimate_jaccard(signatures_.at(a), signatures_.at(b));
}

std::optional<DuplicatePair> LshIndex::verify(const std::string& id_a,
                                              const std::string& id_b) const {
    const std::uint32_t a = require(id_a);
    const std::uint32_t b = require(id_b);
    const double sim = similarity(a, b);
    if (sim < params_.threshold) return std::nullopt;
    DuplicatePair pair;
    pair.id_a = std::min(id_a, id_b);
    pair.id_b = std::max(id_a, id_b);
    pair.similarity = sim;
    return pair;
}

namespace {

// Union-find over dense indices.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::uint32_t> parent_;
};

}  // namespace

DedupResult LshIndex::dedup_scan() const {
    DedupResult result;

    // Distinct co-bucketed pairs, packed as (lo<<32)|hi over dense indices.
    std::unordered_set<std::uint64_t> seen;
    for (std::uint32_t band = 0; band < params_.bands; ++band) {
        for (const auto& [key, bucket] : buckets_[band]) {
            if (bucket.size() > giant_bucket_cap_) {
                ++result.oversized_buckets;
                std::cerr << "neardup: bucket with " << bucket.size()
                          << " documents exceeds cap " << giant_bucket_cap_
                          << " (band " << band << "); verifying all pairs\n";
            }
            for (std::size_t i = 0; i + 1 < bucket.size(); ++i) {
                for (std::size_t j = i + 1; j < bucket.size(); ++j) {
                    const std::uint32_t lo = std::min(bucket[i], bucket[j]);
                    const std::uint32_t hi = std::max(bucket[i], bucket[j]);
                    seen.insert((static_cast<std::uint64_t>(lo) << 32) | hi);
                }
            }
        }
    }
    result.verified_pairs = seen.size();

    DisjointSets components(ids_.size());
    for (const std::uint64_t packed : seen) {
        const auto a = static_cast<std::uint32_t>(packed >> 32);
        const auto b = static_cast<std::uint32_t>(packed & 0xFFFFFFFFull);
        const double sim = similarity(a, b);
        if (sim < params_.threshold) continue;
        DuplicatePair pair;
        pair.id_a = std::min(ids_[a], ids_[b]);
        pair.id_b = std::max(ids_[a], ids_[b]);
        pair.similarity = sim;
        result.pairs.push_back(std::move(pair));
        components.unite(a, b);
    }
    std::sort(result.pairs.begin(), result.pairs.end(), [](const auto& x, const auto& y) {
        return std::tie(x.id_a, x.id_b) < std::tie(y.id_a, y.id_b);
    });

    // A document belongs to a cluster iff it appears in at least one pair.
    std::unordered_map<std::uint32_t, std::vector<std::string>> groups;
    std::unordered_set<std::uint32_t> in_pairs;
    for (const auto& pair : result.pairs) {
        in_pairs.insert(require(pair.id_a));
        in_pairs.insert(require(pair.id_b));
    }
    for (const std::uint32_t idx : in_pairs) {
        groups[components.find(idx)].push_back(ids_[idx]);
    }
    result.clusters.reserve(groups.size());
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        DuplicateCluster cluster;
        cluster.representative = members.front();
        cluster.removable.assign(members.begin() + 1, members.end());
        result.clusters.push_back(std::move(cluster));
    }
    std::sort(result.clusters.begin(), result.clusters.end(),
              [](const auto& x, const auto& y) { return x.representative < y.representative; });
    return result;
}

LshIndex LshIndex::from_parts(LshParams params, std::uint64_t family_seed,
                              std::vector<std::string> ids,
                              std::vector<MinHashSignature> signatures,
                              std::vector<ShingleSet> shingle_store,
                              std::vector<BandMap> buckets) {
    LshIndex index(params, family_seed);
    if (signatures.size() != ids.size()) {
        throw std::invalid_argument("from_parts: signature count does not match ids");
    }
    if (params.verify_mode == VerifyMode::exact && shingle_store.size() != ids.size()) {
        throw std::invalid_argument("from_parts: shingle store does not match ids");
    }
    if (buckets.size() != params.bands) {
        throw std::invalid_argument("from_parts: band map count does not match params");
    }
    index.ids_ = std::move(ids);
    index.signatures_ = std::move(signatures);
    index.shingle_store_ = std::move(shingle_store);
    index.buckets_ = std::move(buckets);
    index.id_to_idx_.reserve(index.ids_.size());
    for (std::uint32_t i = 0; i < index.ids_.size(); ++i) {
        if (!index.id_to_idx_.emplace(index.ids_[i], i).second) {
            throw std::invalid_argument("from_parts: duplicate document id: " + index.ids_[i]);
        }
    }
    return index;
}

}  // namespace neardup
