#include "neardup/minhash.hpp"

#include <limits>
#include <stdexcept>

#include "neardup/detail/rng.hpp"

namespace neardup {

HashFamily make_family(std::uint32_t k, std::uint64_t seed) {
    if (k == 0) throw std::invalid_argument("make_family: k must be positive");
    HashFamily family;
    family.seed = seed;
    family.multipliers.reserve(k);
    family.offsets.reserve(k);
    detail::Rng rng(seed);
    for (std::uint32_t i = 0; i < k; ++i) {
        family.multipliers.push_back(rng.next() | 1ull);
        family.offsets.push_back(rng.next());
    }
    return family;
}

MinHashSignature sign(const ShingleSet& set, const HashFamily& family) {
    if (family.k() == 0) throw std::invalid_argument("sign: empty hash family");
    MinHashSignature sig;
    sig.doc_id = set.doc_id;
    sig.family_seed = family.seed;
    sig.values.assign(family.k(), std::numeric_limits<std::uint64_t>::max());
    if (set.empty()) {
        sig.empty = true;
        return sig;
    }
    const std::uint32_t k = family.k();
    const std::uint64_t* a = family.multipliers.data();
    const std::uint64_t* b = family.offsets.data();
    std::uint64_t* v = sig.values.data();
    for (const std::uint64_t x : set.shingles) {
        for (std::uint32_t i = 0; i < k; ++i) {
            const std::uint64_t h = a[i] * x + b[i];  // wraps mod 2^64
            if (h < v[i]) v[i] = h;
        }
    }
    return sig;
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.k() != b.k()) throw std::invalid_argument("estimate_jaccard: signature lengths differ");
    if (a.k() == 0) throw std::invalid_argument("estimate_jaccard: empty signatures");
    if (a.family_seed != b.family_seed) {
        throw std::invalid_argument("estimate_jaccard: signatures from different hash families");
    }
    if (a.empty && b.empty) return 1.0;
    if (a.empty || b.empty) return 0.0;
    std::size_t matches = 0;
    for (std::uint32_t i = 0; i < a.k(); ++i) {
        if (a.values[i] == b.values[i]) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(a.k());
}

double exact_jaccard(const ShingleSet& a, const ShingleSet& b) {
    if (a.n != b.n) throw std::invalid_argument("exact_jaccard: shingle sizes differ");
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::size_t inter = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.shingles.size() && j < b.shingles.size()) {
        if (a.shingles[i] == b.shingles[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a.shingles[i] < b.shingles[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const std::size_t uni = a.shingles.size() + b.shingles.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace neardup
