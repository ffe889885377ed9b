#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "neardup/text.hpp"

namespace neardup {

/// k affine maps x -> a*x + b (mod 2^64) acting as the MinHash permutation
/// family. Derived deterministically from `seed`; every a is odd, so each
/// map is a bijection on 64-bit words.
struct HashFamily {
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> multipliers;  // odd
    std::vector<std::uint64_t> offsets;

    std::uint32_t k() const noexcept { return static_cast<std::uint32_t>(multipliers.size()); }
};

HashFamily make_family(std::uint32_t k, std::uint64_t seed);

/// Fixed-length sketch of a ShingleSet: values[i] is the minimum of the
/// i-th family map over the set. An empty source set yields the all-MAX
/// sentinel signature with `empty` set.
struct MinHashSignature {
    std::string doc_id;
    std::uint64_t family_seed = 0;
    std::vector<std::uint64_t> values;
    bool empty = false;

    std::uint32_t k() const noexcept { return static_cast<std::uint32_t>(values.size()); }
};

MinHashSignature sign(const ShingleSet& set, const HashFamily& family);

/// Fraction of agreeing positions; an unbiased estimator of the Jaccard
/// similarity of the underlying sets. Both signatures must come from the
/// same family (same k and seed). Empty-vs-empty is 1, empty-vs-nonempty 0.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

/// |intersection| / |union| on the true hash sets. Both sets must use the
/// same n. Empty-vs-empty is 1, empty-vs-nonempty 0.
double exact_jaccard(const ShingleSet& a, const ShingleSet& b);

}  // namespace neardup
