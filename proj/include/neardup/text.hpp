#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace neardup {

/// One unit of text flowing through shingling, indexing, and reporting.
/// `id` must be non-empty and unique within a corpus.
struct Document {
    std::string id;
    std::string text;
};

/// Deduplicated set of hashed character n-grams for one document.
/// Hashes are kept sorted so set operations are linear merges and
/// insertion order can never influence downstream signatures.
struct ShingleSet {
    std::string doc_id;
    std::uint32_t n = 0;
    std::vector<std::uint64_t> shingles;  // sorted, unique

    std::size_t cardinality() const noexcept { return shingles.size(); }
    bool empty() const noexcept { return shingles.empty(); }
};

struct SentenceList {
    std::string doc_id;
    std::vector<std::string> sentences;
};

/// Canonical text form: Unicode NFC, per-codepoint lowercase, whitespace
/// runs collapsed to one ASCII space, ends trimmed. Idempotent.
std::string normalize(std::string_view text);

/// Character n-gram shingles of the normalized text, stride 1, windows over
/// Unicode scalar values (not bytes). Fewer than n characters -> empty set.
ShingleSet shingle(const Document& doc, std::uint32_t n);

/// Rule-based sentence split: '.', '!' or '?' followed by whitespace or
/// end-of-text ends a sentence; the terminator stays with its sentence.
/// Fragments that are empty after trimming are dropped.
SentenceList split_sentences(const Document& doc);

/// The fixed seeded 64-bit hash applied to each shingle window's UTF-8
/// bytes. Exposed so tests and external tooling can reproduce shingle sets.
std::uint64_t shingle_hash(std::string_view window_bytes);

/// Number of Unicode scalar values in a UTF-8 string.
std::size_t codepoint_count(std::string_view text);

/// Whitespace-delimited word count (used for donor sentence length rules).
std::size_t word_count(std::string_view text);

}  // namespace neardup
