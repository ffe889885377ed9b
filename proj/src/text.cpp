#include "neardup/text.hpp"

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include "neardup/detail/hash.hpp"

namespace neardup {

namespace {

std::u16string to_utf16(std::string_view text) {
    std::u16string out;
    if (text.empty()) return out;
    out.resize(text.size() + 1);
    UErrorCode status = U_ZERO_ERROR;
    int32_t written = 0;
    // Ill-formed byte sequences become U+FFFD so the pipeline stays total.
    u_strFromUTF8WithSub(out.data(), static_cast<int32_t>(out.size()), &written,
                         text.data(), static_cast<int32_t>(text.size()), 0xFFFD,
                         nullptr, &status);
    if (U_FAILURE(status)) throw std::runtime_error("normalize: UTF-8 decode failed");
    out.resize(static_cast<std::size_t>(written));
    return out;
}

std::string to_utf8(const std::u16string& text) {
    std::string out;
    if (text.empty()) return out;
    out.resize(text.size() * 4);
    UErrorCode status = U_ZERO_ERROR;
    int32_t written = 0;
    u_strToUTF8(out.data(), static_cast<int32_t>(out.size()), &written, text.data(),
                static_cast<int32_t>(text.size()), &status);
    if (U_FAILURE(status)) throw std::runtime_error("normalize: UTF-8 encode failed");
    out.resize(static_cast<std::size_t>(written));
    return out;
}

std::u16string nfc(const std::u16string& text) {
    UErrorCode status = U_ZERO_ERROR;
    const UNormalizer2* norm = unorm2_getNFCInstance(&status);
    if (U_FAILURE(status)) throw std::runtime_error("normalize: NFC instance unavailable");
    std::u16string out;
    out.resize(text.size() + 16);
    int32_t written = unorm2_normalize(norm, text.data(), static_cast<int32_t>(text.size()),
                                       out.data(), static_cast<int32_t>(out.size()), &status);
    if (status == U_BUFFER_OVERFLOW_ERROR) {
        status = U_ZERO_ERROR;
        out.resize(static_cast<std::size_t>(written));
        written = unorm2_normalize(norm, text.data(), static_cast<int32_t>(text.size()),
                                   out.data(), static_cast<int32_t>(out.size()), &status);
    }
    if (U_FAILURE(status)) throw std::runtime_error("normalize: NFC normalization failed");
    out.resize(static_cast<std::size_t>(written));
    return out;
}

// Simple (1:1, locale-independent) lowercase per codepoint.
std::u16string lowercase(const std::u16string& text) {
    std::u16string out;
    out.reserve(text.size());
    int32_t i = 0;
    const int32_t len = static_cast<int32_t>(text.size());
    while (i < len) {
        UChar32 c;
        U16_NEXT(text.data(), i, len, c);
        c = u_tolower(c);
        char16_t buf[2];
        int32_t n = 0;
        UBool err = false;
        U16_APPEND(buf, n, 2, c, err);
        if (!err) out.append(buf, static_cast<std::size_t>(n));
    }
    return out;
}

std::u16string collapse_whitespace(const std::u16string& text) {
    std::u16string out;
    out.reserve(text.size());
    bool pending_space = false;
    int32_t i = 0;
    const int32_t len = static_cast<int32_t>(text.size());
    while (i < len) {
        const int32_t start = i;
        UChar32 c;
        U16_NEXT(text.data(), i, len, c);
        if (u_isUWhiteSpace(c)) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(u' ');
            pending_space = false;
            out.append(text, static_cast<std::size_t>(start),
                       static_cast<std::size_t>(i - start));
        }
    }
    return out;
}

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_ascii_space(s[b])) ++b;
    while (e > b && is_ascii_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

}  // namespace

std::string normalize(std::string_view text) {
    if (text.empty()) return {};
    // NFC before and after lowercasing: a 1:1 case mapping of an NFC string
    // can land outside NFC for a handful of codepoints.
    std::u16string u = nfc(to_utf16(text));
    u = nfc(lowercase(u));
    u = collapse_whitespace(u);
    return to_utf8(u);
}

std::uint64_t shingle_hash(std::string_view window_bytes) {
    return detail::hash_bytes(window_bytes, detail::kShingleHashSeed);
}

std::size_t codepoint_count(std::string_view text) {
    std::size_t count = 0;
    int32_t i = 0;
    const int32_t len = static_cast<int32_t>(text.size());
    while (i < len) {
        U8_FWD_1(text.data(), i, len);
        ++count;
    }
    return count;
}

ShingleSet shingle(const Document& doc, std::uint32_t n) {
    if (n == 0) throw std::invalid_argument("shingle: n must be positive");
    ShingleSet set;
    set.doc_id = doc.id;
    set.n = n;

    const std::string norm = normalize(doc.text);
    // Byte offset of every codepoint boundary, including end-of-text.
    std::vector<std::uint32_t> offsets;
    offsets.reserve(norm.size() + 1);
    int32_t i = 0;
    const int32_t len = static_cast<int32_t>(norm.size());
    while (i < len) {
        offsets.push_back(static_cast<std::uint32_t>(i));
        U8_FWD_1(norm.data(), i, len);
    }
    offsets.push_back(static_cast<std::uint32_t>(len));

    const std::size_t chars = offsets.size() - 1;
    if (chars < n) return set;

    set.shingles.reserve(chars - n + 1);
    for (std::size_t start = 0; start + n <= chars; ++start) {
        const std::uint32_t b = offsets[start];
        const std::uint32_t e = offsets[start + n];
        set.shingles.push_back(shingle_hash(std::string_view(norm).substr(b, e - b)));
    }
    std::sort(set.shingles.begin(), set.shingles.end());
    set.shingles.erase(std::unique(set.shingles.begin(), set.shingles.end()),
                       set.shingles.end());
    return set;
}

SentenceList split_sentences(const Document& doc) {
    SentenceList out;
    out.doc_id = doc.id;
    const std::string_view text = doc.text;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const bool terminator = (c == '.' || c == '!' || c == '?');
        const bool boundary = terminator && (i + 1 == text.size() || is_ascii_space(text[i + 1]));
        if (!boundary) continue;
        const std::string_view sentence = trim(text.substr(start, i + 1 - start));
        if (!sentence.empty()) out.sentences.emplace_back(sentence);
        start = i + 1;
    }
    if (start < text.size()) {
        const std::string_view tail = trim(text.substr(start));
        if (!tail.empty()) out.sentences.emplace_back(tail);
    }
    return out;
}

std::size_t word_count(std::string_view text) {
    std::size_t count = 0;
    bool in_word = false;
    for (char c : text) {
        if (is_ascii_space(c)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++count;
        }
    }
    return count;
}

}  // namespace neardup
