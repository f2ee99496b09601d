#pragma once

// Minimal Unicode support for Latin-script text processing: strict UTF-8
// codec, an alphabetic predicate over the common letter ranges, simple
// (locale-independent, 1:1) lowercasing, and canonical composition of
// combining marks onto Latin base letters. Covers the scripts the bundled
// profiles use; it is not a general-purpose normalization library.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "langid/error.hpp"

namespace langid {

using CodePoint = char32_t;

namespace detail {

struct Range {
    char32_t lo;
    char32_t hi;
};

// Alphabetic ranges (Latin, IPA/modifier letters, Greek, Cyrillic,
// Armenian, Hebrew, Arabic core, Latin Extended Additional).
inline constexpr std::array<Range, 22> kLetterRanges = {{
    {0x0041, 0x005A}, {0x0061, 0x007A}, {0x00AA, 0x00AA}, {0x00B5, 0x00B5},
    {0x00BA, 0x00BA}, {0x00C0, 0x00D6}, {0x00D8, 0x00F6}, {0x00F8, 0x02C1},
    {0x0370, 0x0374}, {0x0376, 0x0377}, {0x037A, 0x037D}, {0x037F, 0x037F},
    {0x0386, 0x0386}, {0x0388, 0x038A}, {0x038C, 0x038C}, {0x038E, 0x03A1},
    {0x03A3, 0x0481}, {0x048A, 0x052F}, {0x0531, 0x0556}, {0x0561, 0x0587},
    {0x05D0, 0x05EA}, {0x1E00, 0x1EFF},
}};

struct Composition {
    char32_t base;
    char32_t mark;
    char32_t composed;
};

// Canonical (base, combining mark) -> precomposed pairs for lowercase Latin
// letters. Applied after lowercasing, so only lowercase bases appear.
inline constexpr std::array<Composition, 85> kCompositions = {{
    {U'a', 0x0300, 0x00E0}, {U'a', 0x0301, 0x00E1}, {U'a', 0x0302, 0x00E2},
    {U'a', 0x0303, 0x00E3}, {U'a', 0x0304, 0x0101}, {U'a', 0x0306, 0x0103},
    {U'a', 0x0308, 0x00E4}, {U'a', 0x030A, 0x00E5}, {U'a', 0x030C, 0x01CE},
    {U'e', 0x0300, 0x00E8}, {U'e', 0x0301, 0x00E9}, {U'e', 0x0302, 0x00EA},
    {U'e', 0x0303, 0x1EBD}, {U'e', 0x0304, 0x0113}, {U'e', 0x0306, 0x0115},
    {U'e', 0x0307, 0x0117}, {U'e', 0x0308, 0x00EB}, {U'e', 0x030C, 0x011B},
    {U'i', 0x0300, 0x00EC}, {U'i', 0x0301, 0x00ED}, {U'i', 0x0302, 0x00EE},
    {U'i', 0x0303, 0x0129}, {U'i', 0x0304, 0x012B}, {U'i', 0x0306, 0x012D},
    {U'i', 0x0308, 0x00EF}, {U'i', 0x030C, 0x01D0},
    {U'o', 0x0300, 0x00F2}, {U'o', 0x0301, 0x00F3}, {U'o', 0x0302, 0x00F4},
    {U'o', 0x0303, 0x00F5}, {U'o', 0x0304, 0x014D}, {U'o', 0x0306, 0x014F},
    {U'o', 0x0308, 0x00F6}, {U'o', 0x030B, 0x0151}, {U'o', 0x030C, 0x01D2},
    {U'u', 0x0300, 0x00F9}, {U'u', 0x0301, 0x00FA}, {U'u', 0x0302, 0x00FB},
    {U'u', 0x0303, 0x0169}, {U'u', 0x0304, 0x016B}, {U'u', 0x0306, 0x016D},
    {U'u', 0x0308, 0x00FC}, {U'u', 0x030A, 0x016F}, {U'u', 0x030B, 0x0171},
    {U'u', 0x030C, 0x01D4},
    {U'y', 0x0300, 0x1EF3}, {U'y', 0x0301, 0x00FD}, {U'y', 0x0302, 0x0177},
    {U'y', 0x0308, 0x00FF},
    {U'c', 0x0301, 0x0107}, {U'c', 0x0302, 0x0109}, {U'c', 0x0307, 0x010B},
    {U'c', 0x030C, 0x010D}, {U'c', 0x0327, 0x00E7},
    {U'd', 0x030C, 0x010F},
    {U'g', 0x0302, 0x011D}, {U'g', 0x0306, 0x011F}, {U'g', 0x0307, 0x0121},
    {U'g', 0x0327, 0x0123}, {U'g', 0x030C, 0x01E7},
    {U'h', 0x0302, 0x0125},
    {U'j', 0x0302, 0x0135},
    {U'k', 0x0327, 0x0137},
    {U'l', 0x0301, 0x013A}, {U'l', 0x0327, 0x013C}, {U'l', 0x030C, 0x013E},
    {U'n', 0x0301, 0x0144}, {U'n', 0x0303, 0x00F1}, {U'n', 0x0327, 0x0146},
    {U'n', 0x030C, 0x0148},
    {U'r', 0x0301, 0x0155}, {U'r', 0x0327, 0x0157}, {U'r', 0x030C, 0x0159},
    {U's', 0x0301, 0x015B}, {U's', 0x0302, 0x015D}, {U's', 0x0326, 0x0219},
    {U's', 0x0327, 0x015F}, {U's', 0x030C, 0x0161},
    {U't', 0x0326, 0x021B}, {U't', 0x0327, 0x0163}, {U't', 0x030C, 0x0165},
    {U'w', 0x0302, 0x0175},
    {U'z', 0x0301, 0x017A}, {U'z', 0x0307, 0x017C}, {U'z', 0x030C, 0x017E},
}};

}  // namespace detail

inline bool is_letter(CodePoint cp) {
    for (const auto& r : detail::kLetterRanges) {
        if (cp < r.lo) return false;
        if (cp <= r.hi) return true;
    }
    return false;
}

inline bool is_ascii_digit(CodePoint cp) { return cp >= U'0' && cp <= U'9'; }

inline bool is_alphanumeric(CodePoint cp) { return is_letter(cp) || is_ascii_digit(cp); }

// Combining Diacritical Marks block.
inline bool is_combining_mark(CodePoint cp) { return cp >= 0x0300 && cp <= 0x036F; }

// Simple 1:1 lowercase mapping. U+0130 (Turkish dotted capital I) maps to
// plain 'i' rather than the two-scalar i + combining dot of full casing,
// keeping every normalized element a single scalar.
inline CodePoint to_lower(CodePoint cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp < 0x00C0) return cp;
    if (cp <= 0x00DE) return cp == 0x00D7 ? cp : cp + 0x20;  // Latin-1, skip multiplication sign
    if (cp < 0x0100) return cp;
    if (cp <= 0x0137) {
        if (cp == 0x0130) return U'i';
        return (cp % 2 == 0) ? cp + 1 : cp;
    }
    if (cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp <= 0x0177 && cp >= 0x014A) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x0178) return 0x00FF;
    if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x01CD && cp <= 0x01DC) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x01DE && cp <= 0x01EF) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x01F8 && cp <= 0x021F) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x0222 && cp <= 0x0233) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x0246 && cp <= 0x024F) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x0386) return 0x03AC;
    if (cp >= 0x0388 && cp <= 0x038A) return cp + 0x25;
    if (cp == 0x038C) return 0x03CC;
    if (cp >= 0x038E && cp <= 0x038F) return cp + 0x3F;
    if (cp >= 0x0391 && cp <= 0x03A1) return cp + 0x20;
    if (cp >= 0x03A3 && cp <= 0x03AB) return cp + 0x20;
    if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
    if (cp >= 0x1E00 && cp <= 0x1E95) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x1E9E) return 0x00DF;  // capital sharp s
    if (cp >= 0x1EA0 && cp <= 0x1EFF) return (cp % 2 == 0) ? cp + 1 : cp;
    return cp;
}

// Canonical composition of a lowercase base letter with a combining mark.
inline std::optional<CodePoint> compose(CodePoint base, CodePoint mark) {
    for (const auto& c : detail::kCompositions)
        if (c.base == base && c.mark == mark) return c.composed;
    return std::nullopt;
}

inline void utf8_append(std::string& out, CodePoint cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string utf8_encode(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size());
    for (CodePoint cp : cps) utf8_append(out, cp);
    return out;
}

// Strict UTF-8 decoder: rejects overlong forms, surrogates, values past
// U+10FFFF, and truncated sequences.
inline std::u32string utf8_decode(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::size_t n = bytes.size();
    while (i < n) {
        const unsigned char b0 = p[i];
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        int len;
        char32_t cp;
        char32_t min_cp;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2; cp = b0 & 0x1F; min_cp = 0x80;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3; cp = b0 & 0x0F; min_cp = 0x800;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4; cp = b0 & 0x07; min_cp = 0x10000;
        } else {
            throw DecodeError(i, "invalid lead byte");
        }
        if (i + len > n) throw DecodeError(i, "truncated sequence");
        for (int k = 1; k < len; ++k) {
            const unsigned char bk = p[i + k];
            if ((bk & 0xC0) != 0x80) throw DecodeError(i, "invalid continuation byte");
            cp = (cp << 6) | (bk & 0x3F);
        }
        if (cp < min_cp) throw DecodeError(i, "overlong encoding");
        if (cp >= 0xD800 && cp <= 0xDFFF) throw DecodeError(i, "surrogate code point");
        if (cp > 0x10FFFF) throw DecodeError(i, "code point out of range");
        out.push_back(cp);
        i += len;
    }
    return out;
}

}  // namespace langid
