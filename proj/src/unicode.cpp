#include "emarc/unicode.hpp"

#include "emarc/errors.hpp"

namespace emarc {

namespace {

// Decodes one code point starting at bytes[i]. Returns the code point and
// advances i past it, or returns U+FFFFFFFF on malformed input (overlong
// forms, surrogates and values above U+10FFFF are malformed).
char32_t decode_one(std::string_view bytes, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return 0xFFFFFFFF;
    }
    if (i + static_cast<std::size_t>(len) > bytes.size())
        return 0xFFFFFFFF;
    for (int k = 1; k < len; ++k) {
        const auto bk = static_cast<unsigned char>(bytes[i + static_cast<std::size_t>(k)]);
        if ((bk & 0xC0) != 0x80)
            return 0xFFFFFFFF;
        cp = (cp << 6) | (bk & 0x3F);
    }
    static constexpr char32_t min_for_len[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[len])
        return 0xFFFFFFFF; // overlong
    if (cp >= 0xD800 && cp <= 0xDFFF)
        return 0xFFFFFFFF; // surrogate
    if (cp > 0x10FFFF)
        return 0xFFFFFFFF;
    i += static_cast<std::size_t>(len);
    return cp;
}

} // namespace

bool is_valid_utf8(std::string_view bytes) {
    std::size_t i = 0;
    while (i < bytes.size()) {
        if (decode_one(bytes, i) == 0xFFFFFFFF)
            return false;
    }
    return true;
}

std::vector<char32_t> decode_utf8(std::string_view bytes) {
    std::vector<char32_t> out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        const std::size_t at = i;
        const char32_t cp = decode_one(bytes, i);
        if (cp == 0xFFFFFFFF)
            throw DecodeError("invalid UTF-8 at byte offset " + std::to_string(at));
        out.push_back(cp);
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
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

bool is_letter(char32_t cp) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z'))
        return true;
    if (cp >= 0xC0 && cp <= 0xFF)
        return cp != 0xD7 && cp != 0xF7; // Latin-1 letters minus multiply/divide signs
    if (cp >= 0x100 && cp <= 0x24F)
        return true; // Latin Extended-A and -B
    if (cp >= 0x386 && cp <= 0x3FF)
        return cp != 0x387; // Greek, minus ano teleia
    if (cp >= 0x400 && cp <= 0x4FF)
        return true; // Cyrillic
    return false;
}

bool is_digit(char32_t cp) {
    return cp >= '0' && cp <= '9';
}

char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z')
        return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7)
        return cp + 0x20;
    if (cp == 0x178)
        return 0xFF; // Y with diaeresis
    // Latin Extended-A pairs alternate upper/lower
    if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
        if (cp == 0x130)
            return 'i'; // dotted capital I
        return (cp % 2 == 0) ? cp + 1 : cp;
    }
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E))
        return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2)
        return cp + 0x20; // Greek capitals
    if (cp >= 0x410 && cp <= 0x42F)
        return cp + 0x20; // Cyrillic capitals
    if (cp >= 0x400 && cp <= 0x40F)
        return cp + 0x50;
    return cp;
}

std::string lower_copy(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const auto b0 = static_cast<unsigned char>(text[i]);
        if (b0 < 0x80) { // fast path
            out.push_back(static_cast<char>(
                (b0 >= 'A' && b0 <= 'Z') ? b0 + 0x20 : b0));
            ++i;
            continue;
        }
        const char32_t cp = decode_one(text, i);
        if (cp == 0xFFFFFFFF)
            throw DecodeError("invalid UTF-8 in lower_copy");
        append_utf8(out, to_lower(cp));
    }
    return out;
}

} // namespace emarc
