#ifndef EMARC_UNICODE_HPP
#define EMARC_UNICODE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace emarc {

// Minimal UTF-8 machinery. Classification and case mapping cover the Latin,
// Greek and Cyrillic blocks, which is what turn-of-the-century European
// corpora contain; anything outside those blocks is treated as a non-letter
// and left unchanged by lowercasing.

bool is_valid_utf8(std::string_view bytes);

// Decodes or throws DecodeError with the byte offset of the first bad byte.
std::vector<char32_t> decode_utf8(std::string_view bytes);

void append_utf8(std::string& out, char32_t cp);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);

char32_t to_lower(char32_t cp);

// UTF-8 in, UTF-8 out. Assumes valid input.
std::string lower_copy(std::string_view text);

} // namespace emarc

#endif
