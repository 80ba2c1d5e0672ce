// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wfsem {

// Maximal runs of ASCII letters/digits (bytes >= 0x80 count as letters so
// UTF-8 words stay whole), ASCII-lowercased. Everything else separates.
std::vector<std::string> tokenize(std::string_view text);

std::string to_lower(std::string_view text);

// Trim and collapse internal whitespace runs to one space.
std::string normalize_space(std::string_view text);

std::string trim(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Replace invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

std::string sha256_hex(std::string_view bytes);

// True when `needle` occurs in `haystack` as a run of consecutive tokens.
bool contains_token_sequence(const std::vector<std::string>& haystack,
                             const std::vector<std::string>& needle);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace wfsem
