#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace reldim {

// Multiset of lowercase tokens. Ordered so that serialization is stable.
using TokenBag = std::map<std::string, std::uint32_t, std::less<>>;

// Lowercases ASCII, splits on every character that is not an ASCII letter or
// digit, and drops tokens shorter than two characters. Bytes >= 0x80 are
// treated as letters so UTF-8 words survive intact; length is measured in
// code points.
TokenBag tokenize(std::string_view text);

// Adds the tokens of text into bag.
void add_tokens(TokenBag& bag, std::string_view text);

void merge_into(TokenBag& dst, const TokenBag& src);

std::uint64_t total_count(const TokenBag& bag) noexcept;

// Space-joined tokens, each repeated by its count. tokenize() of the result
// reproduces the bag.
std::string render_bag(const TokenBag& bag);

}  // namespace reldim
