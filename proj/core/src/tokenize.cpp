#include "reldim/tokenize.hpp"

namespace reldim {

namespace {

bool is_word_byte(unsigned char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

std::size_t code_points(std::string_view s) noexcept {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace

void add_tokens(TokenBag& bag, std::string_view text) {
  std::string token;
  auto flush = [&] {
    if (code_points(token) >= 2) ++bag[token];
    token.clear();
  };
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      token.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
}

TokenBag tokenize(std::string_view text) {
  TokenBag bag;
  add_tokens(bag, text);
  return bag;
}

void merge_into(TokenBag& dst, const TokenBag& src) {
  for (const auto& [token, count] : src) dst[token] += count;
}

std::uint64_t total_count(const TokenBag& bag) noexcept {
  std::uint64_t n = 0;
  for (const auto& [token, count] : bag) n += count;
  return n;
}

std::string render_bag(const TokenBag& bag) {
  std::string out;
  for (const auto& [token, count] : bag) {
    for (std::uint32_t i = 0; i < count; ++i) {
      if (!out.empty()) out.push_back(' ');
      out += token;
    }
  }
  return out;
}

}  // namespace reldim
