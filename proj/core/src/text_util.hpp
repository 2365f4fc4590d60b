#pragma once

// Number formatting and tokenizing shared by the text readers and writers.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace terramesh::detail {

/// Six significant digits, locale-independent, "." separator.
inline void append_g6(std::string& out, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 6);
  out.append(buf, res.ptr);
}

/// Shortest representation that parses back to the same double.
inline void append_shortest(std::string& out, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

inline void append_uint(std::string& out, unsigned long long value) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

/// Finite double occupying the whole token; a leading '+' is accepted.
inline std::optional<double> parse_double(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty() || token.front() == '+') return std::nullopt;
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

/// Integer occupying the whole token; a leading '+' is accepted.
inline std::optional<long long> parse_integer(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty() || token.front() == '+') return std::nullopt;
  long long value = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

constexpr bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

inline std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

/// Whitespace-separated tokens with 1-based line tracking.
class WordScanner {
 public:
  explicit WordScanner(std::string_view text) : text_(text) {}

  /// Next token, or an empty view at end of input. `line()` then refers to
  /// the returned token.
  std::string_view next() {
    skip_space();
    token_line_ = line_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::string_view peek() {
    const std::size_t saved_pos = pos_;
    const std::size_t saved_line = line_;
    const std::size_t saved_token_line = token_line_;
    const std::string_view tok = next();
    peek_line_ = token_line_;
    pos_ = saved_pos;
    line_ = saved_line;
    token_line_ = saved_token_line;
    return tok;
  }

  std::size_t line() const noexcept { return token_line_; }
  std::size_t peek_line() const noexcept { return peek_line_; }
  std::size_t current_line() const noexcept { return line_; }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t token_line_ = 1;
  std::size_t peek_line_ = 1;
};

/// Returns the token truncated for inclusion in an error message.
inline std::string quote_token(std::string_view token) {
  constexpr std::size_t kMax = 40;
  std::string out = "'";
  out.append(token.substr(0, kMax));
  if (token.size() > kMax) out += "...";
  out += "'";
  return out;
}

}  // namespace terramesh::detail
