#pragma once

#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cca {

// Error for malformed text input.  position() is a 0-based offset into the
// original string, including any offset the caller threaded through.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        pos_(pos) {}

  std::size_t position() const noexcept { return pos_; }

private:
  std::size_t pos_;
};

// Failure of a structural invariant the theory guarantees.  Seeing one
// means a convention or a conjectured property has been falsified by the
// computation, not that the user supplied bad input.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Splits on sep, keeping the offset of each piece.  "a;;b" yields three
// pieces, the middle one empty.
inline std::vector<std::pair<std::string_view, std::size_t>>
split_with_positions(std::string_view text, char sep) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      out.emplace_back(text.substr(start, i - start), start);
      start = i + 1;
    }
  }
  return out;
}

inline long long parse_int(std::string_view piece, std::size_t pos) {
  long long value = 0;
  const char* first = piece.data();
  const char* last = first + piece.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || piece.empty()) {
    throw ParseError("expected an integer, got '" + std::string(piece) + "'", pos);
  }
  return value;
}

}  // namespace cca
