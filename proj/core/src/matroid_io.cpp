#include "bmx/matroid_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <vector>

#include "bmx/errors.hpp"

namespace bmx {

namespace {

struct Line {
  std::size_t offset;
  std::string_view body;
};

// Non-empty lines with comments stripped and whitespace trimmed.
std::vector<Line> data_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    line = line.substr(0, line.find('#'));
    std::size_t lead = 0;
    while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
    line.remove_prefix(lead);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    if (!line.empty()) out.push_back({start + lead, line});
    start = end + 1;
  }
  return out;
}

int parse_dim(std::string_view digits, std::size_t offset) {
  int n = -1;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
    throw ParseError("expected a dimension", offset);
  }
  if (n < 0 || n > kMaxDim) throw ParseError("dimension outside [0, 24]", offset);
  return n;
}

std::size_t hex_digits(int n) { return ((std::size_t{1} << n) - 1 + 3) / 4; }

}  // namespace

std::string to_bm1(const Matroid& m) {
  std::string out = "BM1\ndim " + std::to_string(m.dim()) + "\n";
  for (Word p : m.points()) {
    for (int i = 0; i < m.dim(); ++i) out.push_back(((p >> i) & 1U) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

Matroid parse_bm1(std::string_view text) {
  const auto lines = data_lines(text);
  if (lines.empty() || lines[0].body != "BM1") {
    throw ParseError("BM1: missing header", lines.empty() ? 0 : lines[0].offset);
  }
  if (lines.size() < 2 || lines[1].body.substr(0, 4) != "dim ") {
    throw ParseError("BM1: expected 'dim <n>'", lines.size() < 2 ? text.size() : lines[1].offset);
  }
  std::string_view digits = lines[1].body.substr(4);
  while (!digits.empty() && digits.front() == ' ') digits.remove_prefix(1);
  const int n = parse_dim(digits, lines[1].offset + 4);

  Matroid::Bits bits(std::size_t{1} << n);
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto [offset, body] = lines[i];
    if (body.size() != static_cast<std::size_t>(n)) {
      throw ParseError("BM1: element must have exactly " + std::to_string(n) + " characters",
                       offset);
    }
    Word v = 0;
    for (int j = 0; j < n; ++j) {
      if (body[j] == '1') {
        v |= Word{1} << j;
      } else if (body[j] != '0') {
        throw ParseError("BM1: element characters must be 0 or 1", offset + j);
      }
    }
    if (v == 0) throw ParseError("BM1: the zero vector is not an element", offset);
    if (bits.test(v)) throw ParseError("BM1: duplicate element", offset);
    bits.set(v);
  }
  return Matroid::from_bits(n, std::move(bits));
}

std::string to_compact(const Matroid& m) {
  static constexpr char kHex[] = "0123456789abcdef";
  const int n = m.dim();
  std::string out = "bm:" + std::to_string(n) + ":";
  const std::size_t digits = hex_digits(n);
  for (std::size_t k = 0; k < digits; ++k) {
    int nibble = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t index = 4 * k + b + 1;
      if (index < m.bits().size() && m.bits().test(index)) nibble |= 1 << b;
    }
    out.push_back(kHex[nibble]);
  }
  return out;
}

Matroid parse_compact(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  std::size_t lead = 0;
  while (lead < text.size() && std::isspace(static_cast<unsigned char>(text[lead]))) ++lead;
  if (text.substr(lead, 3) != "bm:") throw ParseError("compact: expected 'bm:' prefix", lead);
  const std::size_t dim_start = lead + 3;
  const std::size_t colon = text.find(':', dim_start);
  if (colon == std::string_view::npos) throw ParseError("compact: missing ':' after dimension", text.size());
  const int n = parse_dim(text.substr(dim_start, colon - dim_start), dim_start);
  const std::string_view hex = text.substr(colon + 1);
  if (hex.size() != hex_digits(n)) {
    throw ParseError("compact: expected " + std::to_string(hex_digits(n)) + " hex digits",
                     colon + 1);
  }
  const std::size_t limit = std::size_t{1} << n;
  Matroid::Bits bits(limit);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[k])));
    int nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      nibble = c - 'a' + 10;
    } else {
      throw ParseError("compact: invalid hex digit", colon + 1 + k);
    }
    for (int b = 0; b < 4; ++b) {
      if (!((nibble >> b) & 1)) continue;
      const std::size_t index = 4 * k + b + 1;
      if (index >= limit) throw ParseError("compact: bit beyond 2^n - 1 is set", colon + 1 + k);
      bits.set(index);
    }
  }
  return Matroid::from_bits(n, std::move(bits));
}

Matroid parse_matroid(std::string_view text) {
  const auto lines = data_lines(text);
  if (!lines.empty() && lines[0].body.substr(0, 3) == "bm:") {
    if (lines.size() > 1) throw ParseError("compact: trailing content", lines[1].offset);
    const auto [offset, body] = lines[0];
    try {
      return parse_compact(body);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), offset + e.offset());
    }
  }
  return parse_bm1(text);
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Matroid load_matroid(const std::string& path) { return parse_matroid(read_text(path)); }

}  // namespace bmx
