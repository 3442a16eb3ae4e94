#pragma once

// Text forms of a matroid.
//
// BM1:
//   BM1
//   dim <n>
//   <one element per line: n characters over {0,1}, leftmost = coordinate 1>
// Blank lines and `#` comments are ignored. Elements are written in
// increasing index order.
//
// Compact: `bm:<n>:<hex>`. The hex digits hold the characteristic bitset over
// point indices 1..2^n-1, little-endian by index: digit k covers indices
// 4k+1..4k+4 and index 4k+1 is the digit's least significant bit. There are
// exactly ceil((2^n-1)/4) digits, lowercase on output.

#include <string>
#include <string_view>

#include "bmx/matroid.hpp"

namespace bmx {

std::string to_bm1(const Matroid& m);
/// Throws ParseError (with byte offset) on malformed input.
Matroid parse_bm1(std::string_view text);

std::string to_compact(const Matroid& m);
Matroid parse_compact(std::string_view text);

/// Accepts either form; a body whose first non-comment token starts with
/// "bm:" is read as compact.
Matroid parse_matroid(std::string_view text);

/// Reads a whole file; "-" means standard input.
std::string read_text(const std::string& path);
Matroid load_matroid(const std::string& path);

}  // namespace bmx
