#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "gaussgcd/errors.hpp"

namespace gaussgcd {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 checked_add(i128 a, i128 b) {
  i128 out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("128-bit addition overflow");
  return out;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("128-bit multiplication overflow");
  return out;
}

/// k^n in 128 bits, throwing on overflow.
inline i128 checked_pow(i128 base, unsigned exp) {
  i128 out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

inline std::int64_t narrow_i64(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("value does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

inline std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
  return to_string(static_cast<u128>(v));
}

/// floor(num / den) for den > 0.
inline i128 floor_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

}  // namespace gaussgcd
