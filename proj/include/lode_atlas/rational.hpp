// Copyright 2026 The lode-atlas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "lode_atlas/errors.hpp"

namespace lode_atlas {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "-p" or "p/q". Whitespace is not accepted.
inline Rat parse_rat(std::string_view s) {
  if (s.empty()) throw ParseError("empty rational");
  std::string str(s);
  Rat r;
  if (r.set_str(str, 10) != 0) throw ParseError("bad rational '" + str + "'");
  if (r.get_den() == 0) throw DivisionByZero("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(10); }
inline std::string to_string(const Int& z) { return z.get_str(10); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Rat rat_pow(const Rat& base, long e) {
  if (e < 0) {
    if (is_zero(base)) throw DivisionByZero("zero to a negative power");
    return rat_pow(Rat(1) / base, -e);
  }
  Rat r(1), b(base);
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline std::size_t hash_int(const Int& z) {
  std::size_t h = static_cast<std::size_t>(mpz_size(z.get_mpz_t()));
  const std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i)
    h = h * 0x9E3779B97F4A7C15ULL + mpz_getlimbn(z.get_mpz_t(), i);
  return h ^ static_cast<std::size_t>(sgn(z) + 1);
}

inline std::size_t hash_rat(const Rat& r) {
  return hash_int(r.get_num()) * 31 + hash_int(r.get_den());
}

}  // namespace lode_atlas
