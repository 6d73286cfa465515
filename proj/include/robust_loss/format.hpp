// Copyright 2026 The robust_loss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

#include "robust_loss/errors.hpp"
#include "robust_loss/params.hpp"

namespace robust_loss::text {

/// Shortest rendering within 12 significant digits ("%.12g"), '.' decimal
/// separator, infinities as "inf" / "-inf".
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_alpha(PowerParam a) {
  return a.is_neg_inf() ? "-inf" : format_number(a.value());
}

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

/// Parses a finite real; the whole token must be consumed.
inline bool try_parse_number(std::string_view token, double& out) {
  const std::string s(trim(token));
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) return false;
  out = v;
  return true;
}

inline double parse_number(std::string_view token, std::string_view what) {
  double v = 0.0;
  if (!try_parse_number(token, v)) {
    throw InvalidInput(std::string(what) + ": not a finite number: '" + std::string(token) + "'");
  }
  return v;
}

/// Finite real or "-inf" (case-insensitive).
inline PowerParam parse_alpha(std::string_view token) {
  std::string s(trim(token));
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (s == "-inf" || s == "-infinity") return PowerParam::neg_inf();
  return PowerParam(parse_number(s, "alpha"));
}

}  // namespace robust_loss::text
