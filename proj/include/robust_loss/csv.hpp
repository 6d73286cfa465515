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

// Minimal reader for headered numeric CSV: comma separated, no quoting, the
// last column is the regression target and every earlier column a feature.

#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "robust_loss/errors.hpp"
#include "robust_loss/estimation.hpp"
#include "robust_loss/format.hpp"

namespace robust_loss::csv {

class CsvError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(text::trim(line.substr(start, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline Dataset read_dataset(std::istream& in, const std::string& source = "<stream>") {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    for (auto f : split_fields(line)) header.emplace_back(f);
  }
  if (header.empty()) throw CsvError(source + ": missing header row");
  if (header.size() < 2) {
    throw CsvError(source + ":" + std::to_string(line_no) +
                   ": need at least one feature column and a target column");
  }

  std::vector<Observation> rows;
  const std::size_t d = header.size() - 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw CsvError(source + ":" + std::to_string(line_no) + ": expected " +
                     std::to_string(header.size()) + " columns, found " +
                     std::to_string(fields.size()));
    }
    Observation obs;
    obs.features.resize(d);
    for (std::size_t j = 0; j < fields.size(); ++j) {
      double v = 0.0;
      if (!text::try_parse_number(fields[j], v)) {
        throw CsvError(source + ": row " + std::to_string(line_no) + ", column " +
                       std::to_string(j + 1) + " ('" + header[j] + "'): non-numeric value '" +
                       std::string(fields[j]) + "'");
      }
      (j < d ? obs.features[j] : obs.target) = v;
    }
    rows.push_back(std::move(obs));
  }
  if (rows.empty()) throw CsvError(source + ": no data rows");
  return Dataset(rows);
}

inline Dataset read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError(path + ": cannot open file");
  return read_dataset(in, path);
}

}  // namespace robust_loss::csv
