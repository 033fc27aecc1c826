// Copyright 2026 The qamem Authors
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

#include "qamem/pattern.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "qamem/errors.hpp"

namespace qamem {

Pattern::Pattern(std::string bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw InvalidInput("pattern must not be empty");
  if (!std::all_of(bits_.begin(), bits_.end(), [](char c) { return c == '0' || c == '1'; })) {
    throw InvalidInput("pattern '" + bits_ + "' contains characters other than 0 and 1");
  }
}

std::uint64_t Pattern::to_index() const {
  if (bits_.size() > 63) throw InvalidInput("pattern too long to index");
  std::uint64_t v = 0;
  for (char c : bits_) v = (v << 1) | (c == '1' ? 1U : 0U);
  return v;
}

Pattern Pattern::from_index(std::uint64_t index, std::size_t n) {
  if (n == 0 || n > 63) throw InvalidInput("pattern length must be in 1..63");
  if (index >> n) throw InvalidInput("index does not fit in the pattern length");
  std::string bits(n, '0');
  for (std::size_t k = 0; k < n; ++k) {
    if ((index >> (n - 1 - k)) & 1U) bits[k] = '1';
  }
  return Pattern(std::move(bits));
}

PatternSet::PatternSet(std::vector<Pattern> patterns) : patterns_(std::move(patterns)) {
  if (patterns_.empty()) throw InvalidInput("pattern set is empty (p must be >= 1)");
  n_ = patterns_.front().size();
  std::map<std::string_view, std::size_t> seen;
  for (std::size_t k = 0; k < patterns_.size(); ++k) {
    const auto& pat = patterns_[k];
    if (pat.size() != n_) {
      throw InvalidInput("pattern " + std::to_string(k + 1) + " has length " +
                         std::to_string(pat.size()) + ", expected " + std::to_string(n_));
    }
    auto [it, fresh] = seen.emplace(pat.str(), k);
    if (!fresh) {
      throw InvalidInput("pattern " + std::to_string(k + 1) + " ('" + pat.str() +
                         "') duplicates pattern " + std::to_string(it->second + 1));
    }
  }
}

PatternSet PatternSet::from_strings(const std::vector<std::string>& bits) {
  std::vector<Pattern> pats;
  pats.reserve(bits.size());
  for (const auto& b : bits) pats.emplace_back(b);
  return PatternSet(std::move(pats));
}

bool PatternSet::contains(const Pattern& pattern) const {
  return std::find(patterns_.begin(), patterns_.end(), pattern) != patterns_.end();
}

PatternSet parse_patterns(std::istream& in) {
  std::vector<Pattern> pats;
  std::map<std::string, std::size_t> first_line;
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t");
    std::string bits = line.substr(begin, end - begin + 1);
    if (bits.front() == '#') continue;
    const auto where = "line " + std::to_string(lineno) + ": ";
    if (bits.find_first_not_of("01") != std::string::npos) {
      throw InvalidInput(where + "'" + bits + "' is not a bit string");
    }
    if (n == 0) {
      n = bits.size();
    } else if (bits.size() != n) {
      throw InvalidInput(where + "pattern length " + std::to_string(bits.size()) +
                         " differs from " + std::to_string(n));
    }
    auto [it, fresh] = first_line.emplace(bits, lineno);
    if (!fresh) {
      throw InvalidInput(where + "duplicate pattern '" + bits + "' (first seen on line " +
                         std::to_string(it->second) + ")");
    }
    pats.emplace_back(std::move(bits));
  }
  if (pats.empty()) throw InvalidInput("pattern file contains no patterns");
  return PatternSet(std::move(pats));
}

PatternSet load_patterns(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open pattern file '" + path.string() + "'");
  return parse_patterns(in);
}

}  // namespace qamem
