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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace qamem {

/// Binary pattern of length n; character 0 is qubit 0 of the register it is loaded into.
class Pattern {
 public:
  /// Throws InvalidInput unless `bits` is non-empty and over {0,1}.
  explicit Pattern(std::string bits);

  std::size_t size() const { return bits_.size(); }
  bool bit(std::size_t position) const { return bits_[position] == '1'; }
  const std::string& str() const { return bits_; }
  /// Basis index of this pattern in an n-qubit register (requires n <= 63).
  std::uint64_t to_index() const;
  static Pattern from_index(std::uint64_t index, std::size_t n);

  auto operator<=>(const Pattern&) const = default;

 private:
  std::string bits_;
};

/// Ordered list of p distinct patterns of a common length n, 1 <= p <= 2^n.
class PatternSet {
 public:
  /// Throws InvalidInput on an empty list, mixed lengths, or duplicates.
  explicit PatternSet(std::vector<Pattern> patterns);
  static PatternSet from_strings(const std::vector<std::string>& bits);

  std::size_t n() const { return n_; }
  std::size_t p() const { return patterns_.size(); }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  const Pattern& operator[](std::size_t k) const { return patterns_[k]; }
  bool contains(const Pattern& pattern) const;

 private:
  std::size_t n_ = 0;
  std::vector<Pattern> patterns_;
};

/// Parses the pattern file format: one bit string per line, '#' comments and
/// blank lines ignored, one common length. Errors name the offending line.
PatternSet parse_patterns(std::istream& in);
PatternSet load_patterns(const std::filesystem::path& path);

}  // namespace qamem
