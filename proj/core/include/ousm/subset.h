// Copyright 2026 The online-usm Authors.
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

#ifndef OUSM_SUBSET_H_
#define OUSM_SUBSET_H_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ousm {

// Largest universe any subset may range over.
inline constexpr int kMaxGroundSize = 30;

// A subset of the universe {1, ..., n}, stored as a bitmask in which element
// i occupies bit i - 1. Comparison follows the mask value, which is the
// enumeration order used throughout the library.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t mask) : mask_(mask) {}

  static constexpr Subset Empty() { return Subset(); }
  static constexpr Subset Full(int n) {
    return Subset(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static Subset Of(std::initializer_list<int> elements) {
    Subset s;
    for (int e : elements) s = s.With(e);
    return s;
  }

  constexpr std::uint64_t mask() const { return mask_; }

  constexpr bool Contains(int element) const {
    return (mask_ >> (element - 1)) & 1U;
  }
  constexpr Subset With(int element) const {
    return Subset(mask_ | (std::uint64_t{1} << (element - 1)));
  }
  constexpr Subset Without(int element) const {
    return Subset(mask_ & ~(std::uint64_t{1} << (element - 1)));
  }
  constexpr bool IsSubsetOf(Subset other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr int Size() const { return std::popcount(mask_); }
  constexpr bool IsEmpty() const { return mask_ == 0; }

  // Highest element present, or 0 for the empty set.
  constexpr int MaxElement() const { return 64 - std::countl_zero(mask_); }

  constexpr Subset operator|(Subset o) const { return Subset(mask_ | o.mask_); }
  constexpr Subset operator&(Subset o) const { return Subset(mask_ & o.mask_); }

  friend constexpr auto operator<=>(Subset, Subset) = default;

  std::vector<int> Elements() const;

  // "{1,3,4}".
  std::string ToString() const;

 private:
  std::uint64_t mask_ = 0;
};

}  // namespace ousm

#endif  // OUSM_SUBSET_H_
