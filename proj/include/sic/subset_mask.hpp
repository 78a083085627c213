// Copyright 2026 The sicbound Authors
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

#ifndef SIC_SUBSET_MASK_HPP_
#define SIC_SUBSET_MASK_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace sic {

// Largest message count the library accepts. Every algorithm here walks the
// subset lattice, so tables of size 2^n have to stay in memory.
inline constexpr int kMaxMessages = 24;

using Mask = std::uint32_t;

// A subset of the message indices [1..n]. Message k lives at bit k-1.
class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(Mask bits) : bits_(bits) {}

  // The full message set [n].
  static constexpr SubsetMask full(int n) {
    return SubsetMask(n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1));
  }
  // Builds a subset from 1-based message indices.
  static SubsetMask of(std::initializer_list<int> messages) {
    SubsetMask s;
    for (int m : messages) s = s.with(m);
    return s;
  }
  static SubsetMask of(const std::vector<int>& messages) {
    SubsetMask s;
    for (int m : messages) s = s.with(m);
    return s;
  }
  static constexpr SubsetMask singleton(int message) {
    return SubsetMask(Mask{1} << (message - 1));
  }

  constexpr Mask bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int message) const {
    return (bits_ >> (message - 1)) & 1U;
  }
  constexpr SubsetMask with(int message) const {
    return SubsetMask(bits_ | (Mask{1} << (message - 1)));
  }
  constexpr SubsetMask without(int message) const {
    return SubsetMask(bits_ & ~(Mask{1} << (message - 1)));
  }
  constexpr bool is_subset_of(SubsetMask other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(SubsetMask other) const {
    return (bits_ & other.bits_) != 0;
  }
  // Complement within [n].
  constexpr SubsetMask complement(int n) const {
    return SubsetMask(~bits_ & full(n).bits_);
  }
  // True when no message index above n is present.
  constexpr bool within(int n) const { return is_subset_of(full(n)); }

  // 1-based members in ascending order.
  std::vector<int> members() const {
    std::vector<int> out;
    for (Mask b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b) + 1);
    }
    return out;
  }

  // "{1,3}" style; the empty set prints as "{}".
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int m : members()) {
      if (!first) out += ',';
      out += std::to_string(m);
      first = false;
    }
    out += '}';
    return out;
  }

  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ | b.bits_);
  }
  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ & b.bits_);
  }
  // Set difference a \ b.
  friend constexpr SubsetMask operator-(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
  friend constexpr auto operator<=>(SubsetMask a, SubsetMask b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  Mask bits_ = 0;
};

// Packs the bits of `value` selected by `select` into the low bits of the
// result (software pext).
inline Mask extract_bits(Mask value, Mask select) {
  Mask out = 0;
  int k = 0;
  for (Mask s = select; s != 0; s &= s - 1, ++k) {
    if (value & (s & (~s + 1))) out |= Mask{1} << k;
  }
  return out;
}

// Inverse of extract_bits: scatters the low bits of `packed` onto the set
// bits of `select` (software pdep).
inline Mask deposit_bits(Mask packed, Mask select) {
  Mask out = 0;
  for (Mask s = select; s != 0; s &= s - 1, packed >>= 1) {
    if (packed & 1U) out |= s & (~s + 1);
  }
  return out;
}

}  // namespace sic

#endif  // SIC_SUBSET_MASK_HPP_
