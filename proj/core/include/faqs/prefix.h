// Copyright 2026 The FAQS Authors
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

#ifndef FAQS_PREFIX_H_
#define FAQS_PREFIX_H_

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace faqs {

// Address width in bits. IPv4 and IPv6 are the production families; toy
// widths between 4 and 16 bits exist so that the whole address universe can
// be enumerated by the brute-force checkers.
class AddressFamily {
 public:
  static constexpr int kMinToyWidth = 4;
  static constexpr int kMaxToyWidth = 16;

  static constexpr AddressFamily Ipv4() { return AddressFamily(32); }
  static constexpr AddressFamily Ipv6() { return AddressFamily(128); }
  static absl::StatusOr<AddressFamily> Toy(int width);

  // Accepts "v4", "v6" and "w<N>" for toy widths ("w8").
  static absl::StatusOr<AddressFamily> FromName(std::string_view name);

  constexpr int width() const { return width_; }
  constexpr bool is_toy() const { return width_ <= kMaxToyWidth; }
  std::string name() const;

  friend constexpr bool operator==(AddressFamily, AddressFamily) = default;

 private:
  constexpr explicit AddressFamily(int width) : width_(width) {}

  int width_;
};

// 128 bits, left aligned: index 0 is the most significant bit of `hi` no
// matter what the family width is. Narrower families simply leave the tail
// zero, so every bit operation below is width independent.
struct AddressBits {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  constexpr bool bit(int index) const {
    return index < 64 ? ((hi >> (63 - index)) & 1u) != 0
                      : ((lo >> (127 - index)) & 1u) != 0;
  }

  constexpr AddressBits with_bit(int index, bool value) const {
    AddressBits out = *this;
    if (index < 64) {
      const std::uint64_t m = std::uint64_t{1} << (63 - index);
      out.hi = value ? (out.hi | m) : (out.hi & ~m);
    } else {
      const std::uint64_t m = std::uint64_t{1} << (127 - index);
      out.lo = value ? (out.lo | m) : (out.lo & ~m);
    }
    return out;
  }

  // Keeps the first `length` bits and zeroes the rest.
  constexpr AddressBits masked(int length) const {
    AddressBits out;
    if (length <= 0) return out;
    if (length >= 128) return *this;
    if (length <= 64) {
      out.hi = length == 64 ? hi : (hi & ~(~std::uint64_t{0} >> length));
    } else {
      out.hi = hi;
      out.lo = lo & ~(~std::uint64_t{0} >> (length - 64));
    }
    return out;
  }

  // Number of identical leading bits (128 when equal).
  constexpr int common_leading(const AddressBits& other) const {
    const std::uint64_t dh = hi ^ other.hi;
    if (dh != 0) return std::countl_zero(dh);
    const std::uint64_t dl = lo ^ other.lo;
    if (dl != 0) return 64 + std::countl_zero(dl);
    return 128;
  }

  friend constexpr auto operator<=>(const AddressBits&,
                                    const AddressBits&) = default;
};

class IpAddress {
 public:
  // `bits` must have nothing set beyond the family width.
  constexpr IpAddress(AddressFamily family, AddressBits bits)
      : family_(family), bits_(bits) {}

  // Toy-width convenience: the address whose value, read as an unsigned
  // integer of `family.width()` bits, equals `value`.
  static IpAddress FromInteger(AddressFamily family, std::uint64_t value);

  constexpr AddressFamily family() const { return family_; }
  constexpr const AddressBits& bits() const { return bits_; }
  constexpr bool bit(int index) const { return bits_.bit(index); }

  // Inverse of FromInteger; only meaningful for widths up to 64.
  std::uint64_t ToInteger() const;
  std::string ToString() const;

  friend constexpr bool operator==(const IpAddress&,
                                   const IpAddress&) = default;

 private:
  AddressFamily family_;
  AddressBits bits_;
};

class IpPrefix {
 public:
  // Rejects lengths outside 0..width and any bit set at or beyond `length`.
  static absl::StatusOr<IpPrefix> Create(AddressFamily family,
                                         AddressBits bits, int length);
  // Masks instead of rejecting. For generators and the trie's glue nodes.
  static IpPrefix Truncate(AddressFamily family, AddressBits bits, int length);
  static constexpr IpPrefix Default(AddressFamily family) {
    return IpPrefix(family, AddressBits{}, 0);
  }

  constexpr AddressFamily family() const { return family_; }
  constexpr const AddressBits& bits() const { return bits_; }
  constexpr int length() const { return length_; }
  constexpr bool is_default() const { return length_ == 0; }

  // Unchecked bit access; callers guarantee index < length().
  constexpr bool bit(int index) const { return bits_.bit(index); }

  // Unchecked forms of Covers/CommonPrefixLength; same family assumed.
  constexpr bool Contains(const IpPrefix& other) const {
    return length_ <= other.length_ &&
           bits_.common_leading(other.bits_) >= length_;
  }
  constexpr bool Contains(const IpAddress& addr) const {
    return bits_.common_leading(addr.bits()) >= length_;
  }
  constexpr int CommonLength(const IpPrefix& other) const {
    const int limit = length_ < other.length_ ? length_ : other.length_;
    const int common = bits_.common_leading(other.bits_);
    return common < limit ? common : limit;
  }

  // First and last address of the block, as integers. Widths <= 64 only.
  std::uint64_t FirstInteger() const;
  std::uint64_t LastInteger() const;

  std::string ToString() const;

  friend constexpr bool operator==(const IpPrefix&, const IpPrefix&) = default;
  // Orders by (bits, length): a covering prefix sorts before everything it
  // covers, which is what the snapshot writer and the sweep checkers need.
  friend constexpr std::strong_ordering operator<=>(const IpPrefix& a,
                                                    const IpPrefix& b) {
    if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
    return a.length_ <=> b.length_;
  }

  template <typename H>
  friend H AbslHashValue(H h, const IpPrefix& p) {
    return H::combine(std::move(h), p.bits_.hi, p.bits_.lo, p.length_,
                      p.family_.width());
  }

 private:
  constexpr IpPrefix(AddressFamily family, AddressBits bits, int length)
      : family_(family), bits_(bits), length_(static_cast<std::uint8_t>(length)) {}

  AddressFamily family_;
  AddressBits bits_;
  std::uint8_t length_;
};

// Dotted quad for IPv4, RFC 4291 text for IPv6, and a string of 0/1 digits
// for toy widths (shorter strings are zero padded on the right). The address
// part is followed by "/len". Host bits beyond len are an error.
absl::StatusOr<IpPrefix> ParsePrefix(std::string_view text,
                                     AddressFamily family);
absl::StatusOr<IpAddress> ParseAddress(std::string_view text,
                                       AddressFamily family);

// Checked operations. All of them fail on a family mismatch.
absl::StatusOr<bool> Covers(const IpPrefix& p, const IpPrefix& q);
absl::StatusOr<int> CommonPrefixLength(const IpPrefix& p, const IpPrefix& q);
absl::StatusOr<bool> BitAt(const IpPrefix& p, int index);
absl::StatusOr<bool> BitAt(const IpAddress& addr, int index);

}  // namespace faqs

#endif  // FAQS_PREFIX_H_
