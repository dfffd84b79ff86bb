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

#include "faqs/prefix.h"

#include <arpa/inet.h>

#include <array>
#include <cstring>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace faqs {
namespace {

// absl is built with its own string_view here.
absl::string_view Sv(std::string_view s) { return {s.data(), s.size()}; }

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

absl::Status FamilyMismatch(AddressFamily a, AddressFamily b) {
  return absl::InvalidArgumentError(
      absl::StrCat("address family mismatch: ", a.name(), " vs ", b.name()));
}

absl::StatusOr<AddressBits> ParseBits(std::string_view text,
                                      AddressFamily family) {
  AddressBits bits;
  if (family.is_toy()) {
    if (text.empty() || text.size() > static_cast<size_t>(family.width())) {
      return absl::InvalidArgumentError(
          absl::StrCat("expected 1..", family.width(), " binary digits, got '",
                       Sv(text), "'"));
    }
    for (size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '0' && text[i] != '1') {
        return absl::InvalidArgumentError(
            absl::StrCat("not a binary digit string: '", Sv(text), "'"));
      }
      bits = bits.with_bit(static_cast<int>(i), text[i] == '1');
    }
    return bits;
  }

  // inet_pton wants a NUL-terminated buffer.
  std::string buf(text);
  if (family == AddressFamily::Ipv4()) {
    in_addr a4{};
    if (inet_pton(AF_INET, buf.c_str(), &a4) != 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed IPv4 address '", Sv(text), "'"));
    }
    bits.hi = static_cast<std::uint64_t>(ntohl(a4.s_addr)) << 32;
    return bits;
  }
  in6_addr a6{};
  if (inet_pton(AF_INET6, buf.c_str(), &a6) != 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed IPv6 address '", Sv(text), "'"));
  }
  for (int i = 0; i < 8; ++i) {
    bits.hi = (bits.hi << 8) | a6.s6_addr[i];
    bits.lo = (bits.lo << 8) | a6.s6_addr[8 + i];
  }
  return bits;
}

std::string FormatBits(const AddressBits& bits, AddressFamily family) {
  if (family.is_toy()) {
    std::string out(static_cast<size_t>(family.width()), '0');
    for (int i = 0; i < family.width(); ++i) {
      if (bits.bit(i)) out[static_cast<size_t>(i)] = '1';
    }
    return out;
  }
  std::array<char, INET6_ADDRSTRLEN> buf{};
  if (family == AddressFamily::Ipv4()) {
    in_addr a4{};
    a4.s_addr = htonl(static_cast<std::uint32_t>(bits.hi >> 32));
    inet_ntop(AF_INET, &a4, buf.data(), buf.size());
  } else {
    in6_addr a6{};
    for (int i = 0; i < 8; ++i) {
      a6.s6_addr[i] = static_cast<std::uint8_t>(bits.hi >> (56 - 8 * i));
      a6.s6_addr[8 + i] = static_cast<std::uint8_t>(bits.lo >> (56 - 8 * i));
    }
    inet_ntop(AF_INET6, &a6, buf.data(), buf.size());
  }
  return std::string(buf.data());
}

}  // namespace

absl::StatusOr<AddressFamily> AddressFamily::Toy(int width) {
  if (width < kMinToyWidth || width > kMaxToyWidth) {
    return absl::InvalidArgumentError(absl::StrCat(
        "toy width must be in [", kMinToyWidth, ", ", kMaxToyWidth, "], got ",
        width));
  }
  return AddressFamily(width);
}

absl::StatusOr<AddressFamily> AddressFamily::FromName(std::string_view name) {
  if (name == "v4") return Ipv4();
  if (name == "v6") return Ipv6();
  int width = 0;
  if (name.size() > 1 && name[0] == 'w' && AllDigits(name.substr(1)) &&
      absl::SimpleAtoi(Sv(name.substr(1)), &width)) {
    return Toy(width);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown address family '", Sv(name), "' (v4, v6, w4..w16)"));
}

std::string AddressFamily::name() const {
  if (width_ == 32) return "v4";
  if (width_ == 128) return "v6";
  return absl::StrCat("w", width_);
}

IpAddress IpAddress::FromInteger(AddressFamily family, std::uint64_t value) {
  AddressBits bits;
  const int w = family.width();
  if (w <= 64) {
    bits.hi = w == 64 ? value : value << (64 - w);
  } else {
    bits.lo = value;
  }
  return IpAddress(family, bits);
}

std::uint64_t IpAddress::ToInteger() const {
  const int w = family_.width();
  if (w > 64) return bits_.lo;
  return w == 64 ? bits_.hi : bits_.hi >> (64 - w);
}

std::string IpAddress::ToString() const { return FormatBits(bits_, family_); }

absl::StatusOr<IpPrefix> IpPrefix::Create(AddressFamily family,
                                          AddressBits bits, int length) {
  if (length < 0 || length > family.width()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "prefix length ", length, " out of range 0..", family.width()));
  }
  if (bits.masked(length) != bits) {
    return absl::InvalidArgumentError(absl::StrCat(
        "host bits set beyond /", length, " in ", FormatBits(bits, family)));
  }
  return IpPrefix(family, bits, length);
}

IpPrefix IpPrefix::Truncate(AddressFamily family, AddressBits bits,
                            int length) {
  return IpPrefix(family, bits.masked(length), length);
}

std::uint64_t IpPrefix::FirstInteger() const {
  return IpAddress(family_, bits_).ToInteger();
}

std::uint64_t IpPrefix::LastInteger() const {
  const int host_bits = family_.width() - length_;
  const std::uint64_t span =
      host_bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << host_bits) - 1;
  return FirstInteger() | span;
}

std::string IpPrefix::ToString() const {
  return absl::StrCat(FormatBits(bits_, family_), "/", length_);
}

absl::StatusOr<IpPrefix> ParsePrefix(std::string_view text,
                                     AddressFamily family) {
  const size_t slash = text.rfind('/');
  if (slash == std::string_view::npos) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing '/len' in prefix '", Sv(text), "'"));
  }
  const std::string_view len_text = text.substr(slash + 1);
  int length = 0;
  if (!AllDigits(len_text) || len_text.size() > 3 ||
      !absl::SimpleAtoi(Sv(len_text), &length)) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed prefix length in '", Sv(text), "'"));
  }
  auto bits = ParseBits(text.substr(0, slash), family);
  if (!bits.ok()) return bits.status();
  return IpPrefix::Create(family, *bits, length);
}

absl::StatusOr<IpAddress> ParseAddress(std::string_view text,
                                       AddressFamily family) {
  auto bits = ParseBits(text, family);
  if (!bits.ok()) return bits.status();
  if (family.is_toy() && text.size() != static_cast<size_t>(family.width())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "toy address needs exactly ", family.width(), " digits: '", Sv(text), "'"));
  }
  return IpAddress(family, *bits);
}

absl::StatusOr<bool> Covers(const IpPrefix& p, const IpPrefix& q) {
  if (p.family() != q.family()) return FamilyMismatch(p.family(), q.family());
  return p.Contains(q);
}

absl::StatusOr<int> CommonPrefixLength(const IpPrefix& p, const IpPrefix& q) {
  if (p.family() != q.family()) return FamilyMismatch(p.family(), q.family());
  return p.CommonLength(q);
}

absl::StatusOr<bool> BitAt(const IpPrefix& p, int index) {
  if (index < 0 || index >= p.length()) {
    return absl::OutOfRangeError(absl::StrCat(
        "bit index ", index, " outside prefix ", p.ToString()));
  }
  return p.bit(index);
}

absl::StatusOr<bool> BitAt(const IpAddress& addr, int index) {
  if (index < 0 || index >= addr.family().width()) {
    return absl::OutOfRangeError(absl::StrCat(
        "bit index ", index, " outside ", addr.family().width(), "-bit address"));
  }
  return addr.bit(index);
}

}  // namespace faqs
