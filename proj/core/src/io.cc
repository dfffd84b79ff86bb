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

#include "faqs/io.h"

#include <memory>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace faqs {
namespace {

// Strips comments, CR and surrounding blanks, then splits on blanks.
std::vector<std::string> Tokenize(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (const size_t hash = line.find('#'); hash != std::string::npos) {
    line.resize(hash);
  }
  return absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty());
}

absl::Status LineError(std::uint64_t line, const absl::Status& cause) {
  return absl::Status(cause.code(),
                      absl::StrCat("line ", line, ": ", cause.message()));
}

absl::StatusOr<NextHop> ParseHop(const std::string& text) {
  std::uint32_t id = 0;
  bool digits = !text.empty();
  for (char c : text) digits = digits && absl::ascii_isdigit(c);
  if (!digits || !absl::SimpleAtoi(text, &id)) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed next hop '", text, "'"));
  }
  if (id == 0) {
    return absl::InvalidArgumentError(
        "next hop 0 is reserved for drop and not allowed in files");
  }
  return NextHop{id};
}

absl::StatusOr<AddressFamily> InferFamily(const std::string& prefix_text) {
  if (prefix_text.find(':') != std::string::npos) return AddressFamily::Ipv6();
  if (prefix_text.find('.') != std::string::npos) return AddressFamily::Ipv4();
  return absl::InvalidArgumentError(absl::StrCat(
      "cannot infer the address family of '", prefix_text,
      "'; name it explicitly"));
}

absl::Status CheckSameFamily(const std::string& prefix_text,
                             AddressFamily family) {
  if (family.is_toy()) return absl::OkStatus();
  auto seen = InferFamily(prefix_text);
  if (seen.ok() && *seen != family) {
    return absl::InvalidArgumentError(
        absl::StrCat("mixed address families: '", prefix_text,
                     "' is not ", family.name()));
  }
  return absl::OkStatus();
}

absl::StatusOr<IpPrefix> ParsePrefixToken(const std::string& text,
                                          AddressFamily family) {
  if (auto s = CheckSameFamily(text, family); !s.ok()) return s;
  return ParsePrefix(text, family);
}

}  // namespace

absl::StatusOr<Rib> ParseRib(std::istream& in,
                             std::optional<AddressFamily> family) {
  Rib rib;
  absl::flat_hash_map<IpPrefix, std::uint64_t> first_seen;
  std::string raw;
  std::uint64_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::vector<std::string> tok = Tokenize(std::move(raw));
    if (tok.empty()) continue;
    if (tok.size() != 2) {
      return LineError(line, absl::InvalidArgumentError(
                                 "expected '<prefix>/<len> <hop>'"));
    }
    if (!family.has_value()) {
      auto inferred = InferFamily(tok[0]);
      if (!inferred.ok()) return LineError(line, inferred.status());
      family = *inferred;
    }
    auto prefix = ParsePrefixToken(tok[0], *family);
    if (!prefix.ok()) return LineError(line, prefix.status());
    auto hop = ParseHop(tok[1]);
    if (!hop.ok()) return LineError(line, hop.status());
    auto [it, fresh] = first_seen.try_emplace(*prefix, line);
    if (!fresh) {
      return LineError(line, absl::AlreadyExistsError(absl::StrCat(
                                 "duplicate prefix ", prefix->ToString(),
                                 " (first on line ", it->second, ")")));
    }
    rib.entries.emplace_back(*prefix, *hop);
  }
  if (in.bad()) return absl::UnavailableError("read error");
  rib.family = family.value_or(AddressFamily::Ipv4());
  return rib;
}

absl::StatusOr<Rib> LoadRib(const std::string& path,
                            std::optional<AddressFamily> family) {
  std::ifstream in(path);
  if (!in) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  auto rib = ParseRib(in, family);
  if (!rib.ok()) {
    return absl::Status(rib.status().code(),
                        absl::StrCat(path, ": ", rib.status().message()));
  }
  return rib;
}

absl::StatusOr<UpdateReader> UpdateReader::Open(const std::string& path,
                                                AddressFamily family) {
  auto file = std::make_unique<std::ifstream>(path);
  if (!*file) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  return UpdateReader(std::move(file), family);
}

absl::StatusOr<std::optional<RouteUpdate>> UpdateReader::Next() {
  std::string raw;
  while (std::getline(*in_, raw)) {
    ++line_;
    const std::vector<std::string> tok = Tokenize(std::move(raw));
    if (tok.empty()) continue;
    if (tok[0] == "A" && tok.size() == 3) {
      auto prefix = ParsePrefixToken(tok[1], family_);
      if (!prefix.ok()) return LineError(line_, prefix.status());
      auto hop = ParseHop(tok[2]);
      if (!hop.ok()) return LineError(line_, hop.status());
      return RouteUpdate::Announce(*prefix, *hop);
    }
    if (tok[0] == "W" && tok.size() == 2) {
      auto prefix = ParsePrefixToken(tok[1], family_);
      if (!prefix.ok()) return LineError(line_, prefix.status());
      return RouteUpdate::Withdraw(*prefix);
    }
    return LineError(line_, absl::InvalidArgumentError(
                                "expected 'A <prefix> <hop>' or 'W <prefix>'"));
  }
  if (in_->bad()) return absl::UnavailableError("read error");
  return std::nullopt;
}

absl::StatusOr<std::vector<RouteUpdate>> LoadUpdates(const std::string& path,
                                                     AddressFamily family) {
  auto reader = UpdateReader::Open(path, family);
  if (!reader.ok()) return reader.status();
  std::vector<RouteUpdate> out;
  while (true) {
    auto next = reader->Next();
    if (!next.ok()) {
      return absl::Status(next.status().code(),
                          absl::StrCat(path, ": ", next.status().message()));
    }
    if (!next->has_value()) break;
    out.push_back(**next);
  }
  return out;
}

std::string FormatUpdate(const RouteUpdate& update) {
  if (update.kind == RouteUpdate::Kind::kWithdraw) {
    return absl::StrCat("W ", update.prefix.ToString());
  }
  return absl::StrCat("A ", update.prefix.ToString(), " ", update.next_hop.id);
}

absl::StatusOr<std::string> FormatSnapshot(const FibSnapshot& snapshot) {
  std::string out;
  for (const auto& [prefix, hop] : snapshot.entries) {
    if (hop == NextHop::Drop()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "entry ", prefix.ToString(), " has the reserved drop hop 0"));
    }
    absl::StrAppend(&out, prefix.ToString(), " ", hop.id, "\n");
  }
  return out;
}

absl::Status WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << text;
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::Status WriteSnapshot(const FibSnapshot& snapshot,
                           const std::string& path) {
  auto text = FormatSnapshot(snapshot);
  if (!text.ok()) return text.status();
  return WriteTextFile(path, *text);
}

}  // namespace faqs
