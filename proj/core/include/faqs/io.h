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

// Text formats.
//
//   RIB / snapshot file:  <prefix>/<len> <hop>
//   update trace:         A <prefix>/<len> <hop>
//                         W <prefix>/<len>
//
// '#' starts a comment, blank lines are skipped, CRLF is accepted. Hops are
// integers >= 1; 0 is the reserved drop hop and never appears in a file.
//
// Parse failures come back as InvalidArgument or AlreadyExists and name the
// line; failures to open, read or write come back as Unavailable.

#ifndef FAQS_IO_H_
#define FAQS_IO_H_

#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "faqs/aggregator.h"
#include "faqs/patricia.h"
#include "faqs/prefix.h"
#include "faqs/verify.h"

namespace faqs {

using RibEntry = std::pair<IpPrefix, NextHop>;

struct Rib {
  AddressFamily family = AddressFamily::Ipv4();
  std::vector<RibEntry> entries;  // file order
};

// With no family given, it is inferred from the first entry (IPv4 or IPv6;
// toy widths must be named).
absl::StatusOr<Rib> LoadRib(const std::string& path,
                            std::optional<AddressFamily> family = {});
absl::StatusOr<Rib> ParseRib(std::istream& in,
                             std::optional<AddressFamily> family = {});

// Streams an update trace one line at a time.
class UpdateReader {
 public:
  static absl::StatusOr<UpdateReader> Open(const std::string& path,
                                           AddressFamily family);
  UpdateReader(std::istream& in, AddressFamily family)
      : in_(&in), family_(family) {}

  UpdateReader(UpdateReader&&) = default;
  UpdateReader& operator=(UpdateReader&&) = default;

  // nullopt at end of input.
  absl::StatusOr<std::optional<RouteUpdate>> Next();

  // Number of the line last consumed.
  std::uint64_t line_number() const { return line_; }

 private:
  UpdateReader(std::unique_ptr<std::ifstream> file, AddressFamily family)
      : file_(std::move(file)), in_(file_.get()), family_(family) {}

  std::unique_ptr<std::ifstream> file_;
  std::istream* in_;
  AddressFamily family_;
  std::uint64_t line_ = 0;
};

// Reads a whole trace into memory. Prefer UpdateReader for long traces.
absl::StatusOr<std::vector<RouteUpdate>> LoadUpdates(const std::string& path,
                                                     AddressFamily family);

std::string FormatUpdate(const RouteUpdate& update);

// Sorted by (prefix bits, length). Entries with hop 0 cannot be written.
absl::StatusOr<std::string> FormatSnapshot(const FibSnapshot& snapshot);
absl::Status WriteSnapshot(const FibSnapshot& snapshot,
                           const std::string& path);

absl::Status WriteTextFile(const std::string& path, const std::string& text);

}  // namespace faqs

#endif  // FAQS_IO_H_
