// Copyright 2026 The splp-cmcs Authors
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

#ifndef SPLP_INSTANCE_IO_H_
#define SPLP_INSTANCE_IO_H_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "splp/instance.h"

namespace splp {

// Malformed input. line() is 1-based, or 0 when the error is not tied to a
// particular line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

enum class InstanceFormat {
  // "m n" header, then m lines "f_i c_i1 ... c_in".
  kCanonical,
  // UflLib simple format: optional "FILE: name" line, "m n 0" header, then m
  // lines "i f_i c_i1 ... c_in". Used by the published KG benchmark files.
  kUflLib,
  // OR-Library capacitated/uncapacitated layout: "m n", m lines
  // "capacity f_i", then per client a demand followed by m costs. Demands and
  // capacities are ignored; costs must be integral.
  kOrLib,
};

const char* to_string(InstanceFormat format);

// Parses the canonical format only.
Instance parse_instance(std::string_view text);

// Detects the format from the header shape and token count, then parses.
// When nothing fits, the error lists every attempted format.
Instance parse_instance_any(std::string_view text,
                            InstanceFormat* detected = nullptr);

// Canonical text: "m n\n" followed by one "f c_1 ... c_n\n" line per site.
std::string write_instance(const Instance& inst);

// File helpers. read_instance_file auto-detects and names the instance after
// the file stem.
Instance read_instance_file(const std::filesystem::path& path);
void write_instance_file(const std::filesystem::path& path,
                         const Instance& inst);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace splp

#endif  // SPLP_INSTANCE_IO_H_
