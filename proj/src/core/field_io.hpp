// Copyright 2026 The besovheat Authors
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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/grid.hpp"

namespace besovheat {

// Binary field container: one JSON header line, a blank line, then little-endian f64
// samples, row-major with the last axis fastest and time slowest.
//   {"format":"besovheat-field","version":1,"dim":2,"N":64,"L":6.28,"T":1.0,"Nt":11,
//    "endian":"little","scalar":"f64","origin":[0,0]}
// T and Nt are absent for a single spatial slice.
struct FieldFile {
  GridSpec grid;
  std::optional<TimeGrid> time;
  std::vector<Field> slices;  // one per time node, or a single slice
};

void write_field_file(std::ostream& out, const FieldFile& file);
FieldFile read_field_file(std::istream& in);

void save_field_file(const std::string& path, const FieldFile& file);
FieldFile load_field_file(const std::string& path);

}  // namespace besovheat
