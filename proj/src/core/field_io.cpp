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

#include "core/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "core/error.hpp"

namespace besovheat {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

void put_f64(std::ostream& out, double v) {
  unsigned char b[8];
  std::memcpy(b, &v, 8);
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + 8);
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw Error(ErrorCode::Io, "field file ended before all samples were read");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + 8);
  double v;
  std::memcpy(&v, b, 8);
  return v;
}

}  // namespace

void write_field_file(std::ostream& out, const FieldFile& file) {
  file.grid.validate();
  const std::size_t expected = file.time ? static_cast<std::size_t>(file.time->points) : 1;
  require(file.slices.size() == expected, ErrorCode::InvalidArgument, "field file slice count does not match Nt");
  nlohmann::ordered_json h;
  h["format"] = "besovheat-field";
  h["version"] = 1;
  h["dim"] = file.grid.dim;
  h["N"] = file.grid.points;
  h["L"] = file.grid.length;
  if (file.time) {
    h["T"] = file.time->horizon;
    h["Nt"] = file.time->points;
  }
  h["endian"] = "little";
  h["scalar"] = "f64";
  h["origin"] = std::vector<double>(file.grid.origin.begin(), file.grid.origin.begin() + file.grid.dim);
  out << h.dump() << "\n\n";
  for (const auto& s : file.slices) {
    require(s.grid.same_lattice(file.grid), ErrorCode::GridMismatch, "field file slice is not on the header grid");
    const Field phys = to_physical(s);
    for (const auto& v : phys.samples) put_f64(out, v.real());
  }
  if (!out) throw Error(ErrorCode::Io, "failed to write field file");
}

FieldFile read_field_file(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Io, "field file is empty");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, std::string("field file header is not valid JSON: ") + e.what());
  }
  std::string blank;
  if (!std::getline(in, blank) || !blank.empty()) throw Error(ErrorCode::Io, "field file header must be followed by a blank line");

  FieldFile file;
  try {
    if (h.at("format").get<std::string>() != "besovheat-field") throw Error(ErrorCode::Io, "not a besovheat field file");
    if (h.at("version").get<int>() != 1) throw Error(ErrorCode::Io, "unsupported field file version");
    if (h.value("endian", "little") != "little" || h.value("scalar", "f64") != "f64")
      throw Error(ErrorCode::Io, "field files must hold little-endian f64 samples");
    file.grid.dim = h.at("dim").get<int>();
    file.grid.points = h.at("N").get<int>();
    file.grid.length = h.at("L").get<double>();
    if (h.contains("origin")) {
      const auto o = h.at("origin").get<std::vector<double>>();
      if (static_cast<int>(o.size()) != file.grid.dim) throw Error(ErrorCode::Io, "origin has the wrong length");
      for (int a = 0; a < file.grid.dim; ++a) file.grid.origin[a] = o[a];
    }
    if (h.contains("Nt")) file.time = TimeGrid{h.at("T").get<double>(), h.at("Nt").get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, std::string("malformed field file header: ") + e.what());
  }
  try {
    file.grid.validate();
    if (file.time) file.time->validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::Io, std::string("field file header: ") + e.what());
  }
  const int count = file.time ? file.time->points : 1;
  for (int i = 0; i < count; ++i) {
    Field f = Field::zeros(file.grid);
    for (auto& v : f.samples) v = get_f64(in);
    file.slices.push_back(std::move(f));
  }
  return file;
}

void save_field_file(const std::string& path, const FieldFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  write_field_file(out, file);
}

FieldFile load_field_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return read_field_file(in);
}

}  // namespace besovheat
