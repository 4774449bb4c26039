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

// JSON run configuration for the command-line tool. Every block is optional; keys that a
// subcommand does not understand are rejected so typos surface as usage errors.

#include <cstdint>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace besovheat::cli {

// Raised for anything that should end the process with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Block {
 public:
  Block(std::string name, nlohmann::json value) : name_(std::move(name)), value_(std::move(value)) {
    if (value_.is_null()) value_ = nlohmann::json::object();
    if (!value_.is_object()) throw UsageError("config block '" + name_ + "' must be an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return value_.contains(key);
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    seen_.insert(key);
    if (!value_.contains(key)) return fallback;
    try {
      return value_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw UsageError("config key '" + name_ + "." + key + "' has the wrong type");
    }
  }

  // Throws when the block holds a key no lookup asked for.
  void reject_unknown() const {
    for (const auto& item : value_.items())
      if (!seen_.count(item.key())) throw UsageError("unknown config key '" + name_ + "." + item.key() + "'");
  }

 private:
  std::string name_;
  nlohmann::json value_;
  std::set<std::string> seen_;
};

struct RunConfig {
  Block grid{"grid", nullptr};
  Block bank{"bank", nullptr};
  Block estimate{"estimate", nullptr};
  Block io{"io", nullptr};

  void reject_unknown() const {
    grid.reject_unknown();
    bank.reject_unknown();
    estimate.reject_unknown();
    io.reject_unknown();
  }
};

inline RunConfig parse_config(const nlohmann::json& doc) {
  if (doc.is_null()) return {};
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& item : doc.items())
    if (item.key() != "grid" && item.key() != "bank" && item.key() != "estimate" && item.key() != "io")
      throw UsageError("unknown config block '" + item.key() + "'");
  auto block = [&](const char* name) { return Block(name, doc.contains(name) ? doc.at(name) : nlohmann::json()); };
  return RunConfig{block("grid"), block("bank"), block("estimate"), block("io")};
}

inline RunConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace besovheat::cli
