// Copyright 2026 The Capillary Authors.
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

#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace capillary {

/// Minimal streaming JSON writer with a pinned number format: every double
/// is emitted with 17 significant digits, so identical inputs serialize to
/// identical bytes.
class JsonWriter {
 public:
  std::string take() { return std::move(out_); }

  JsonWriter& begin_object() { return token("{"); }
  JsonWriter& end_object() {
    fresh_ = false;
    out_ += "}";
    return *this;
  }
  JsonWriter& begin_array() { return token("["); }
  JsonWriter& end_array() {
    fresh_ = false;
    out_ += "]";
    return *this;
  }
  JsonWriter& key(const std::string& k) {
    separate();
    out_ += "\"" + k + "\":";
    fresh_ = true;
    return *this;
  }
  JsonWriter& value(double v) {
    separate();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out_ += buf;
    return *this;
  }
  JsonWriter& value(int v) {
    separate();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(bool v) {
    separate();
    out_ += v ? "true" : "false";
    return *this;
  }
  JsonWriter& value(const std::string& v) {
    separate();
    out_ += "\"";
    for (char c : v) {
      if (c == '"' || c == '\\') out_ += '\\';
      out_ += c;
    }
    out_ += "\"";
    return *this;
  }
  JsonWriter& value(const std::vector<double>& v) {
    begin_array();
    for (double x : v) value(x);
    return end_array();
  }

 private:
  JsonWriter& token(const char* t) {
    separate();
    out_ += t;
    fresh_ = true;
    return *this;
  }
  void separate() {
    if (!fresh_ && !out_.empty()) {
      const char last = out_.back();
      if (last != '{' && last != '[' && last != ':') out_ += ",";
    }
    fresh_ = false;
  }

  std::string out_;
  bool fresh_ = true;
};

}  // namespace capillary
