// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Minimal ordered JSON emitter for reports. Numbers carry 17 significant
// digits so regression baselines round-trip exactly; key order is insertion
// order, making identical runs byte-identical.

#ifndef HESSEIG_JSON_WRITER_HPP
#define HESSEIG_JSON_WRITER_HPP

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hesseig {

class JsonValue {
 public:
  using Array = std::vector<JsonValue>;
  using Object = std::vector<std::pair<std::string, JsonValue>>;

  JsonValue() : data_(nullptr) {}
  JsonValue(std::nullptr_t) : data_(nullptr) {}
  JsonValue(bool b) : data_(b) {}
  JsonValue(double d) : data_(d) {}
  JsonValue(int i) : data_(static_cast<long long>(i)) {}
  JsonValue(long long i) : data_(i) {}
  JsonValue(unsigned long long i) : data_(static_cast<long long>(i)) {}
  JsonValue(const char* s) : data_(std::string(s)) {}
  JsonValue(std::string s) : data_(std::move(s)) {}
  JsonValue(Array a) : data_(std::move(a)) {}
  JsonValue(Object o) : data_(std::move(o)) {}

  static JsonValue object() { return JsonValue(Object{}); }
  static JsonValue array() { return JsonValue(Array{}); }

  JsonValue& set(const std::string& key, JsonValue v) {
    std::get<Object>(data_).emplace_back(key, std::move(v));
    return *this;
  }
  JsonValue& push(JsonValue v) {
    std::get<Array>(data_).push_back(std::move(v));
    return *this;
  }

  std::string dump(int indent = 2) const {
    std::string out;
    write(out, indent, 0);
    return out;
  }

 private:
  std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object>
      data_;

  static void escape(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
          } else {
            out += c;
          }
      }
    }
    out += '"';
  }

  void write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    if (std::holds_alternative<std::nullptr_t>(data_)) {
      out += "null";
    } else if (const bool* b = std::get_if<bool>(&data_)) {
      out += *b ? "true" : "false";
    } else if (const long long* i = std::get_if<long long>(&data_)) {
      out += std::to_string(*i);
    } else if (const double* d = std::get_if<double>(&data_)) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", *d);
      out += buf;
    } else if (const std::string* s = std::get_if<std::string>(&data_)) {
      escape(out, *s);
    } else if (const Array* a = std::get_if<Array>(&data_)) {
      if (a->empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < a->size(); ++k) {
        out += pad_in;
        (*a)[k].write(out, indent, depth + 1);
        out += (k + 1 < a->size()) ? ",\n" : "\n";
      }
      out += pad + "]";
    } else if (const Object* o = std::get_if<Object>(&data_)) {
      if (o->empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      for (std::size_t k = 0; k < o->size(); ++k) {
        out += pad_in;
        escape(out, (*o)[k].first);
        out += ": ";
        (*o)[k].second.write(out, indent, depth + 1);
        out += (k + 1 < o->size()) ? ",\n" : "\n";
      }
      out += pad + "}";
    }
  }
};

}  // namespace hesseig

#endif  // HESSEIG_JSON_WRITER_HPP
