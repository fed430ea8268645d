#pragma once

// Strict accessors over nlohmann::json: every lookup carries its dotted field
// path so parse failures name the offending field, and unknown keys are
// rejected.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "esv/error.hpp"
#include "json.hpp"

namespace esv::detail {

using nlohmann::json;

class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const json& raw() const { return *j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "field '" + path_ + "': " + what);
  }

  void expect_object() const {
    if (!j_->is_object()) fail("expected an object");
  }

  void only_keys(std::initializer_list<std::string_view> allowed) const {
    expect_object();
    for (const auto& [key, _] : j_->items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) child_path_fail(key, "unknown field");
    }
  }

  bool has(std::string_view key) const {
    return j_->is_object() && j_->contains(key) && !(*j_)[std::string(key)].is_null();
  }

  Node at(std::string_view key) const {
    expect_object();
    auto it = j_->find(key);
    if (it == j_->end()) child_path_fail(std::string(key), "missing required field");
    return Node(*it, join(key));
  }

  Node at(std::size_t i) const {
    if (!j_->is_array() || i >= j_->size()) fail("index out of range");
    return Node((*j_)[i], path_ + "[" + std::to_string(i) + "]");
  }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  double number() const {
    if (!j_->is_number()) fail("expected a number");
    const double v = j_->get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
    return out;
  }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  bool boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }

  long long integer() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<long long>();
  }

  double number(std::string_view key) const { return at(key).number(); }
  std::string string(std::string_view key) const { return at(key).string(); }

 private:
  std::string join(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }
  [[noreturn]] void child_path_fail(const std::string& key, const std::string& what) const {
    throw Error(ErrorCode::ParseError, "field '" + join(key) + "': " + what);
  }

  const json* j_;
  std::string path_;
};

inline json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string(source) + ": " + e.what());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void check_schema_version(const Node& root, long long expected) {
  const long long v = root.at("schema_version").integer();
  if (v != expected)
    throw Error(ErrorCode::SchemaVersionMismatch,
                "schema_version " + std::to_string(v) + " is not supported (expected " +
                    std::to_string(expected) + ")");
}

}  // namespace esv::detail
