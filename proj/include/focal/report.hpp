#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace focal {

/// Shortest: minimal digits that round-trip (plot-friendly).
/// Fixed17: 17 significant digits (golden-file stable across platforms).
enum class FloatStyle { Shortest, Fixed17 };

/// Formats a finite double in the requested style.  Non-finite values are
/// rejected: reports must never contain NaN or infinities.
std::string format_double(double value, FloatStyle style);

/// Minimal JSON document with deterministic output: object keys are kept
/// sorted and floats honor the chosen style.
class JsonValue {
 public:
  using Array = std::vector<JsonValue>;
  using Object = std::map<std::string, JsonValue>;

  JsonValue() : value_(nullptr) {}
  JsonValue(bool b) : value_(b) {}
  JsonValue(std::int64_t i) : value_(i) {}
  JsonValue(int i) : value_(static_cast<std::int64_t>(i)) {}
  JsonValue(double d) : value_(d) {}
  JsonValue(const char* s) : value_(std::string(s)) {}
  JsonValue(std::string s) : value_(std::move(s)) {}
  JsonValue(Array a) : value_(std::move(a)) {}
  JsonValue(Object o) : value_(std::move(o)) {}

  /// Two-space indented, sorted-key serialization with a trailing newline.
  std::string dump(FloatStyle style) const;

 private:
  void write(std::string& out, FloatStyle style, int indent) const;

  std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object>
      value_;
};

/// FNV-1a 64-bit checksum of raw input bytes, as 16 hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string checksum_hex(std::string_view bytes);

}  // namespace focal
