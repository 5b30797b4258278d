#include "focal/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "focal/errors.hpp"

namespace focal {

std::string format_double(double value, FloatStyle style) {
  if (!std::isfinite(value)) {
    throw Error("non-finite value in report output");
  }
  char buffer[64];
  std::to_chars_result result =
      style == FloatStyle::Shortest
          ? std::to_chars(buffer, buffer + sizeof(buffer), value)
          : std::to_chars(buffer, buffer + sizeof(buffer), value,
                          std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

namespace {

void write_escaped(std::string& out, const std::string& text) {
  out += '"';
  for (const char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buffer[8];
          std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
          out += buffer;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void write_indent(std::string& out, int indent) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
}

}  // namespace

std::string JsonValue::dump(FloatStyle style) const {
  std::string out;
  write(out, style, 0);
  out += '\n';
  return out;
}

void JsonValue::write(std::string& out, FloatStyle style, int indent) const {
  if (std::holds_alternative<std::nullptr_t>(value_)) {
    out += "null";
  } else if (const bool* b = std::get_if<bool>(&value_)) {
    out += *b ? "true" : "false";
  } else if (const std::int64_t* i = std::get_if<std::int64_t>(&value_)) {
    char buffer[24];
    const std::to_chars_result result = std::to_chars(buffer, buffer + sizeof(buffer), *i);
    out.append(buffer, result.ptr);
  } else if (const double* d = std::get_if<double>(&value_)) {
    out += format_double(*d, style);
  } else if (const std::string* s = std::get_if<std::string>(&value_)) {
    write_escaped(out, *s);
  } else if (const Array* array = std::get_if<Array>(&value_)) {
    if (array->empty()) {
      out += "[]";
      return;
    }
    const bool scalar_only =
        std::none_of(array->begin(), array->end(), [](const JsonValue& v) {
          return std::holds_alternative<Array>(v.value_) ||
                 std::holds_alternative<Object>(v.value_);
        });
    if (scalar_only) {
      out += '[';
      for (std::size_t i = 0; i < array->size(); ++i) {
        if (i > 0) out += ", ";
        (*array)[i].write(out, style, indent);
      }
      out += ']';
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < array->size(); ++i) {
      write_indent(out, indent + 1);
      (*array)[i].write(out, style, indent + 1);
      if (i + 1 < array->size()) out += ',';
      out += '\n';
    }
    write_indent(out, indent);
    out += ']';
  } else {
    const Object& object = std::get<Object>(value_);
    if (object.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : object) {
      write_indent(out, indent + 1);
      write_escaped(out, key);
      out += ": ";
      value.write(out, style, indent + 1);
      if (++i < object.size()) out += ',';
      out += '\n';
    }
    write_indent(out, indent);
    out += '}';
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string checksum_hex(std::string_view bytes) {
  const std::uint64_t hash = fnv1a64(bytes);
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buffer, 16);
}

}  // namespace focal
