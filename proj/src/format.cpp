#include "spectral/format.hpp"

#include <cstdio>

namespace spectral {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_size(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%zu", n);
  return buf;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
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
  return out;
}

void JsonWriter::separator() {
  if (need_comma_) out_ += ',';
  need_comma_ = false;
}

void JsonWriter::begin_object() {
  separator();
  out_ += '{';
}

void JsonWriter::end_object() {
  out_ += '}';
  need_comma_ = true;
}

void JsonWriter::begin_array() {
  separator();
  out_ += '[';
}

void JsonWriter::end_array() {
  out_ += ']';
  need_comma_ = true;
}

void JsonWriter::key(const std::string& name) {
  separator();
  out_ += '"';
  out_ += json_escape(name);
  out_ += "\":";
}

void JsonWriter::value_string(const std::string& s) {
  separator();
  out_ += '"';
  out_ += json_escape(s);
  out_ += '"';
  need_comma_ = true;
}

void JsonWriter::value_number(double x) {
  separator();
  out_ += fmt_double(x);
  need_comma_ = true;
}

void JsonWriter::value_int(long long x) {
  separator();
  out_ += std::to_string(x);
  need_comma_ = true;
}

void JsonWriter::value_bool(bool b) {
  separator();
  out_ += b ? "true" : "false";
  need_comma_ = true;
}

void JsonWriter::value_null() {
  separator();
  out_ += "null";
  need_comma_ = true;
}

void JsonWriter::value_raw(const std::string& fragment) {
  separator();
  out_ += fragment;
  need_comma_ = true;
}

void JsonWriter::key_string(const std::string& name, const std::string& s) {
  key(name);
  value_string(s);
}

void JsonWriter::key_number(const std::string& name, double x) {
  key(name);
  value_number(x);
}

void JsonWriter::key_int(const std::string& name, long long x) {
  key(name);
  value_int(x);
}

void JsonWriter::key_complex(const std::string& name, cplx z) {
  key(name);
  begin_array();
  value_number(z.real());
  value_number(z.imag());
  end_array();
}

void JsonWriter::key_matrix(const std::string& name, const SquareMatrix& m) {
  key(name);
  begin_array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    begin_array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      begin_array();
      value_number(m(i, j).real());
      value_number(m(i, j).imag());
      end_array();
    }
    end_array();
  }
  end_array();
}

}  // namespace spectral
