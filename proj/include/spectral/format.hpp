#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectral/matrix.hpp"

namespace spectral {

// Canonical float text: 17 significant digits, lowercase exponent. Guarantees
// exact double round-trips and byte-identical files across runs.
std::string fmt_double(double x);
std::string fmt_size(std::size_t n);

// One CSV cell; disengaged cells serialize as an empty field.
using Cell = std::optional<double>;

std::string csv_line(const std::vector<std::string>& cells);

// Minimal ordered JSON writer; keys appear exactly in insertion order and all
// numbers go through fmt_double.
class JsonWriter {
 public:
  std::string take() { return std::move(out_); }

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& name);
  void value_string(const std::string& s);
  void value_number(double x);
  void value_int(long long x);
  void value_bool(bool b);
  void value_null();
  // Splices an already-rendered JSON fragment.
  void value_raw(const std::string& fragment);

  void key_string(const std::string& name, const std::string& s);
  void key_number(const std::string& name, double x);
  void key_int(const std::string& name, long long x);
  void key_complex(const std::string& name, cplx z);
  void key_matrix(const std::string& name, const SquareMatrix& m);

 private:
  void separator();
  std::string out_;
  bool need_comma_ = false;
};

std::string json_escape(const std::string& s);

}  // namespace spectral
