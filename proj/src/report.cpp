#include "nclebesgue/report.hpp"

#include <cmath>
#include <cstdio>

namespace ncl {

namespace {

bool scalar_array(const Report& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

// Arrays of scalars, or of arrays of scalars, stay on one line.
bool inline_array(const Report& j) {
  for (const auto& e : j) {
    if (e.is_object() || (e.is_array() && !scalar_array(e))) return false;
  }
  return true;
}

void write_json(const Report& j, std::string& out, int depth, NumberStyle style) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Report::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Report(it.key()).dump() + ": ";
        write_json(it.value(), out, depth + 1, style);
      }
      out += "\n" + close + "}";
      return;
    }
    case Report::value_t::array: {
      const bool flat = inline_array(j);
      if (j.empty()) {
        out += "[]";
      } else if (flat) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          write_json(j[k], out, depth + 1, style);
        }
        out += "]";
      } else {
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ",\n";
          out += pad;
          write_json(j[k], out, depth + 1, style);
        }
        out += "\n" + close + "]";
      }
      return;
    }
    case Report::value_t::number_float:
      out += style == NumberStyle::Report ? format_number(j.get<double>()) : j.dump();
      return;
    default:
      out += j.dump();
  }
}

void write_text(const Report& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      write_text(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    }
    return;
  }
  if (j.is_array()) {
    if (!inline_array(j)) {
      for (std::size_t k = 0; k < j.size(); ++k) write_text(j[k], path + "[" + std::to_string(k) + "]", out);
      return;
    }
  }
  std::string value;
  write_json(j, value, 0, NumberStyle::Report);
  if (j.is_string()) value = j.get<std::string>();
  out += path + " = " + value + "\n";
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  if (std::abs(x) < 1e-12) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string render_json(const Report& report, NumberStyle style) {
  std::string out;
  write_json(report, out, 0, style);
  out += "\n";
  return out;
}

std::string render_text(const Report& report) {
  std::string out;
  write_text(report, "", out);
  return out;
}

Report complex_report(cplx z) { return Report::array({z.real(), z.imag()}); }

Report vector_report(const Vector& v) {
  Report out = Report::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(complex_report(v(k)));
  return out;
}

Report real_vector_report(const RealVector& v) {
  Report out = Report::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Report matrix_report(const Matrix& m) {
  Report out = Report::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Report row = Report::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_report(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace ncl
