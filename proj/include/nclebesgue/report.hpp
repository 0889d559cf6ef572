#pragma once

#include <string>

#include <json.hpp>

#include "nclebesgue/numerics.hpp"

namespace ncl {

using Report = nlohmann::json;

enum class NumberStyle {
  Report,  ///< 12 significant digits, magnitudes below 1e-12 written as 0
  Exact,   ///< shortest text that parses back to the same double
};

/// Sorted keys, two-space indentation, short arrays kept on one line. The
/// Report style keeps rounding noise out of reports.
std::string render_json(const Report& report, NumberStyle style = NumberStyle::Report);

/// One "path = value" line per leaf, same number formatting.
std::string render_text(const Report& report);

/// Formats one float the way both renderers do.
std::string format_number(double x);

Report complex_report(cplx z);
Report vector_report(const Vector& v);
Report real_vector_report(const RealVector& v);
Report matrix_report(const Matrix& m);

}  // namespace ncl
