#pragma once

#include <iosfwd>
#include <string>

#include "hardedge/matrix.hpp"

namespace hardedge {

/// Text format: a header line "m n field" (field is "real" or "complex"),
/// then m lines of n whitespace-separated entries. Complex entries are
/// written "a+bi" / "a-bi". Values are printed with 17 significant digits,
/// so a write/read cycle is exact.
void write_matrix(std::ostream& out, const Matrix& a);
Matrix read_matrix(std::istream& in);

std::string format_complex(Complex z);
Complex parse_complex(const std::string& token);

}  // namespace hardedge
