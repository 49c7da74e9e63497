#include "hardedge/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hardedge {

namespace {

std::string format_real(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

double parse_real(std::string_view text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("matrix text: bad number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string format_complex(Complex z) {
  std::string out = format_real(z.real());
  if (!std::signbit(z.imag())) out += '+';
  out += format_real(z.imag());
  out += 'i';
  return out;
}

Complex parse_complex(const std::string& token) {
  if (token.empty() || token.back() != 'i') return {parse_real(token), 0.0};
  const std::string_view body(token.data(), token.size() - 1);
  // The split is the last sign that is not leading and not an exponent sign.
  for (std::size_t pos = body.size(); pos-- > 1;) {
    if ((body[pos] == '+' || body[pos] == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E') {
      std::string_view imag = body.substr(pos);
      if (imag.front() == '+') imag.remove_prefix(1);
      return {parse_real(body.substr(0, pos)), parse_real(imag)};
    }
  }
  std::string_view imag = body;
  if (!imag.empty() && imag.front() == '+') imag.remove_prefix(1);
  return {0.0, parse_real(imag)};
}

void write_matrix(std::ostream& out, const Matrix& a) {
  out << a.rows() << ' ' << a.cols() << ' ' << to_string(a.field()) << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) out << ' ';
      const Complex z = a.at(i, j);
      out << (a.field() == Field::Real ? format_real(z.real()) : format_complex(z));
    }
    out << '\n';
  }
}

Matrix read_matrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("matrix text: missing header");
  std::istringstream header_stream(header);
  long long rows = 0;
  long long cols = 0;
  std::string field_text;
  if (!(header_stream >> rows >> cols >> field_text) || rows <= 0 || cols <= 0) {
    throw std::invalid_argument("matrix text: header must be 'm n field'");
  }
  const Field field = field_from_string(field_text);
  RealMatrix re = RealMatrix::Zero(rows, cols);
  RealMatrix im = RealMatrix::Zero(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    for (long long j = 0; j < cols; ++j) {
      std::string token;
      if (!(in >> token)) throw std::invalid_argument("matrix text: too few entries");
      const Complex z = parse_complex(token);
      if (field == Field::Real && z.imag() != 0.0) {
        throw std::invalid_argument("matrix text: complex entry in a real matrix");
      }
      re(i, j) = z.real();
      im(i, j) = z.imag();
    }
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("matrix text: trailing data");
  if (field == Field::Real) return Matrix(std::move(re));
  ComplexMatrix values(rows, cols);
  values.real() = re;
  values.imag() = im;
  return Matrix(std::move(values));
}

}  // namespace hardedge
