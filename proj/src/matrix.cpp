#include "hardedge/matrix.hpp"

#include <stdexcept>
#include <string>

namespace hardedge {

std::string_view to_string(Field field) { return field == Field::Real ? "real" : "complex"; }

Field field_from_string(std::string_view text) {
  if (text == "real") return Field::Real;
  if (text == "complex") return Field::Complex;
  throw std::invalid_argument("unknown field: " + std::string(text));
}

Matrix::Matrix(RealMatrix values) : data_(std::move(values)) {
  if (!real().allFinite()) throw std::invalid_argument("Matrix: non-finite entry");
}

Matrix::Matrix(ComplexMatrix values) : data_(std::move(values)) {
  if (!complex().allFinite()) throw std::invalid_argument("Matrix: non-finite entry");
}

Matrix Matrix::identity(std::size_t n, Field field) {
  const auto size = static_cast<Eigen::Index>(n);
  if (field == Field::Real) return Matrix(RealMatrix::Identity(size, size));
  return Matrix(ComplexMatrix::Identity(size, size));
}

Matrix Matrix::zero(std::size_t rows, std::size_t cols, Field field) {
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(cols);
  if (field == Field::Real) return Matrix(RealMatrix::Zero(r, c));
  return Matrix(ComplexMatrix::Zero(r, c));
}

std::size_t Matrix::rows() const {
  return visit([](const auto& m) { return static_cast<std::size_t>(m.rows()); });
}

std::size_t Matrix::cols() const {
  return visit([](const auto& m) { return static_cast<std::size_t>(m.cols()); });
}

ComplexMatrix Matrix::as_complex() const {
  return visit([](const auto& m) -> ComplexMatrix { return m.template cast<Complex>(); });
}

Complex Matrix::at(std::size_t i, std::size_t j) const {
  return visit([&](const auto& m) {
    return Complex(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  });
}

Matrix Matrix::adjoint() const {
  return visit([](const auto& m) { return Matrix(m.adjoint().eval()); });
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& row_indices) const {
  return visit([&](const auto& m) {
    using Storage = std::decay_t<decltype(m)>;
    Storage out(static_cast<Eigen::Index>(row_indices.size()), m.cols());
    for (std::size_t r = 0; r < row_indices.size(); ++r) {
      if (row_indices[r] >= static_cast<std::size_t>(m.rows())) {
        throw std::out_of_range("select_rows: row index out of range");
      }
      out.row(static_cast<Eigen::Index>(r)) = m.row(static_cast<Eigen::Index>(row_indices[r]));
    }
    return Matrix(std::move(out));
  });
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("Matrix subtraction: dimension mismatch");
  }
  if (a.field() == Field::Real && b.field() == Field::Real) return Matrix((a.real() - b.real()).eval());
  return Matrix((a.as_complex() - b.as_complex()).eval());
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Matrix product: dimension mismatch");
  if (a.field() == Field::Real && b.field() == Field::Real) return Matrix((a.real() * b.real()).eval());
  return Matrix((a.as_complex() * b.as_complex()).eval());
}

}  // namespace hardedge
