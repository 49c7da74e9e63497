#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "hardedge/types.hpp"

namespace hardedge {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Dense m x n matrix over the real or complex field.
///
/// Entries are always finite; construction rejects NaN and infinities.
class Matrix {
 public:
  Matrix() : data_(RealMatrix()) {}
  explicit Matrix(RealMatrix values);
  explicit Matrix(ComplexMatrix values);
  /// Evaluates an Eigen expression into real or complex storage by scalar type.
  template <class Derived>
  explicit Matrix(const Eigen::MatrixBase<Derived>& values)
      : Matrix(Storage<typename Derived::Scalar>(values)) {}

  static Matrix identity(std::size_t n, Field field = Field::Real);
  static Matrix zero(std::size_t rows, std::size_t cols, Field field = Field::Real);

  Field field() const { return data_.index() == 0 ? Field::Real : Field::Complex; }
  std::size_t rows() const;
  std::size_t cols() const;
  bool is_square() const { return rows() == cols(); }

  const RealMatrix& real() const { return std::get<RealMatrix>(data_); }
  const ComplexMatrix& complex() const { return std::get<ComplexMatrix>(data_); }
  /// Copy promoted to complex scalars.
  ComplexMatrix as_complex() const;

  Complex at(std::size_t i, std::size_t j) const;

  Matrix adjoint() const;
  /// Rows in `row_indices`, in that order.
  Matrix select_rows(const std::vector<std::size_t>& row_indices) const;

  /// Calls f(const Eigen::Matrix<Scalar, ...>&) with the concrete storage.
  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), data_);
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.data_ == b.data_; }

 private:
  template <class Scalar>
  using Storage = std::conditional_t<std::is_same_v<Scalar, double>, RealMatrix, ComplexMatrix>;

  std::variant<RealMatrix, ComplexMatrix> data_;
};

}  // namespace hardedge
