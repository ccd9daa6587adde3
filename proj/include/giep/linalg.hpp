#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace giep {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

/// Row-major dense real matrix. Entries must be finite.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix zeros(std::size_t n) { return DenseMatrix(n, n); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const double> entries() const noexcept { return data_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  DenseMatrix transpose() const;
  double frobenius_norm() const noexcept;
  double max_abs() const noexcept;
  double trace() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);
RealVector operator*(const DenseMatrix& a, std::span<const double> x);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

/// Simple eigenvalue with its right eigenvector v (m v = value v) and left
/// eigenvector w (w^T m = value w^T). Both vectors have unit Euclidean norm.
struct EigenTriple {
  Complex value;
  ComplexVector right;
  ComplexVector left;
  Complex left_dot_right;  // w^T v, unconjugated
};

struct EigenTolerances {
  double residual_rel = 1e-10;  // times ||m||_F
  double orthogonality = 1e-8;
  int max_inverse_iterations = 8;
};

/// All eigenvalues of a real square matrix, with multiplicity.
///
/// Householder reduction to upper Hessenberg form followed by Francis
/// double-shift QR. The input is pre-scaled by a power of two so the scaling
/// is exact. Non-real eigenvalues are emitted in adjacent conjugate pairs
/// (positive imaginary part first) whose imaginary parts are exact negations.
/// Throws NonConvergence when more than 30 n QR sweeps are needed.
ComplexVector eig_all(const DenseMatrix& m);

/// Refines the eigenvalue of `m` nearest `approx` and returns it with unit
/// right and left eigenvectors.
///
/// Two-sided inverse iteration from a fixed seed vector; the shift is updated
/// with the two-sided Rayleigh quotient w^T m v / w^T v after every step.
/// Phase: the first component with magnitude > 1/(2 sqrt n) is made real and
/// positive. A real `approx` on a real matrix yields exactly real vectors.
EigenTriple eigen_triple(const DenseMatrix& m, Complex approx,
                         const EigenTolerances& tol = {});

/// LU factorisation with partial pivoting of a square real matrix.
class LuFactorization {
 public:
  /// Throws SingularSystem if a pivot magnitude falls below
  /// pivot_rel * max|a|.
  explicit LuFactorization(const DenseMatrix& a, double pivot_rel = 1e-13);

  RealVector solve(std::span<const double> rhs) const;
  double determinant() const noexcept;
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
};

/// Solves a s = rhs. One step of iterative refinement is applied when the
/// residual exceeds 1e-12 ||rhs||.
RealVector solve_linear(const DenseMatrix& a, std::span<const double> rhs);

double determinant(const DenseMatrix& a);

double norm2(std::span<const double> v) noexcept;
double norm2(std::span<const Complex> v) noexcept;
double norm_inf(std::span<const double> v) noexcept;

}  // namespace giep
