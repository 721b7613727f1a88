#pragma once

// Finite-dimensional C*-algebras A = M_{d_1}(C) + ... + M_{d_B}(C), stored
// blockwise. Every operation here is a pure function of immutable values.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace csframe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Default tolerance for every tolerance parameter that has a default.
inline constexpr double kDefaultTol = 1e-10;

class AlgebraShape {
 public:
  /// Throws InvalidArgument if `block_dims` is empty or has a zero entry.
  explicit AlgebraShape(std::vector<int> block_dims);

  int num_blocks() const { return static_cast<int>(dims_.size()); }
  int dim(int b) const { return dims_[static_cast<std::size_t>(b)]; }
  const std::vector<int>& dims() const { return dims_; }

  std::string to_string() const;

  friend bool operator==(const AlgebraShape&, const AlgebraShape&) = default;

 private:
  std::vector<int> dims_;
};

/// Throws ShapeMismatch naming both shapes when they differ.
void require_same_shape(const AlgebraShape& expected, const AlgebraShape& actual,
                        const char* what);

class AlgebraElement {
 public:
  /// Validates that there is one square block of the declared size per
  /// algebra block.
  AlgebraElement(AlgebraShape shape, std::vector<Matrix> blocks);

  static AlgebraElement zero(const AlgebraShape& shape);
  static AlgebraElement identity(const AlgebraShape& shape);
  static AlgebraElement scalar(const AlgebraShape& shape, Complex s);
  /// The matrix unit E_{row,col} inside block `b`, zero elsewhere.
  static AlgebraElement matrix_unit(const AlgebraShape& shape, int b, int row, int col);

  const AlgebraShape& shape() const { return shape_; }
  const Matrix& block(int b) const { return blocks_[static_cast<std::size_t>(b)]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  AlgebraElement operator+(const AlgebraElement& other) const;
  AlgebraElement operator-(const AlgebraElement& other) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(const AlgebraElement& other) const;
  friend AlgebraElement operator*(Complex s, const AlgebraElement& a);

  /// Entrywise comparison; intended for tests of exact identities.
  friend bool operator==(const AlgebraElement&, const AlgebraElement&);

 private:
  AlgebraShape shape_;
  std::vector<Matrix> blocks_;
};

/// An element of the center Z(A): one scalar per block, acting as
/// scalars[b] * I_{d_b}.
class CentralElement {
 public:
  CentralElement(AlgebraShape shape, std::vector<Complex> scalars);

  static CentralElement constant(const AlgebraShape& shape, Complex s);
  /// Throws NotCentral if `a` is farther than `tol` from Z(A).
  static CentralElement from_element(const AlgebraElement& a, double tol = kDefaultTol);

  const AlgebraShape& shape() const { return shape_; }
  Complex scalar(int b) const { return scalars_[static_cast<std::size_t>(b)]; }
  const std::vector<Complex>& scalars() const { return scalars_; }

  AlgebraElement to_element() const;
  CentralElement adjoint() const;
  /// Largest blockwise magnitude; this is the C*-norm of the element.
  double norm() const;

 private:
  AlgebraShape shape_;
  std::vector<Complex> scalars_;
};

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement adjoint(const AlgebraElement& a);

/// Loewner positivity with the scale-relative tolerance tol * (1 + ||a||).
bool is_positive(const AlgebraElement& a, double tol = kDefaultTol);
bool loewner_leq(const AlgebraElement& a, const AlgebraElement& b, double tol = kDefaultTol);

/// Hermitian square root; eigenvalues in [-tol(1+||a||), 0) are clamped to 0.
/// Throws NotPositive.
AlgebraElement sqrt_positive(const AlgebraElement& a, double tol = kDefaultTol);
/// Throws Singular if any block is numerically singular.
AlgebraElement inverse(const AlgebraElement& a);
/// C*-norm: the largest singular value over all blocks.
double norm(const AlgebraElement& a);
/// Eigenvalues of the Hermitian part, ascending within each block, blocks in
/// order.
std::vector<double> spectrum_hermitian(const AlgebraElement& a);

/// Max off-diagonal magnitude plus diagonal spread, maximised over blocks.
double distance_to_center(const AlgebraElement& a);
bool is_central(const AlgebraElement& a, double tol = kDefaultTol);

namespace detail {

Matrix hermitian_part(const Matrix& m);
/// Ascending eigenvalues of the Hermitian part of `m`.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);
double spectral_norm(const Matrix& m);
double min_singular_value(const Matrix& m);

}  // namespace detail

}  // namespace csframe
