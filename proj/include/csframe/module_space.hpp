#pragma once

// The Hilbert A-module H = A^n with inner product <f,g> = sum_i f_i g_i^*.
//
// Representation. In block b, a vector f is stored as its flattening
//   F_b = [ f_{1,b} | f_{2,b} | ... | f_{n,b} ]   (d_b x d_b*n),
// so that <f,g>_b = F_b G_b^* and the left action of a in A is F_b -> a_b F_b.
// The adjointable A-linear operators on H are exactly the right
// multiplications F_b -> F_b R_b with R_b a (d_b*n) x (d_b*n) matrix; a
// ModuleOperator stores those R_b.
//
// Composition order. op_compose(T, U) is T after U (apply U first). Under the
// right action this means R_{T after U} = R_U * R_T.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "csframe/algebra.hpp"

namespace csframe {

struct ModuleShape {
  AlgebraShape algebra;
  int rank = 1;

  ModuleShape(AlgebraShape algebra, int rank);

  /// Column count of the block-b flattening, d_b * rank.
  int flat_dim(int b) const { return algebra.dim(b) * rank; }
  std::string to_string() const;

  friend bool operator==(const ModuleShape&, const ModuleShape&) = default;
};

void require_same_shape(const ModuleShape& expected, const ModuleShape& actual, const char* what);

class ModuleVector {
 public:
  /// Builds f = (entries[0], ..., entries[n-1]).
  ModuleVector(ModuleShape shape, const std::vector<AlgebraElement>& entries);

  static ModuleVector zero(const ModuleShape& shape);
  /// Standard generator e_i: identity in entry i, zero elsewhere.
  static ModuleVector generator(const ModuleShape& shape, int i);
  /// Builds a vector directly from its per-block flattenings.
  static ModuleVector from_flattening(ModuleShape shape, std::vector<Matrix> flat);

  const ModuleShape& shape() const { return shape_; }
  int rank() const { return shape_.rank; }
  AlgebraElement entry(int i) const;
  std::vector<AlgebraElement> entries() const;
  const Matrix& flat(int b) const { return flat_[static_cast<std::size_t>(b)]; }
  const std::vector<Matrix>& flat() const { return flat_; }

  ModuleVector operator+(const ModuleVector& other) const;
  ModuleVector operator-(const ModuleVector& other) const;
  friend ModuleVector operator*(Complex s, const ModuleVector& f);
  /// Left module action a * f.
  friend ModuleVector operator*(const AlgebraElement& a, const ModuleVector& f);
  friend ModuleVector operator*(const CentralElement& c, const ModuleVector& f);

 private:
  ModuleVector(ModuleShape shape, std::vector<Matrix> flat);

  ModuleShape shape_;
  std::vector<Matrix> flat_;
};

class ModuleOperator {
 public:
  ModuleOperator(ModuleShape shape, std::vector<Matrix> block_mats);

  static ModuleOperator identity(const ModuleShape& shape);
  static ModuleOperator zero(const ModuleShape& shape);
  /// Left multiplication by a central element, R_b = c_b I.
  static ModuleOperator central(const ModuleShape& shape, const CentralElement& c);

  const ModuleShape& shape() const { return shape_; }
  const Matrix& block(int b) const { return mats_[static_cast<std::size_t>(b)]; }
  const std::vector<Matrix>& blocks() const { return mats_; }

  ModuleOperator operator+(const ModuleOperator& other) const;
  ModuleOperator operator-(const ModuleOperator& other) const;
  friend ModuleOperator operator*(Complex s, const ModuleOperator& t);

 private:
  ModuleShape shape_;
  std::vector<Matrix> mats_;
};

AlgebraElement inner(const ModuleVector& f, const ModuleVector& g);
/// ||f|| = ||<f,f>||^{1/2}.
double module_norm(const ModuleVector& f);

ModuleVector op_apply(const ModuleOperator& t, const ModuleVector& f);
/// T after U.
ModuleOperator op_compose(const ModuleOperator& t, const ModuleOperator& u);
ModuleOperator op_adjoint(const ModuleOperator& t);

/// Each R_b Hermitian within tol(1+||T||) with eigenvalues >= -tol(1+||T||).
bool op_is_positive(const ModuleOperator& t, double tol = kDefaultTol);
bool op_is_self_adjoint(const ModuleOperator& t, double tol = kDefaultTol);
/// Smallest singular value over all blocks exceeds tol(1+||T||).
bool op_is_invertible(const ModuleOperator& t, double tol = kDefaultTol);
/// Throws Singular.
ModuleOperator op_inverse(const ModuleOperator& t);
/// Operator norm on H: the largest singular value over blocks.
double op_norm(const ModuleOperator& t);
double op_min_singular_value(const ModuleOperator& t);

struct SpectralBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Extreme eigenvalues of the Hermitian parts of the R_b, over all blocks.
/// For a self-adjoint T these are the optimal m, M with m I <= T <= M I.
SpectralBounds op_spectral_bounds(const ModuleOperator& t);

/// Hermitian square root of a positive operator. Throws NotPositive.
ModuleOperator op_sqrt_positive(const ModuleOperator& t, double tol = kDefaultTol);

/// Rank-one test vectors u with <u,u> a multiple of a matrix unit:
/// in block b the flattening is zero except for row 0, which is the
/// conjugate of a unit eigenvector of the Hermitian part of R_b belonging to
/// the smallest or the largest eigenvalue. On these, <Tu,u> attains m<u,u>
/// and M<u,u>.
std::vector<ModuleVector> spectral_witnesses(const ModuleOperator& t);

/// All generators E_{kl} e_i (matrix unit of A times standard generator).
/// These span H as a left A-module.
std::vector<ModuleVector> generator_witnesses(const ModuleShape& shape);

}  // namespace csframe
