#include "csframe/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csframe/errors.hpp"

namespace csframe {

namespace detail {

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  if (m.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double min_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace detail

AlgebraShape::AlgebraShape(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw InvalidArgument("algebra shape needs at least one block");
  for (int d : dims_) {
    if (d < 1) throw InvalidArgument("algebra block dimensions must be positive, got " + to_string());
  }
}

std::string AlgebraShape::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << ')';
  return os.str();
}

void require_same_shape(const AlgebraShape& expected, const AlgebraShape& actual,
                        const char* what) {
  if (expected != actual) {
    throw ShapeMismatch(std::string(what) + ": expected algebra " + expected.to_string() +
                        ", got " + actual.to_string());
  }
}

AlgebraElement::AlgebraElement(AlgebraShape shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != shape_.num_blocks()) {
    throw ShapeMismatch("algebra element for " + shape_.to_string() + " has " +
                        std::to_string(blocks_.size()) + " blocks");
  }
  for (int b = 0; b < shape_.num_blocks(); ++b) {
    const Matrix& m = blocks_[static_cast<std::size_t>(b)];
    if (m.rows() != shape_.dim(b) || m.cols() != shape_.dim(b)) {
      throw ShapeMismatch("block " + std::to_string(b) + " of algebra " + shape_.to_string() +
                          " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  for (int d : shape.dims()) blocks.push_back(Matrix::Zero(d, d));
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::identity(const AlgebraShape& shape) {
  return scalar(shape, Complex(1.0, 0.0));
}

AlgebraElement AlgebraElement::scalar(const AlgebraShape& shape, Complex s) {
  std::vector<Matrix> blocks;
  for (int d : shape.dims()) blocks.push_back(s * Matrix::Identity(d, d));
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::matrix_unit(const AlgebraShape& shape, int b, int row, int col) {
  AlgebraElement e = zero(shape);
  if (b < 0 || b >= shape.num_blocks() || row < 0 || col < 0 || row >= shape.dim(b) ||
      col >= shape.dim(b)) {
    throw InvalidArgument("matrix unit index out of range for " + shape.to_string());
  }
  e.blocks_[static_cast<std::size_t>(b)](row, col) = 1.0;
  return e;
}

namespace {

template <typename Op>
AlgebraElement blockwise(const AlgebraElement& a, const AlgebraElement& b, const char* what,
                         Op op) {
  require_same_shape(a.shape(), b.shape(), what);
  std::vector<Matrix> out;
  out.reserve(a.blocks().size());
  for (int i = 0; i < a.shape().num_blocks(); ++i) out.push_back(op(a.block(i), b.block(i)));
  return {a.shape(), std::move(out)};
}

}  // namespace

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const {
  return blockwise(*this, other, "add", [](const Matrix& x, const Matrix& y) -> Matrix { return x + y; });
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& other) const {
  return blockwise(*this, other, "subtract", [](const Matrix& x, const Matrix& y) -> Matrix { return x - y; });
}

AlgebraElement AlgebraElement::operator-() const {
  std::vector<Matrix> out;
  for (const Matrix& m : blocks_) out.push_back(-m);
  return {shape_, std::move(out)};
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& other) const {
  return mul(*this, other);
}

AlgebraElement operator*(Complex s, const AlgebraElement& a) {
  std::vector<Matrix> out;
  for (const Matrix& m : a.blocks()) out.push_back(s * m);
  return {a.shape(), std::move(out)};
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.shape() != b.shape()) return false;
  for (int i = 0; i < a.shape().num_blocks(); ++i) {
    if (a.block(i) != b.block(i)) return false;
  }
  return true;
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  return blockwise(a, b, "mul", [](const Matrix& x, const Matrix& y) -> Matrix { return x * y; });
}

AlgebraElement adjoint(const AlgebraElement& a) {
  std::vector<Matrix> out;
  for (const Matrix& m : a.blocks()) out.push_back(m.adjoint());
  return {a.shape(), std::move(out)};
}

double norm(const AlgebraElement& a) {
  double n = 0.0;
  for (const Matrix& m : a.blocks()) n = std::max(n, detail::spectral_norm(m));
  return n;
}

bool is_positive(const AlgebraElement& a, double tol) {
  const double slack = tol * (1.0 + norm(a));
  if (norm(a - adjoint(a)) > slack) return false;
  for (const Matrix& m : a.blocks()) {
    if (detail::hermitian_eigenvalues(m).minCoeff() < -slack) return false;
  }
  return true;
}

bool loewner_leq(const AlgebraElement& a, const AlgebraElement& b, double tol) {
  require_same_shape(a.shape(), b.shape(), "loewner_leq");
  return is_positive(b - a, tol);
}

AlgebraElement sqrt_positive(const AlgebraElement& a, double tol) {
  if (!is_positive(a, tol)) throw NotPositive("sqrt_positive: element is not positive");
  std::vector<Matrix> out;
  for (const Matrix& m : a.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(detail::hermitian_part(m));
    Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    out.push_back(detail::hermitian_part(es.eigenvectors() * root.cast<Complex>().asDiagonal() *
                                         es.eigenvectors().adjoint()));
  }
  return {a.shape(), std::move(out)};
}

AlgebraElement inverse(const AlgebraElement& a) {
  std::vector<Matrix> out;
  for (int b = 0; b < a.shape().num_blocks(); ++b) {
    Eigen::FullPivLU<Matrix> lu(a.block(b));
    if (!lu.isInvertible()) throw Singular("inverse: block " + std::to_string(b) + " is singular");
    out.push_back(lu.inverse());
  }
  return {a.shape(), std::move(out)};
}

std::vector<double> spectrum_hermitian(const AlgebraElement& a) {
  std::vector<double> out;
  for (const Matrix& m : a.blocks()) {
    Eigen::VectorXd ev = detail::hermitian_eigenvalues(m);
    out.insert(out.end(), ev.data(), ev.data() + ev.size());
  }
  return out;
}

double distance_to_center(const AlgebraElement& a) {
  double dist = 0.0;
  for (const Matrix& m : a.blocks()) {
    double off = 0.0;
    double spread = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (i != j) off = std::max(off, std::abs(m(i, j)));
        else spread = std::max(spread, std::abs(m(i, i) - m(0, 0)));
      }
    }
    dist = std::max(dist, off + spread);
  }
  return dist;
}

bool is_central(const AlgebraElement& a, double tol) { return distance_to_center(a) <= tol; }

CentralElement::CentralElement(AlgebraShape shape, std::vector<Complex> scalars)
    : shape_(std::move(shape)), scalars_(std::move(scalars)) {
  if (static_cast<int>(scalars_.size()) != shape_.num_blocks()) {
    throw ShapeMismatch("central element for " + shape_.to_string() + " needs " +
                        std::to_string(shape_.num_blocks()) + " scalars, got " +
                        std::to_string(scalars_.size()));
  }
}

CentralElement CentralElement::constant(const AlgebraShape& shape, Complex s) {
  return {shape, std::vector<Complex>(static_cast<std::size_t>(shape.num_blocks()), s)};
}

CentralElement CentralElement::from_element(const AlgebraElement& a, double tol) {
  if (!is_central(a, tol)) {
    throw NotCentral("element is " + std::to_string(distance_to_center(a)) +
                     " away from the center");
  }
  std::vector<Complex> s;
  for (const Matrix& m : a.blocks()) s.push_back(m.diagonal().mean());
  return {a.shape(), std::move(s)};
}

AlgebraElement CentralElement::to_element() const {
  std::vector<Matrix> blocks;
  for (int b = 0; b < shape_.num_blocks(); ++b) {
    blocks.push_back(scalar(b) * Matrix::Identity(shape_.dim(b), shape_.dim(b)));
  }
  return {shape_, std::move(blocks)};
}

CentralElement CentralElement::adjoint() const {
  std::vector<Complex> s;
  for (Complex c : scalars_) s.push_back(std::conj(c));
  return {shape_, std::move(s)};
}

double CentralElement::norm() const {
  double n = 0.0;
  for (Complex c : scalars_) n = std::max(n, std::abs(c));
  return n;
}

}  // namespace csframe
