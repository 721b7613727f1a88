#include "csframe/module_space.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "csframe/errors.hpp"

namespace csframe {

ModuleShape::ModuleShape(AlgebraShape algebra_shape, int module_rank)
    : algebra(std::move(algebra_shape)), rank(module_rank) {
  if (rank < 1) throw InvalidArgument("module rank must be >= 1, got " + std::to_string(rank));
}

std::string ModuleShape::to_string() const {
  std::ostringstream os;
  os << "A" << algebra.to_string() << "^" << rank;
  return os.str();
}

void require_same_shape(const ModuleShape& expected, const ModuleShape& actual, const char* what) {
  if (!(expected == actual)) {
    throw ShapeMismatch(std::string(what) + ": expected module " + expected.to_string() +
                        ", got " + actual.to_string());
  }
}

ModuleVector::ModuleVector(ModuleShape shape, std::vector<Matrix> flat)
    : shape_(std::move(shape)), flat_(std::move(flat)) {}

ModuleVector::ModuleVector(ModuleShape shape, const std::vector<AlgebraElement>& entries)
    : shape_(std::move(shape)) {
  if (static_cast<int>(entries.size()) != shape_.rank) {
    throw ShapeMismatch("module vector for " + shape_.to_string() + " has " +
                        std::to_string(entries.size()) + " entries");
  }
  for (const AlgebraElement& e : entries) require_same_shape(shape_.algebra, e.shape(), "module entry");
  for (int b = 0; b < shape_.algebra.num_blocks(); ++b) {
    const int d = shape_.algebra.dim(b);
    Matrix f(d, shape_.flat_dim(b));
    for (int i = 0; i < shape_.rank; ++i) f.middleCols(i * d, d) = entries[static_cast<std::size_t>(i)].block(b);
    flat_.push_back(std::move(f));
  }
}

ModuleVector ModuleVector::zero(const ModuleShape& shape) {
  std::vector<Matrix> flat;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    flat.push_back(Matrix::Zero(shape.algebra.dim(b), shape.flat_dim(b)));
  }
  return {shape, std::move(flat)};
}

ModuleVector ModuleVector::generator(const ModuleShape& shape, int i) {
  if (i < 0 || i >= shape.rank) throw InvalidArgument("generator index out of range");
  ModuleVector e = zero(shape);
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    const int d = shape.algebra.dim(b);
    e.flat_[static_cast<std::size_t>(b)].middleCols(i * d, d) = Matrix::Identity(d, d);
  }
  return e;
}

ModuleVector ModuleVector::from_flattening(ModuleShape shape, std::vector<Matrix> flat) {
  if (static_cast<int>(flat.size()) != shape.algebra.num_blocks()) {
    throw ShapeMismatch("flattening block count does not match " + shape.to_string());
  }
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    const Matrix& m = flat[static_cast<std::size_t>(b)];
    if (m.rows() != shape.algebra.dim(b) || m.cols() != shape.flat_dim(b)) {
      throw ShapeMismatch("flattening of block " + std::to_string(b) + " has wrong size for " +
                          shape.to_string());
    }
  }
  return {std::move(shape), std::move(flat)};
}

AlgebraElement ModuleVector::entry(int i) const {
  std::vector<Matrix> blocks;
  for (int b = 0; b < shape_.algebra.num_blocks(); ++b) {
    const int d = shape_.algebra.dim(b);
    blocks.push_back(flat(b).middleCols(i * d, d));
  }
  return {shape_.algebra, std::move(blocks)};
}

std::vector<AlgebraElement> ModuleVector::entries() const {
  std::vector<AlgebraElement> out;
  for (int i = 0; i < shape_.rank; ++i) out.push_back(entry(i));
  return out;
}

ModuleVector ModuleVector::operator+(const ModuleVector& other) const {
  require_same_shape(shape_, other.shape_, "add");
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < flat_.size(); ++b) out.push_back(flat_[b] + other.flat_[b]);
  return {shape_, std::move(out)};
}

ModuleVector ModuleVector::operator-(const ModuleVector& other) const {
  require_same_shape(shape_, other.shape_, "subtract");
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < flat_.size(); ++b) out.push_back(flat_[b] - other.flat_[b]);
  return {shape_, std::move(out)};
}

ModuleVector operator*(Complex s, const ModuleVector& f) {
  std::vector<Matrix> out;
  for (const Matrix& m : f.flat_) out.push_back(s * m);
  return {f.shape_, std::move(out)};
}

ModuleVector operator*(const AlgebraElement& a, const ModuleVector& f) {
  require_same_shape(f.shape_.algebra, a.shape(), "left action");
  std::vector<Matrix> out;
  for (int b = 0; b < a.shape().num_blocks(); ++b) out.push_back(a.block(b) * f.flat(b));
  return {f.shape_, std::move(out)};
}

ModuleVector operator*(const CentralElement& c, const ModuleVector& f) {
  require_same_shape(f.shape_.algebra, c.shape(), "central action");
  std::vector<Matrix> out;
  for (int b = 0; b < c.shape().num_blocks(); ++b) out.push_back(c.scalar(b) * f.flat(b));
  return {f.shape_, std::move(out)};
}

ModuleOperator::ModuleOperator(ModuleShape shape, std::vector<Matrix> block_mats)
    : shape_(std::move(shape)), mats_(std::move(block_mats)) {
  if (static_cast<int>(mats_.size()) != shape_.algebra.num_blocks()) {
    throw ShapeMismatch("operator on " + shape_.to_string() + " has " +
                        std::to_string(mats_.size()) + " blocks");
  }
  for (int b = 0; b < shape_.algebra.num_blocks(); ++b) {
    const Matrix& m = mats_[static_cast<std::size_t>(b)];
    if (m.rows() != shape_.flat_dim(b) || m.cols() != shape_.flat_dim(b)) {
      throw ShapeMismatch("operator block " + std::to_string(b) + " on " + shape_.to_string() +
                          " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                          ", expected " + std::to_string(shape_.flat_dim(b)) + " square");
    }
  }
}

ModuleOperator ModuleOperator::identity(const ModuleShape& shape) {
  std::vector<Matrix> mats;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    mats.push_back(Matrix::Identity(shape.flat_dim(b), shape.flat_dim(b)));
  }
  return {shape, std::move(mats)};
}

ModuleOperator ModuleOperator::zero(const ModuleShape& shape) {
  std::vector<Matrix> mats;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    mats.push_back(Matrix::Zero(shape.flat_dim(b), shape.flat_dim(b)));
  }
  return {shape, std::move(mats)};
}

ModuleOperator ModuleOperator::central(const ModuleShape& shape, const CentralElement& c) {
  require_same_shape(shape.algebra, c.shape(), "central operator");
  std::vector<Matrix> mats;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    mats.push_back(c.scalar(b) * Matrix::Identity(shape.flat_dim(b), shape.flat_dim(b)));
  }
  return {shape, std::move(mats)};
}

ModuleOperator ModuleOperator::operator+(const ModuleOperator& other) const {
  require_same_shape(shape_, other.shape_, "operator add");
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < mats_.size(); ++b) out.push_back(mats_[b] + other.mats_[b]);
  return {shape_, std::move(out)};
}

ModuleOperator ModuleOperator::operator-(const ModuleOperator& other) const {
  require_same_shape(shape_, other.shape_, "operator subtract");
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < mats_.size(); ++b) out.push_back(mats_[b] - other.mats_[b]);
  return {shape_, std::move(out)};
}

ModuleOperator operator*(Complex s, const ModuleOperator& t) {
  std::vector<Matrix> out;
  for (const Matrix& m : t.mats_) out.push_back(s * m);
  return {t.shape_, std::move(out)};
}

AlgebraElement inner(const ModuleVector& f, const ModuleVector& g) {
  require_same_shape(f.shape(), g.shape(), "inner");
  std::vector<Matrix> blocks;
  for (int b = 0; b < f.shape().algebra.num_blocks(); ++b) {
    blocks.push_back(f.flat(b) * g.flat(b).adjoint());
  }
  return {f.shape().algebra, std::move(blocks)};
}

double module_norm(const ModuleVector& f) {
  // ||<f,f>|| = ||F_b||^2, maximised over blocks.
  double n = 0.0;
  for (const Matrix& m : f.flat()) n = std::max(n, detail::spectral_norm(m));
  return n;
}

ModuleVector op_apply(const ModuleOperator& t, const ModuleVector& f) {
  require_same_shape(t.shape(), f.shape(), "op_apply");
  std::vector<Matrix> out;
  for (int b = 0; b < t.shape().algebra.num_blocks(); ++b) out.push_back(f.flat(b) * t.block(b));
  return ModuleVector::from_flattening(f.shape(), std::move(out));
}

ModuleOperator op_compose(const ModuleOperator& t, const ModuleOperator& u) {
  require_same_shape(t.shape(), u.shape(), "op_compose");
  std::vector<Matrix> out;
  for (int b = 0; b < t.shape().algebra.num_blocks(); ++b) out.push_back(u.block(b) * t.block(b));
  return {t.shape(), std::move(out)};
}

ModuleOperator op_adjoint(const ModuleOperator& t) {
  std::vector<Matrix> out;
  for (const Matrix& m : t.blocks()) out.push_back(m.adjoint());
  return {t.shape(), std::move(out)};
}

double op_norm(const ModuleOperator& t) {
  double n = 0.0;
  for (const Matrix& m : t.blocks()) n = std::max(n, detail::spectral_norm(m));
  return n;
}

double op_min_singular_value(const ModuleOperator& t) {
  double s = std::numeric_limits<double>::infinity();
  for (const Matrix& m : t.blocks()) s = std::min(s, detail::min_singular_value(m));
  return s;
}

bool op_is_self_adjoint(const ModuleOperator& t, double tol) {
  const double slack = tol * (1.0 + op_norm(t));
  for (const Matrix& m : t.blocks()) {
    if (detail::spectral_norm(m - m.adjoint()) > slack) return false;
  }
  return true;
}

bool op_is_positive(const ModuleOperator& t, double tol) {
  if (!op_is_self_adjoint(t, tol)) return false;
  const double slack = tol * (1.0 + op_norm(t));
  for (const Matrix& m : t.blocks()) {
    if (detail::hermitian_eigenvalues(m).minCoeff() < -slack) return false;
  }
  return true;
}

bool op_is_invertible(const ModuleOperator& t, double tol) {
  return op_min_singular_value(t) > tol * (1.0 + op_norm(t));
}

ModuleOperator op_inverse(const ModuleOperator& t) {
  std::vector<Matrix> out;
  for (int b = 0; b < t.shape().algebra.num_blocks(); ++b) {
    Eigen::FullPivLU<Matrix> lu(t.block(b));
    if (!lu.isInvertible()) throw Singular("op_inverse: block " + std::to_string(b) + " is singular");
    out.push_back(lu.inverse());
  }
  return {t.shape(), std::move(out)};
}

SpectralBounds op_spectral_bounds(const ModuleOperator& t) {
  SpectralBounds s{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Matrix& m : t.blocks()) {
    Eigen::VectorXd ev = detail::hermitian_eigenvalues(m);
    s.lower = std::min(s.lower, ev.minCoeff());
    s.upper = std::max(s.upper, ev.maxCoeff());
  }
  return s;
}

ModuleOperator op_sqrt_positive(const ModuleOperator& t, double tol) {
  if (!op_is_positive(t, tol)) throw NotPositive("op_sqrt_positive: operator is not positive");
  std::vector<Matrix> out;
  for (const Matrix& m : t.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(detail::hermitian_part(m));
    Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    out.push_back(detail::hermitian_part(es.eigenvectors() * root.cast<Complex>().asDiagonal() *
                                         es.eigenvectors().adjoint()));
  }
  return {t.shape(), std::move(out)};
}

std::vector<ModuleVector> spectral_witnesses(const ModuleOperator& t) {
  const ModuleShape& shape = t.shape();
  std::vector<ModuleVector> out;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(detail::hermitian_part(t.block(b)));
    const Eigen::Index last = es.eigenvalues().size() - 1;
    for (Eigen::Index k : {Eigen::Index{0}, last}) {
      ModuleVector u = ModuleVector::zero(shape);
      std::vector<Matrix> flat = u.flat();
      // Row x = v^H gives x R x^H = v^H R v = lambda.
      flat[static_cast<std::size_t>(b)].row(0) = es.eigenvectors().col(k).adjoint();
      out.push_back(ModuleVector::from_flattening(shape, std::move(flat)));
      if (last == 0) break;
    }
  }
  return out;
}

std::vector<ModuleVector> generator_witnesses(const ModuleShape& shape) {
  std::vector<ModuleVector> out;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    const int d = shape.algebra.dim(b);
    for (int i = 0; i < shape.rank; ++i) {
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          out.push_back(AlgebraElement::matrix_unit(shape.algebra, b, k, l) *
                        ModuleVector::generator(shape, i));
        }
      }
    }
  }
  return out;
}

}  // namespace csframe
