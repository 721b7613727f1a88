#include "csframe/random.hpp"

#include "csframe/errors.hpp"
#include "csframe/multipliers.hpp"

namespace csframe {

Matrix random_matrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  }
  return m;
}

Matrix random_unitary(int dim, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(dim, dim, rng));
  return qr.householderQ() * Matrix::Identity(dim, dim);
}

Matrix random_hermitian_with_spectrum(int dim, double lo, double hi, Rng& rng) {
  Eigen::VectorXd ev(dim);
  for (int i = 0; i < dim; ++i) ev(i) = rng.uniform(lo, hi);
  ev(0) = lo;
  if (dim > 1) ev(dim - 1) = hi;
  const Matrix u = random_unitary(dim, rng);
  Matrix h = u * ev.cast<Complex>().asDiagonal() * u.adjoint();
  return (h + h.adjoint()) * 0.5;
}

AlgebraElement random_element(const AlgebraShape& shape, Rng& rng) {
  std::vector<Matrix> blocks;
  for (int d : shape.dims()) blocks.push_back(random_matrix(d, d, rng));
  return {shape, std::move(blocks)};
}

ModuleVector random_vector(const ModuleShape& shape, Rng& rng) {
  std::vector<Matrix> flat;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    flat.push_back(random_matrix(shape.algebra.dim(b), shape.flat_dim(b), rng));
  }
  return ModuleVector::from_flattening(shape, std::move(flat));
}

ModuleVector random_unit_vector(const ModuleShape& shape, Rng& rng) {
  ModuleVector f = random_vector(shape, rng);
  return Complex(1.0 / module_norm(f), 0.0) * f;
}

ModuleOperator random_operator(const ModuleShape& shape, Rng& rng) {
  std::vector<Matrix> mats;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    mats.push_back(random_matrix(shape.flat_dim(b), shape.flat_dim(b), rng));
  }
  return {shape, std::move(mats)};
}

ModuleOperator random_positive_operator(const ModuleShape& shape, double lo, double hi, Rng& rng) {
  std::vector<Matrix> mats;
  for (int b = 0; b < shape.algebra.num_blocks(); ++b) {
    mats.push_back(random_hermitian_with_spectrum(shape.flat_dim(b), lo, hi, rng));
  }
  return {shape, std::move(mats)};
}

FrameSystem random_frame(const ModuleShape& shape, int count, Rng& rng) {
  if (count < 1) throw InvalidArgument("frame size must be >= 1");
  std::vector<ModuleVector> v;
  for (int j = 0; j < count; ++j) v.push_back(random_vector(shape, rng));
  return FrameSystem(std::move(v));
}

FrameSystem frame_with_operator(const ModuleOperator& target, int count, Rng& rng) {
  const ModuleShape& shape = target.shape();
  if (count < shape.rank) {
    throw InvalidArgument("a frame of A^" + std::to_string(shape.rank) + " needs at least " +
                          std::to_string(shape.rank) + " vectors");
  }
  // Parseval-ise a generic frame, then push it through target^{1/2}.
  FrameSystem base = random_frame(shape, count, rng);
  const ModuleOperator s0 = base.frame_op();
  const ModuleOperator s0_inv_sqrt = op_inverse(op_sqrt_positive(s0));
  const ModuleOperator target_sqrt = op_sqrt_positive(target);
  const ModuleOperator map = op_compose(target_sqrt, s0_inv_sqrt);
  std::vector<ModuleVector> v;
  for (const ModuleVector& psi : base.vectors()) v.push_back(op_apply(map, psi));
  return FrameSystem(std::move(v));
}

FrameSystem frame_with_condition(const ModuleShape& shape, int count, double cond, Rng& rng) {
  if (!(cond >= 1.0)) throw InvalidArgument("condition number must be >= 1");
  std::vector<Matrix> mats;
  const int nb = shape.algebra.num_blocks();
  for (int b = 0; b < nb; ++b) {
    const int dim = shape.flat_dim(b);
    Matrix h = random_hermitian_with_spectrum(dim, 1.0, cond, rng);
    if (dim == 1) {
      // Single-entry blocks: spread the endpoints over the first and last block.
      const double v = (b == 0) ? 1.0 : (b == nb - 1 ? cond : rng.uniform(1.0, cond));
      h = Matrix::Constant(1, 1, v);
    }
    mats.push_back(std::move(h));
  }
  if (nb == 1 && shape.flat_dim(0) == 1) mats[0] = Matrix::Constant(1, 1, 1.0);
  return frame_with_operator(ModuleOperator(shape, std::move(mats)), count, rng);
}

Symbol random_symbol(const AlgebraShape& shape, int count, double lo, double hi, Rng& rng) {
  if (count < 1) throw InvalidArgument("symbol length must be >= 1");
  std::vector<CentralElement> values;
  for (int j = 0; j < count; ++j) {
    std::vector<Complex> s;
    for (int b = 0; b < shape.num_blocks(); ++b) s.emplace_back(rng.uniform(lo, hi), 0.0);
    values.emplace_back(shape, std::move(s));
  }
  return {shape, std::move(values)};
}

}  // namespace csframe
