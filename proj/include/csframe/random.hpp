#pragma once

// Seeded generators for random instances. Everything here is deterministic
// given the seed.

#include <cstdint>
#include <random>
#include <vector>

#include "csframe/frames.hpp"

namespace csframe {

class Symbol;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

Matrix random_matrix(int rows, int cols, Rng& rng);
Matrix random_unitary(int dim, Rng& rng);
/// Hermitian matrix with eigenvalues in [lo, hi]; both endpoints are
/// eigenvalues when dim >= 2.
Matrix random_hermitian_with_spectrum(int dim, double lo, double hi, Rng& rng);

AlgebraElement random_element(const AlgebraShape& shape, Rng& rng);
ModuleVector random_vector(const ModuleShape& shape, Rng& rng);
/// Random vector scaled to module norm 1.
ModuleVector random_unit_vector(const ModuleShape& shape, Rng& rng);
ModuleOperator random_operator(const ModuleShape& shape, Rng& rng);
/// Hermitian positive definite operator with spectrum in [lo, hi] per block.
ModuleOperator random_positive_operator(const ModuleShape& shape, double lo, double hi, Rng& rng);

/// `count` Gaussian vectors.
FrameSystem random_frame(const ModuleShape& shape, int count, Rng& rng);

/// A frame of `count` vectors whose frame operator equals `target`, which
/// must be positive definite. Requires count >= rank.
FrameSystem frame_with_operator(const ModuleOperator& target, int count, Rng& rng);

/// A frame whose frame operator has spectrum exactly spanning [1, cond]
/// (both endpoints attained in some block).
FrameSystem frame_with_condition(const ModuleShape& shape, int count, double cond, Rng& rng);

/// Real positive central weights drawn uniformly from [lo, hi], independently
/// per block.
Symbol random_symbol(const AlgebraShape& shape, int count, double lo, double hi, Rng& rng);

}  // namespace csframe
