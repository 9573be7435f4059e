#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "symperm/permanent.hpp"
#include "symperm/symmetric.hpp"

namespace symperm {

using Rng = std::mt19937_64;

/// Uniform on the complex unit sphere in C^d (normalized complex Gaussian).
std::vector<Complex> random_unit_vector(Rng &rng, int d);

/// Uniform nonnegative uniforms, scaled to unit L2 norm.
std::vector<double> random_nonnegative_unit(Rng &rng, int d);

/// Haar-random d x d unitary (Gram-Schmidt on a complex Ginibre matrix).
ComplexMatrix random_unitary(Rng &rng, int d);

/// Square matrix with columns drawn uniformly from the complex unit sphere.
ComplexMatrix random_unit_column_matrix(Rng &rng, int n);

ProductState random_product_state(Rng &rng, int n, int d);

/// Random state over all compositions of n into d parts, complex Gaussian
/// coefficients (or nonnegative squared-normalized uniforms).
SymmetricState random_symmetric_state(Rng &rng, int n, int d, bool nonnegative);

} // namespace symperm
