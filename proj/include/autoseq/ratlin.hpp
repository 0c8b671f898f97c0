#pragma once

#include <gmpxx.h>

#include <vector>

namespace autoseq {

using RatVec = std::vector<mpq_class>;
using RatMat = std::vector<RatVec>;

/// Solve A x = b by exact Gaussian elimination.  Returns false if singular.
bool solve_linear(RatMat a, RatVec b, RatVec& x);

/// Stationary row vector of a nonnegative integer matrix with constant row
/// sum `rowsum`, assuming irreducibility: pi M = rowsum * pi, sum(pi) = 1.
bool stationary_distribution(const std::vector<std::vector<mpz_class>>& m,
                             const mpz_class& rowsum, RatVec& pi);

/// Cesaro limit of (m / rowsum)^L as L -> infinity, computed exactly from
/// recurrent-class stationary distributions and absorption probabilities.
/// Coincides with the plain limit when every recurrent class is aperiodic.
bool limit_matrix(const std::vector<std::vector<mpz_class>>& m,
                  const mpz_class& rowsum, RatMat& lim);

}  // namespace autoseq
