#pragma once

#include "freearr/derivation.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace freearr {

struct NullBasisFloat {
    Eigen::MatrixXd V;  // cols x k, orthonormal columns
    std::size_t nullity = 0;
    double gap = 0;     // sigma_r / sigma_{r+1} at the cut, +inf when nothing was discarded
    double sigma_max = 0;
    std::vector<double> singular_values;  // of the equilibrated matrix, descending
    std::string source = "svd";           // "svd" or "exact"
};

constexpr double kDefaultKernelTol = 1e-9;
constexpr double kMinSpectralGap = 1e3;

/// Numerical kernel from an SVD of the row/column equilibrated matrix. Singular values below
/// tol * sigma_max are discarded; throws IllConditionedKernel when the gap at the cut is below 1e3.
NullBasisFloat null_space_float(const Eigen::MatrixXd& M, double tol = kDefaultKernelTol);
NullBasisFloat null_space_float(const DerivationMatrix& M, double tol = kDefaultKernelTol);

enum class ExactMethod { multimodular, bareiss };

struct NullBasisExact {
    std::vector<IntVector> basis;  // primitive integer vectors
    std::size_t cols = 0;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
    std::vector<std::size_t> free_columns;  // basis[j] is nonzero at free_columns[j] and zero at the other free columns
    std::size_t primes_used = 0;             // multimodular only

    std::size_t nullity() const noexcept { return basis.size(); }
};

/// Exact rational kernel. The multimodular path reconstructs the reduced-echelon kernel from
/// word-size primes and certifies it by checking M v = 0 over the integers.
NullBasisExact null_space_exact(const DerivationMatrix& M, ExactMethod method = ExactMethod::multimodular);

/// Orthonormal double basis spanning an exact kernel.
NullBasisFloat to_float_basis(const NullBasisExact& K);

/// Float kernel with the documented fallback: if the gap test fails, the exact kernel is used.
NullBasisFloat kernel_basis(const DerivationMatrix& M, double tol = kDefaultKernelTol);

/// Indices of exact basis vectors that, together with the degree-d Euler multiples, span the kernel.
std::vector<std::size_t> euler_complement(const NullBasisExact& K, int d);

/// Orthogonal projection coefficients of the Euler multiples onto V (k x N_{d-1}).
Eigen::MatrixXd euler_coordinates(const NullBasisFloat& V, int d);

}  // namespace freearr
