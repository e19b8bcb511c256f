#pragma once

#include "freearr/arrangement.hpp"
#include "freearr/nullspace.hpp"

#include <Eigen/Dense>

#include <vector>

namespace freearr {

constexpr double kDefaultTensorBudget = 2e9;

/// Bilinear map (alpha1, alpha2) -> coefficients of det(theta_E, V1 alpha1, V2 alpha2) in degree n,
/// together with the coefficient vector q of the defining polynomial.
class SaitoTensor {
public:
    /// Throws DegreeMismatch unless d1 + d2 = n - 1. Falls back to the lazy path when
    /// N_out * k1 * k2 exceeds entry_budget.
    static SaitoTensor assemble(const Arrangement& arrangement, int d1, const NullBasisFloat& V1, int d2,
                                const NullBasisFloat& V2, double entry_budget = kDefaultTensorBudget);

    int n() const noexcept { return n_; }
    int d1() const noexcept { return d1_; }
    int d2() const noexcept { return d2_; }
    std::size_t n_out() const noexcept { return n_out_; }
    std::size_t k1() const noexcept { return k1_; }
    std::size_t k2() const noexcept { return k2_; }
    double entries() const noexcept { return static_cast<double>(n_out_) * k1_ * k2_; }
    bool dense() const noexcept { return dense_; }

    const Eigen::VectorXd& q() const noexcept { return q_; }

    /// T(alpha1, alpha2).
    Eigen::VectorXd contract(const Eigen::VectorXd& alpha1, const Eigen::VectorXd& alpha2) const;
    /// A1 with T(alpha1, alpha2) = A1 alpha1, shape N_out x k1.
    Eigen::MatrixXd partial_first(const Eigen::VectorXd& alpha2) const;
    /// A2 with T(alpha1, alpha2) = A2 alpha2, shape N_out x k2.
    Eigen::MatrixXd partial_second(const Eigen::VectorXd& alpha1) const;

    /// T[beta][i][j]; dense storage only.
    double operator()(std::size_t beta, std::size_t i, std::size_t j) const;

private:
    SaitoTensor() = default;

    int n_ = 0, d1_ = 0, d2_ = 0;
    std::size_t n_out_ = 0, k1_ = 0, k2_ = 0;
    std::size_t N1_ = 0, N2_ = 0;
    bool dense_ = false;
    Eigen::VectorXd q_;
    Eigen::MatrixXd F1_, G1_, H1_, F2_, G2_, H2_;  // component coefficients, N_j x k_j
    // Output indices of x*m_a*m_b, y*m_a*m_b, z*m_a*m_b for a < N1, b < N2 (index a * N2 + b).
    std::vector<std::size_t> ix_, iy_, iz_;
    Eigen::MatrixXd dense_T_;  // k1 x (N_out * k2), column beta * k2 + j
};

}  // namespace freearr
