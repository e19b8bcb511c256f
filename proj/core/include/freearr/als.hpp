#pragma once

#include "freearr/arrangement.hpp"
#include "freearr/saito_tensor.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace freearr {

enum class HalfStep {
    angular,  // alpha = A^+ q, the exact maximizer of cos^2 for fixed A
    total_least_squares,  // smallest right singular vector of [A | -q]
};

enum class KernelMethod {
    exact,  // multimodular exact kernel, rounded and orthonormalized
    svd,    // equilibrated SVD with the gap rule, exact fallback on gap failure
};

struct ALSConfig {
    int iterations = 10;
    int restarts = 3;
    std::uint64_t seed = 20240917;
    double zero_guard = 1e-12;  // on |T(alpha1, alpha2)|; bases are orthonormal and alphas unit
    HalfStep step = HalfStep::angular;
    unsigned threads = 0;
    double tensor_budget = kDefaultTensorBudget;
    double kernel_tol = kDefaultKernelTol;  // svd method only
    KernelMethod kernel = KernelMethod::exact;

    void validate() const;
};

enum class ALSStatus { ok, all_contractions_zero, empty_kernel };
const char* to_string(ALSStatus status);

struct ALSResult {
    double loss = 1.0;
    Eigen::VectorXd alpha1, alpha2;
    double c = 0.0;  // T(alpha1, alpha2) ~ c * q / |q|
    std::vector<std::vector<double>> history;  // per restart, cos^2 after every half-step
    std::vector<double> restart_losses;
    std::size_t best_restart = 0;
    ALSStatus status = ALSStatus::ok;
    bool euler_flag = false;
};

struct HomogeneousSolution {
    Eigen::VectorXd alpha;  // unit length, or zero when the minimizer has no alpha part
    double c = 0.0;
    double residual = 0.0;  // |[A | -q] w| for the unit minimizer w
};

/// Unit w = (alpha, c) minimizing |[A | -q] w|, then alpha rescaled to unit length.
HomogeneousSolution homogeneous_lsq(const Eigen::MatrixXd& A, const Eigen::VectorXd& q);

/// cos^2 of the angle between y and q; 0 when either is zero.
double cos_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& q);

ALSResult als_minimize(const SaitoTensor& T, const ALSConfig& config);

struct SaitoTimings {
    double matrices_ms = 0;
    double kernels_ms = 0;
    double tensor_ms = 0;
    double als_ms = 0;
    double total_ms = 0;
};

struct SaitoEvaluation {
    int d1 = 0, d2 = 0;
    std::size_t k1 = 0, k2 = 0;
    std::string kernel_source1, kernel_source2;
    bool dense_tensor = true;
    ALSResult als;
    SaitoTimings timings;

    double loss() const noexcept { return als.loss; }
};

/// Full pipeline: derivation matrices, kernels, tensor and ALS at exponents (d1, d2).
/// Throws DegreeMismatch when d1 + d2 != n - 1.
SaitoEvaluation saito_functional(const Arrangement& arrangement, int d1, int d2, const ALSConfig& config = {});
/// Same at the candidate exponents; throws NoCandidateExponents when there are none.
SaitoEvaluation saito_functional(const Arrangement& arrangement, const ALSConfig& config = {});

}  // namespace freearr
