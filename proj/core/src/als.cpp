#include "freearr/als.hpp"

#include "freearr/derivation.hpp"
#include "freearr/errors.hpp"
#include "freearr/nullspace.hpp"
#include "freearr/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <random>

namespace freearr {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Eigen::VectorXd half_step(const Eigen::MatrixXd& A, const Eigen::VectorXd& q, HalfStep rule) {
    if (rule == HalfStep::total_least_squares) return homogeneous_lsq(A, q).alpha;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    cod.setThreshold(1e-10);
    cod.compute(A);
    Eigen::VectorXd alpha = cod.solve(q);
    const double norm = alpha.norm();
    if (norm > 0) alpha /= norm;
    return alpha;
}

struct RestartOutcome {
    Eigen::VectorXd alpha1, alpha2;
    std::vector<double> history;
    double loss = 1.0;
    double c = 0.0;
    bool zero = false;
};

RestartOutcome run_restart(const SaitoTensor& T, const Eigen::VectorXd& q, const ALSConfig& config, int restart) {
    RestartOutcome out;
    std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(static_cast<std::uint64_t>(restart))));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd alpha2(static_cast<Eigen::Index>(T.k2()));
    for (Eigen::Index j = 0; j < alpha2.size(); ++j) alpha2(j) = normal(rng);
    alpha2.normalize();
    Eigen::VectorXd alpha1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(T.k1()));

    for (int it = 0; it < config.iterations; ++it) {
        const Eigen::MatrixXd A1 = T.partial_first(alpha2);
        Eigen::VectorXd next1 = half_step(A1, q, config.step);
        if (next1.norm() == 0) break;
        alpha1 = std::move(next1);
        out.history.push_back(cos_squared(A1 * alpha1, q));

        const Eigen::MatrixXd A2 = T.partial_second(alpha1);
        Eigen::VectorXd next2 = half_step(A2, q, config.step);
        if (next2.norm() == 0) break;
        alpha2 = std::move(next2);
        out.history.push_back(cos_squared(A2 * alpha2, q));
    }

    const Eigen::VectorXd y = T.contract(alpha1, alpha2);
    out.alpha1 = alpha1;
    out.alpha2 = alpha2;
    if (y.norm() < config.zero_guard) {
        out.zero = true;
        out.loss = 1.0;
        return out;
    }
    out.loss = std::clamp(1.0 - cos_squared(y, q), 0.0, 1.0);
    out.c = y.dot(q);
    return out;
}

bool in_euler_span(const Eigen::VectorXd& alpha, const NullBasisFloat& V, int d) {
    if (d < 1 || alpha.size() == 0) return false;
    const Eigen::MatrixXd E = euler_coordinates(V, d);
    if (E.cols() == 0) return false;
    const Eigen::VectorXd coeffs = E.colPivHouseholderQr().solve(alpha);
    return (E * coeffs - alpha).norm() < 1e-6;
}

}  // namespace

void ALSConfig::validate() const {
    if (iterations < 1) throw Error("ALS needs at least one iteration");
    if (restarts < 1) throw Error("ALS needs at least one restart");
    if (!(zero_guard >= 0)) throw Error("zero guard must be nonnegative");
}

const char* to_string(ALSStatus status) {
    switch (status) {
        case ALSStatus::ok: return "ok";
        case ALSStatus::all_contractions_zero: return "all_contractions_zero";
        case ALSStatus::empty_kernel: return "empty_kernel";
    }
    return "unknown";
}

double cos_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& q) {
    const double yy = y.squaredNorm(), qq = q.squaredNorm();
    if (yy == 0 || qq == 0) return 0.0;
    const double dot = y.dot(q);
    return std::min(1.0, dot * dot / (yy * qq));
}

HomogeneousSolution homogeneous_lsq(const Eigen::MatrixXd& A, const Eigen::VectorXd& q) {
    const Eigen::Index k = A.cols();
    Eigen::MatrixXd B(A.rows(), k + 1);
    B.leftCols(k) = A;
    B.col(k) = -q;

    Eigen::VectorXd w;
    if (B.rows() >= 4 * (k + 1)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(B.transpose() * B);
        w = eig.eigenvectors().col(0);
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeFullV);
        w = svd.matrixV().col(k);
    }
    // Deterministic sign: c >= 0, or the first nonzero alpha entry positive when c = 0.
    double sign = w(k) < 0 ? -1.0 : 1.0;
    if (w(k) == 0) {
        for (Eigen::Index i = 0; i < k; ++i) {
            if (w(i) != 0) {
                sign = w(i) < 0 ? -1.0 : 1.0;
                break;
            }
        }
    }
    w *= sign;

    HomogeneousSolution out;
    out.residual = (B * w).norm();
    out.alpha = w.head(k);
    out.c = w(k);
    const double norm = out.alpha.norm();
    if (norm > 0) {
        out.alpha /= norm;
        out.c /= norm;
    }
    return out;
}

ALSResult als_minimize(const SaitoTensor& T, const ALSConfig& config) {
    config.validate();
    ALSResult result;
    if (T.k1() == 0 || T.k2() == 0) {
        result.status = ALSStatus::empty_kernel;
        return result;
    }
    const double qnorm = T.q().norm();
    if (qnorm == 0) throw Error("defining polynomial has no coefficients");
    const Eigen::VectorXd q = T.q() / qnorm;

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
    parallel_for(outcomes.size(), config.threads,
                 [&](std::size_t r) { outcomes[r] = run_restart(T, q, config, static_cast<int>(r)); });

    bool all_zero = true;
    std::size_t best = 0;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        result.restart_losses.push_back(outcomes[r].loss);
        result.history.push_back(outcomes[r].history);
        all_zero = all_zero && outcomes[r].zero;
        if (outcomes[r].loss < outcomes[best].loss) best = r;
    }
    result.best_restart = best;
    result.loss = outcomes[best].loss;
    result.alpha1 = outcomes[best].alpha1;
    result.alpha2 = outcomes[best].alpha2;
    result.c = outcomes[best].c;
    if (all_zero) {
        result.status = ALSStatus::all_contractions_zero;
        result.loss = 1.0;
    }
    return result;
}

SaitoEvaluation saito_functional(const Arrangement& arrangement, int d1, int d2, const ALSConfig& config) {
    config.validate();
    const auto start = Clock::now();
    const int n = static_cast<int>(arrangement.size());
    if (d1 + d2 != n - 1) {
        throw DegreeMismatch("exponents must satisfy d1 + d2 = n - 1 = " + std::to_string(n - 1));
    }
    if (d1 < 1 || d2 < 1) throw DegreeMismatch("exponents must be positive");
    if (d1 > d2) std::swap(d1, d2);

    SaitoEvaluation out;
    out.d1 = d1;
    out.d2 = d2;

    auto t = Clock::now();
    const DerivationMatrix M1 = derivation_matrix(arrangement, d1);
    const DerivationMatrix M2 = d2 == d1 ? M1 : derivation_matrix(arrangement, d2);
    out.timings.matrices_ms = ms_since(t);

    t = Clock::now();
    auto basis = [&](const DerivationMatrix& M) {
        return config.kernel == KernelMethod::exact ? to_float_basis(null_space_exact(M)) : kernel_basis(M, config.kernel_tol);
    };
    const NullBasisFloat V1 = basis(M1);
    const NullBasisFloat V2 = d2 == d1 ? V1 : basis(M2);
    out.timings.kernels_ms = ms_since(t);
    out.k1 = V1.nullity;
    out.k2 = V2.nullity;
    out.kernel_source1 = V1.source;
    out.kernel_source2 = V2.source;

    if (out.k1 == 0 || out.k2 == 0) {
        out.als.status = ALSStatus::empty_kernel;
        out.timings.total_ms = ms_since(start);
        return out;
    }

    t = Clock::now();
    const SaitoTensor T = SaitoTensor::assemble(arrangement, d1, V1, d2, V2, config.tensor_budget);
    out.dense_tensor = T.dense();
    out.timings.tensor_ms = ms_since(t);

    t = Clock::now();
    out.als = als_minimize(T, config);
    out.timings.als_ms = ms_since(t);

    if (out.als.status == ALSStatus::ok) {
        out.als.euler_flag = in_euler_span(out.als.alpha1, V1, d1) || in_euler_span(out.als.alpha2, V2, d2);
    }
    out.timings.total_ms = ms_since(start);
    return out;
}

SaitoEvaluation saito_functional(const Arrangement& arrangement, const ALSConfig& config) {
    const ExponentCheck check = candidate_exponents(arrangement);
    if (!check) {
        throw NoCandidateExponents(std::string("no candidate exponents: ") + to_string(check.status));
    }
    return saito_functional(arrangement, check.exponents->d1, check.exponents->d2, config);
}

}  // namespace freearr
