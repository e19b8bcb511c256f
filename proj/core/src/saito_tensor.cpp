#include "freearr/saito_tensor.hpp"

#include "freearr/derivation.hpp"
#include "freearr/errors.hpp"
#include "freearr/monomial.hpp"
#include "freearr/parallel.hpp"

namespace freearr {

SaitoTensor SaitoTensor::assemble(const Arrangement& arrangement, int d1, const NullBasisFloat& V1, int d2,
                                  const NullBasisFloat& V2, double entry_budget) {
    const int n = static_cast<int>(arrangement.size());
    if (d1 + d2 != n - 1) {
        throw DegreeMismatch("exponents " + std::to_string(d1) + " + " + std::to_string(d2) + " != n - 1 = " +
                             std::to_string(n - 1));
    }
    SaitoTensor T;
    T.n_ = n;
    T.d1_ = d1;
    T.d2_ = d2;
    T.n_out_ = monomial_count(n);
    T.N1_ = monomial_count(d1);
    T.N2_ = monomial_count(d2);
    if (static_cast<std::size_t>(V1.V.rows()) != 3 * T.N1_ || static_cast<std::size_t>(V2.V.rows()) != 3 * T.N2_) {
        throw DegreeMismatch("null basis row count does not match its degree");
    }
    T.k1_ = static_cast<std::size_t>(V1.V.cols());
    T.k2_ = static_cast<std::size_t>(V2.V.cols());
    T.q_ = to_double(q_coefficient_vector(arrangement));

    const auto N1 = static_cast<Eigen::Index>(T.N1_), N2 = static_cast<Eigen::Index>(T.N2_);
    T.F1_ = V1.V.topRows(N1);
    T.G1_ = V1.V.middleRows(N1, N1);
    T.H1_ = V1.V.bottomRows(N1);
    T.F2_ = V2.V.topRows(N2);
    T.G2_ = V2.V.middleRows(N2, N2);
    T.H2_ = V2.V.bottomRows(N2);

    const MonomialBasis b1(d1), b2(d2);
    T.ix_.resize(T.N1_ * T.N2_);
    T.iy_.resize(T.N1_ * T.N2_);
    T.iz_.resize(T.N1_ * T.N2_);
    for (std::size_t a = 0; a < T.N1_; ++a) {
        for (std::size_t b = 0; b < T.N2_; ++b) {
            const int i = b1[a][0] + b2[b][0], j = b1[a][1] + b2[b][1], k = b1[a][2] + b2[b][2];
            T.ix_[a * T.N2_ + b] = monomial_index(i + 1, j, k);
            T.iy_[a * T.N2_ + b] = monomial_index(i, j + 1, k);
            T.iz_[a * T.N2_ + b] = monomial_index(i, j, k + 1);
        }
    }

    T.dense_ = T.entries() <= entry_budget;
    if (!T.dense_) return T;

    const auto k1 = static_cast<Eigen::Index>(T.k1_), k2 = static_cast<Eigen::Index>(T.k2_);
    T.dense_T_ = Eigen::MatrixXd::Zero(k1, static_cast<Eigen::Index>(T.n_out_) * k2);
    constexpr Eigen::Index kChunk = 16;
    const std::size_t chunks = static_cast<std::size_t>((k1 + kChunk - 1) / kChunk);
    parallel_for(chunks, 0, [&](std::size_t chunk) {
        const Eigen::Index i0 = static_cast<Eigen::Index>(chunk) * kChunk;
        const Eigen::Index rows = std::min(kChunk, k1 - i0);
        for (std::size_t a = 0; a < T.N1_; ++a) {
            const auto f1 = T.F1_.row(static_cast<Eigen::Index>(a)).segment(i0, rows).transpose();
            const auto g1 = T.G1_.row(static_cast<Eigen::Index>(a)).segment(i0, rows).transpose();
            const auto h1 = T.H1_.row(static_cast<Eigen::Index>(a)).segment(i0, rows).transpose();
            for (std::size_t b = 0; b < T.N2_; ++b) {
                const auto bi = static_cast<Eigen::Index>(b);
                const std::size_t idx = a * T.N2_ + b;
                auto bx = T.dense_T_.block(i0, static_cast<Eigen::Index>(T.ix_[idx]) * k2, rows, k2);
                bx.noalias() += g1 * T.H2_.row(bi) - h1 * T.G2_.row(bi);
                auto by = T.dense_T_.block(i0, static_cast<Eigen::Index>(T.iy_[idx]) * k2, rows, k2);
                by.noalias() -= f1 * T.H2_.row(bi) - h1 * T.F2_.row(bi);
                auto bz = T.dense_T_.block(i0, static_cast<Eigen::Index>(T.iz_[idx]) * k2, rows, k2);
                bz.noalias() += f1 * T.G2_.row(bi) - g1 * T.F2_.row(bi);
            }
        }
    });
    return T;
}

Eigen::MatrixXd SaitoTensor::partial_first(const Eigen::VectorXd& alpha2) const {
    const auto k1 = static_cast<Eigen::Index>(k1_), k2 = static_cast<Eigen::Index>(k2_);
    Eigen::MatrixXd A1(static_cast<Eigen::Index>(n_out_), k1);
    if (dense_) {
        for (std::size_t beta = 0; beta < n_out_; ++beta) {
            A1.row(static_cast<Eigen::Index>(beta)).noalias() =
                (dense_T_.middleCols(static_cast<Eigen::Index>(beta) * k2, k2) * alpha2).transpose();
        }
        return A1;
    }
    A1.setZero();
    const Eigen::VectorXd f2 = F2_ * alpha2, g2 = G2_ * alpha2, h2 = H2_ * alpha2;
    for (std::size_t a = 0; a < N1_; ++a) {
        const auto ai = static_cast<Eigen::Index>(a);
        for (std::size_t b = 0; b < N2_; ++b) {
            const auto bi = static_cast<Eigen::Index>(b);
            const std::size_t idx = a * N2_ + b;
            A1.row(static_cast<Eigen::Index>(ix_[idx])) += h2(bi) * G1_.row(ai) - g2(bi) * H1_.row(ai);
            A1.row(static_cast<Eigen::Index>(iy_[idx])) -= h2(bi) * F1_.row(ai) - f2(bi) * H1_.row(ai);
            A1.row(static_cast<Eigen::Index>(iz_[idx])) += g2(bi) * F1_.row(ai) - f2(bi) * G1_.row(ai);
        }
    }
    return A1;
}

Eigen::MatrixXd SaitoTensor::partial_second(const Eigen::VectorXd& alpha1) const {
    const auto k2 = static_cast<Eigen::Index>(k2_);
    if (dense_) {
        const Eigen::RowVectorXd flat = alpha1.transpose() * dense_T_;
        return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            flat.data(), static_cast<Eigen::Index>(n_out_), k2);
    }
    Eigen::MatrixXd A2 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_out_), k2);
    const Eigen::VectorXd f1 = F1_ * alpha1, g1 = G1_ * alpha1, h1 = H1_ * alpha1;
    for (std::size_t a = 0; a < N1_; ++a) {
        const auto ai = static_cast<Eigen::Index>(a);
        for (std::size_t b = 0; b < N2_; ++b) {
            const auto bi = static_cast<Eigen::Index>(b);
            const std::size_t idx = a * N2_ + b;
            A2.row(static_cast<Eigen::Index>(ix_[idx])) += g1(ai) * H2_.row(bi) - h1(ai) * G2_.row(bi);
            A2.row(static_cast<Eigen::Index>(iy_[idx])) -= f1(ai) * H2_.row(bi) - h1(ai) * F2_.row(bi);
            A2.row(static_cast<Eigen::Index>(iz_[idx])) += f1(ai) * G2_.row(bi) - g1(ai) * F2_.row(bi);
        }
    }
    return A2;
}

Eigen::VectorXd SaitoTensor::contract(const Eigen::VectorXd& alpha1, const Eigen::VectorXd& alpha2) const {
    if (static_cast<std::size_t>(alpha1.size()) != k1_ || static_cast<std::size_t>(alpha2.size()) != k2_) {
        throw Error("contraction arguments do not match the tensor dimensions");
    }
    return partial_second(alpha1) * alpha2;
}

double SaitoTensor::operator()(std::size_t beta, std::size_t i, std::size_t j) const {
    if (!dense_) throw Error("tensor entries are only stored on the dense path");
    return dense_T_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(beta * k2_ + j));
}

}  // namespace freearr
