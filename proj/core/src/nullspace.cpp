#include "freearr/nullspace.hpp"

#include "freearr/errors.hpp"
#include "freearr/parallel.hpp"
#include "modular.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

namespace freearr {

namespace {

constexpr int kEquilibrationSweeps = 30;

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& K) {
    const Eigen::Index k = K.cols();
    if (k == 0) return Eigen::MatrixXd(K.rows(), 0);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
    return qr.householderQ() * Eigen::MatrixXd::Identity(K.rows(), k);
}

std::vector<IntVector> kernel_from_echelon(const std::vector<Rational>& reduced, std::size_t cols,
                                           const std::vector<std::size_t>& pivots,
                                           const std::vector<std::size_t>& free_columns) {
    // reduced[i * nfree + j] is the RREF entry in pivot row i, free column j.
    const std::size_t nfree = free_columns.size();
    std::vector<IntVector> basis(nfree);
    parallel_for(nfree, 0, [&](std::size_t j) {
        RationalVector v(cols, Rational(0));
        v[free_columns[j]] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -reduced[i * nfree + j];
        basis[j] = primitive_integer_vector(v);
    });
    return basis;
}

bool verify_kernel(const DerivationMatrix& M, const std::vector<IntVector>& basis) {
    std::atomic<bool> ok{true};
    parallel_for(basis.size(), 0, [&](std::size_t j) {
        if (!ok.load()) return;
        const IntVector& v = basis[j];
        Integer acc;
        for (std::size_t r = 0; r < M.rows() && ok.load(); ++r) {
            acc = 0;
            const Integer* row = M.row(r);
            for (std::size_t c = 0; c < M.cols(); ++c) {
                if (row[c] != 0 && v[c] != 0) mpz_addmul(acc.get_mpz_t(), row[c].get_mpz_t(), v[c].get_mpz_t());
            }
            if (acc != 0) ok.store(false);
        }
    });
    return ok.load();
}

std::vector<std::size_t> complement_of(const std::vector<std::size_t>& pivots, std::size_t cols) {
    std::vector<std::size_t> out;
    std::size_t next = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        if (next < pivots.size() && pivots[next] == c) {
            ++next;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

NullBasisExact exact_multimodular(const DerivationMatrix& M) {
    using namespace detail;
    const std::size_t R = M.rows(), C = M.cols();
    NullBasisExact out;
    out.cols = C;

    PrimeSequence primes;
    bool have_pattern = false;
    std::vector<std::size_t> pivots, free_columns;
    std::vector<Integer> residues;
    Integer modulus;
    std::vector<Rational> previous;
    bool have_previous = false;

    for (std::size_t attempt = 0; attempt < 4096; ++attempt) {
        const u64 p = primes.next();
        ModRref red;
        red.rows = R;
        red.cols = C;
        red.entries.resize(R * C);
        for (std::size_t r = 0; r < R; ++r) {
            const Integer* row = M.row(r);
            for (std::size_t c = 0; c < C; ++c) {
                red.entries[r * C + c] = row[c] == 0 ? 0 : mpz_fdiv_ui(row[c].get_mpz_t(), p);
            }
        }
        rref_mod(red, p);
        ++out.primes_used;

        // Over Q the pivot set is the greedy (lexicographically first) one of maximal rank;
        // a bad prime can only lower the rank or push a pivot to the right.
        const bool better = !have_pattern || red.pivots.size() > pivots.size() ||
                            (red.pivots.size() == pivots.size() && red.pivots < pivots);
        if (!better && red.pivots != pivots) continue;

        if (better) {
            have_pattern = true;
            pivots = red.pivots;
            free_columns = complement_of(pivots, C);
            have_previous = false;
        }
        const std::size_t nfree = free_columns.size();
        if (nfree == 0) {
            out.rank = pivots.size();
            out.pivot_columns = pivots;
            return out;
        }
        if (better) {
            residues.assign(pivots.size() * nfree, Integer(0));
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                for (std::size_t j = 0; j < nfree; ++j) {
                    residues[i * nfree + j] = static_cast<unsigned long>(red.entries[i * C + free_columns[j]]);
                }
            }
            modulus = static_cast<unsigned long>(p);
        } else {
            // CRT: x = r + m * ((v - r) * m^{-1} mod p)
            const u64 m_mod_p = mpz_fdiv_ui(modulus.get_mpz_t(), p);
            const u64 m_inv = inv_mod(m_mod_p, p);
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                for (std::size_t j = 0; j < nfree; ++j) {
                    Integer& r = residues[i * nfree + j];
                    const u64 v = red.entries[i * C + free_columns[j]];
                    const u64 r_mod_p = mpz_fdiv_ui(r.get_mpz_t(), p);
                    const u64 k = mul_mod(sub_mod(v, r_mod_p, p), m_inv, p);
                    if (k != 0) mpz_addmul_ui(r.get_mpz_t(), modulus.get_mpz_t(), static_cast<unsigned long>(k));
                }
            }
            modulus *= static_cast<unsigned long>(p);
        }

        std::vector<Rational> current(residues.size());
        bool reconstructed = true;
        for (std::size_t e = 0; e < residues.size() && reconstructed; ++e) {
            if (residues[e] == 0) {
                current[e] = 0;
                continue;
            }
            reconstructed = rational_reconstruct(residues[e], modulus, current[e]);
        }
        if (!reconstructed) {
            have_previous = false;
            continue;
        }
        if (have_previous && current == previous) {
            std::vector<IntVector> basis = kernel_from_echelon(current, C, pivots, free_columns);
            if (verify_kernel(M, basis)) {
                out.basis = std::move(basis);
                out.rank = pivots.size();
                out.pivot_columns = pivots;
                out.free_columns = free_columns;
                return out;
            }
        }
        previous = std::move(current);
        have_previous = true;
    }
    throw InternalInconsistency("multimodular kernel did not stabilize");
}

NullBasisExact exact_bareiss(const DerivationMatrix& M) {
    const std::size_t R = M.rows(), C = M.cols();
    std::vector<Integer> A(R * C);
    for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t c = 0; c < C; ++c) A[r * C + c] = M(r, c);
    }
    auto at = [&](std::size_t r, std::size_t c) -> Integer& { return A[r * C + c]; };

    std::vector<std::size_t> pivots;
    Integer prev = 1, t;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = R;
        std::size_t best_bits = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = r; i < R; ++i) {
            if (at(i, c) == 0) continue;
            const std::size_t bits = bit_length(at(i, c));
            if (bits < best_bits) {
                best_bits = bits;
                piv = i;
            }
        }
        if (piv == R) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < C; ++j) std::swap(at(r, j), at(piv, j));
        }
        const Integer pivot = at(r, c);
        for (std::size_t i = r + 1; i < R; ++i) {
            const Integer factor = at(i, c);
            for (std::size_t j = c + 1; j < C; ++j) {
                t = pivot * at(i, j);
                if (factor != 0 && at(r, j) != 0) mpz_submul(t.get_mpz_t(), factor.get_mpz_t(), at(r, j).get_mpz_t());
                mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, c) = 0;
        }
        prev = pivot;
        pivots.push_back(c);
        ++r;
    }

    NullBasisExact out;
    out.cols = C;
    out.rank = pivots.size();
    out.pivot_columns = pivots;
    out.free_columns = complement_of(pivots, C);
    out.basis.resize(out.free_columns.size());
    parallel_for(out.free_columns.size(), 0, [&](std::size_t j) {
        RationalVector x(C, Rational(0));
        x[out.free_columns[j]] = 1;
        for (std::size_t i = pivots.size(); i-- > 0;) {
            const std::size_t pc = pivots[i];
            Rational s = 0;
            for (std::size_t col = pc + 1; col < C; ++col) {
                if (A[i * C + col] != 0 && x[col] != 0) s += A[i * C + col] * x[col];
            }
            x[pc] = -s / A[i * C + pc];
        }
        out.basis[j] = primitive_integer_vector(x);
    });
    return out;
}

}  // namespace

NullBasisFloat null_space_float(const Eigen::MatrixXd& M, double tol) {
    if (!(tol > 0 && tol < 1)) throw Error("kernel tolerance must lie in (0, 1)");
    const Eigen::Index R = M.rows(), C = M.cols();
    Eigen::MatrixXd A = M;
    Eigen::VectorXd colscale = Eigen::VectorXd::Ones(C);
    for (int sweep = 0; sweep < kEquilibrationSweeps && R > 0 && C > 0; ++sweep) {
        Eigen::VectorXd cn = A.colwise().norm().transpose();
        for (Eigen::Index j = 0; j < C; ++j) {
            if (cn(j) == 0) cn(j) = 1;
        }
        A = A * cn.cwiseInverse().asDiagonal();
        colscale = colscale.cwiseQuotient(cn);
        Eigen::VectorXd rn = A.rowwise().norm();
        for (Eigen::Index i = 0; i < R; ++i) {
            if (rn(i) == 0) rn(i) = 1;
        }
        A = rn.cwiseInverse().asDiagonal() * A;
    }

    NullBasisFloat out;
    Eigen::MatrixXd Vfull;
    if (R > 0 && C > 0) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
        const Eigen::VectorXd s = svd.singularValues();
        out.singular_values.assign(s.data(), s.data() + s.size());
        Vfull = svd.matrixV();
    } else {
        Vfull = Eigen::MatrixXd::Identity(C, C);
    }
    const auto& s = out.singular_values;
    out.sigma_max = s.empty() ? 0.0 : s.front();
    std::size_t rank = 0;
    while (rank < s.size() && s[rank] > tol * out.sigma_max) ++rank;
    out.gap = std::numeric_limits<double>::infinity();
    if (rank > 0 && rank < s.size() && s[rank] > 0) out.gap = s[rank - 1] / s[rank];
    if (out.gap < kMinSpectralGap) {
        throw IllConditionedKernel("no spectral gap at the kernel cut (ratio " + std::to_string(out.gap) + ")",
                                   out.gap);
    }
    out.nullity = static_cast<std::size_t>(C) - rank;
    const Eigen::MatrixXd K = colscale.asDiagonal() * Vfull.rightCols(static_cast<Eigen::Index>(out.nullity));
    out.V = orthonormal_columns(K);
    return out;
}

NullBasisFloat null_space_float(const DerivationMatrix& M, double tol) { return null_space_float(M.to_double(), tol); }

NullBasisExact null_space_exact(const DerivationMatrix& M, ExactMethod method) {
    return method == ExactMethod::bareiss ? exact_bareiss(M) : exact_multimodular(M);
}

NullBasisFloat to_float_basis(const NullBasisExact& K) {
    const Eigen::Index C = static_cast<Eigen::Index>(K.cols), k = static_cast<Eigen::Index>(K.nullity());
    Eigen::MatrixXd B(C, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        // Scale by a power of two first so entries beyond the double range survive the conversion.
        long top = 0;
        for (const auto& v : K.basis[static_cast<std::size_t>(j)]) top = std::max(top, static_cast<long>(bit_length(v)));
        for (Eigen::Index i = 0; i < C; ++i) {
            long exp = 0;
            const double mant = mpz_get_d_2exp(&exp, K.basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].get_mpz_t());
            B(i, j) = std::ldexp(mant, static_cast<int>(exp - top));
        }
        B.col(j).normalize();
    }
    NullBasisFloat out;
    out.V = orthonormal_columns(B);
    out.nullity = K.nullity();
    out.source = "exact";
    return out;
}

NullBasisFloat kernel_basis(const DerivationMatrix& M, double tol) {
    try {
        return null_space_float(M, tol);
    } catch (const IllConditionedKernel& e) {
        NullBasisFloat out = to_float_basis(null_space_exact(M));
        out.gap = e.gap();
        return out;
    }
}

std::vector<std::size_t> euler_complement(const NullBasisExact& K, int d) {
    const std::vector<IntVector> euler = euler_multiples(d);
    const std::size_t k = K.nullity();
    std::vector<RationalVector> rows;
    rows.reserve(euler.size());
    for (const auto& v : euler) {
        RationalVector row(k);
        for (std::size_t j = 0; j < k; ++j) row[j] = v[K.free_columns[j]];
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < rows.size(); ++c) {
        std::size_t piv = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i) {
            if (rows[i][c] != 0) {
                piv = i;
                break;
            }
        }
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            const Rational f = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < k; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    if (pivots.size() != euler.size()) {
        throw InternalInconsistency("Euler multiples are not independent inside the kernel");
    }
    return complement_of(pivots, k);
}

Eigen::MatrixXd euler_coordinates(const NullBasisFloat& V, int d) {
    const std::vector<IntVector> euler = euler_multiples(d);
    Eigen::MatrixXd E(V.V.rows(), static_cast<Eigen::Index>(euler.size()));
    for (std::size_t m = 0; m < euler.size(); ++m) E.col(static_cast<Eigen::Index>(m)) = to_double(euler[m]);
    return V.V.transpose() * E;
}

}  // namespace freearr
