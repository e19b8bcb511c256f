#include "freearr/derivation.hpp"

#include "freearr/errors.hpp"
#include "freearr/parallel.hpp"

#include <ostream>

namespace freearr {

namespace {

Coords primitive(Coords v) {
    IntVector tmp(v.begin(), v.end());
    make_primitive(tmp);
    return {tmp[0], tmp[1], tmp[2]};
}

// Coefficients of (a s + b t)^e indexed by the power of s.
std::vector<IntVector> binary_powers(const Integer& a, const Integer& b, int max_e) {
    std::vector<IntVector> out(max_e + 1);
    out[0] = {Integer(1)};
    for (int e = 1; e <= max_e; ++e) {
        const IntVector& prev = out[e - 1];
        IntVector next(e + 1, Integer(0));
        for (int p = 0; p < e; ++p) {
            if (prev[p] == 0) continue;
            mpz_addmul(next[p].get_mpz_t(), prev[p].get_mpz_t(), b.get_mpz_t());
            mpz_addmul(next[p + 1].get_mpz_t(), prev[p].get_mpz_t(), a.get_mpz_t());
        }
        out[e] = std::move(next);
    }
    return out;
}

IntVector binary_product(const IntVector& p, const IntVector& q) {
    IntVector out(p.size() + q.size() - 1, Integer(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        for (std::size_t j = 0; j < q.size(); ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), p[i].get_mpz_t(), q[j].get_mpz_t());
        }
    }
    return out;
}

}  // namespace

LineKernel line_kernel_basis(const Line& line) {
    const Integer &a = line.a(), &b = line.b(), &c = line.c();
    if (a == 0) return {{Integer(1), Integer(0), Integer(0)}, primitive({Integer(0), Integer(-c), b})};
    return {primitive({Integer(-b), a, Integer(0)}), primitive({Integer(-c), Integer(0), a})};
}

DerivationMatrix::DerivationMatrix(int degree, std::size_t lines)
    : degree_(degree),
      rows_(lines * static_cast<std::size_t>(degree + 1)),
      cols_(3 * monomial_count(degree)),
      entries_(rows_ * cols_, Integer(0)) {}

IntVector DerivationMatrix::apply(const IntVector& v) const {
    if (v.size() != cols_) throw Error("vector length does not match derivation matrix");
    IntVector out(rows_, Integer(0));
    for (std::size_t r = 0; r < rows_; ++r) {
        const Integer* row_ptr = row(r);
        for (std::size_t c = 0; c < cols_; ++c) {
            if (row_ptr[c] != 0 && v[c] != 0) mpz_addmul(out[r].get_mpz_t(), row_ptr[c].get_mpz_t(), v[c].get_mpz_t());
        }
    }
    return out;
}

RationalVector DerivationMatrix::apply(const RationalVector& v) const {
    if (v.size() != cols_) throw Error("vector length does not match derivation matrix");
    RationalVector out(rows_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r) {
        const Integer* row_ptr = row(r);
        for (std::size_t c = 0; c < cols_; ++c) {
            if (row_ptr[c] != 0 && v[c] != 0) out[r] += row_ptr[c] * v[c];
        }
    }
    return out;
}

bool DerivationMatrix::annihilates(const RationalVector& v) const {
    for (const auto& x : apply(v)) {
        if (x != 0) return false;
    }
    return true;
}

Eigen::MatrixXd DerivationMatrix::to_double() const {
    Eigen::MatrixXd out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = entries_[r * cols_ + c].get_d();
    }
    return out;
}

void DerivationMatrix::write_text(std::ostream& out) const {
    out << rows_ << ' ' << cols_ << '\n';
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) out << ' ';
            out << entries_[r * cols_ + c].get_str();
        }
        out << '\n';
    }
}

DerivationMatrix derivation_matrix(const Arrangement& arrangement, int d) {
    if (d < 0) throw Error("derivation degree must be nonnegative");
    const MonomialBasis basis(d);
    const std::size_t N = basis.size();
    DerivationMatrix M(d, arrangement.size());

    parallel_for(arrangement.size(), 0, [&](std::size_t i) {
        const Line& line = arrangement[i];
        const LineKernel kernel = line_kernel_basis(line);
        std::array<std::vector<IntVector>, 3> powers;
        for (int v = 0; v < 3; ++v) powers[v] = binary_powers(kernel.u[v], kernel.w[v], d);
        for (std::size_t m = 0; m < N; ++m) {
            const Exponent& e = basis[m];
            const IntVector value = binary_product(binary_product(powers[0][e[0]], powers[1][e[1]]), powers[2][e[2]]);
            for (int p = 0; p <= d; ++p) {
                if (value[p] == 0) continue;
                const std::size_t r = i * static_cast<std::size_t>(d + 1) + static_cast<std::size_t>(p);
                for (int comp = 0; comp < 3; ++comp) {
                    if (line[comp] != 0) M(r, comp * N + m) = line[comp] * value[p];
                }
            }
        }
    });
    return M;
}

std::vector<IntVector> euler_multiples(int d) {
    if (d < 1) throw Error("Euler multiples need degree at least 1");
    const MonomialBasis lower(d - 1);
    const std::size_t N = monomial_count(d);
    std::vector<IntVector> out;
    out.reserve(lower.size());
    for (const Exponent& e : lower.monomials()) {
        IntVector v(3 * N, Integer(0));
        v[0 * N + monomial_index(e[0] + 1, e[1], e[2])] = 1;
        v[1 * N + monomial_index(e[0], e[1] + 1, e[2])] = 1;
        v[2 * N + monomial_index(e[0], e[1], e[2] + 1)] = 1;
        out.push_back(std::move(v));
    }
    return out;
}

IntVector q_coefficient_vector(const Arrangement& arrangement) {
    IntVector q{Integer(1)};
    int degree = 0;
    for (const Line& line : arrangement.lines()) {
        q = multiply_forms(q, degree, IntVector{line.a(), line.b(), line.c()}, 1);
        ++degree;
    }
    return q;
}

Eigen::VectorXd to_double(const IntVector& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].get_d();
    return out;
}

RationalVector Derivation::component(int which) const {
    const std::size_t N = monomials();
    return RationalVector(coeffs.begin() + static_cast<std::ptrdiff_t>(which * N),
                          coeffs.begin() + static_cast<std::ptrdiff_t>((which + 1) * N));
}

RationalVector saito_determinant(const Derivation& theta1, const Derivation& theta2) {
    if (theta1.coeffs.size() != 3 * monomial_count(theta1.degree) ||
        theta2.coeffs.size() != 3 * monomial_count(theta2.degree)) {
        throw DegreeMismatch("derivation coefficient vector has the wrong length for its degree");
    }
    const int d1 = theta1.degree, d2 = theta2.degree;
    const RationalVector f1 = theta1.component(0), g1 = theta1.component(1), h1 = theta1.component(2);
    const RationalVector f2 = theta2.component(0), g2 = theta2.component(1), h2 = theta2.component(2);

    auto minor = [&](const RationalVector& a1, const RationalVector& b2, const RationalVector& a2,
                     const RationalVector& b1) {
        RationalVector out = multiply_forms(a1, d1, b2, d2);
        const RationalVector sub = multiply_forms(a2, d2, b1, d1);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= sub[i];
        return out;
    };
    const RationalVector gh = minor(g1, h2, g2, h1);
    const RationalVector fh = minor(f1, h2, f2, h1);
    const RationalVector fg = minor(f1, g2, f2, g1);

    const MonomialBasis mid(d1 + d2);
    RationalVector det(monomial_count(d1 + d2 + 1), Rational(0));
    for (std::size_t m = 0; m < mid.size(); ++m) {
        const Exponent& e = mid[m];
        if (gh[m] != 0) det[monomial_index(e[0] + 1, e[1], e[2])] += gh[m];
        if (fh[m] != 0) det[monomial_index(e[0], e[1] + 1, e[2])] -= fh[m];
        if (fg[m] != 0) det[monomial_index(e[0], e[1], e[2] + 1)] += fg[m];
    }
    return det;
}

}  // namespace freearr
