#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace freearr {

using Exponent = std::array<int, 3>;

/// Number of monomials of degree d in three variables, C(d+2, 2).
constexpr std::size_t monomial_count(int d) {
    return d < 0 ? 0 : static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(d + 2) / 2;
}

/// Position of x^i y^j z^k inside the graded-lex list of degree i+j+k (x > y > z).
constexpr std::size_t monomial_index(int i, int j, int k) {
    const int d = i + j + k;
    return static_cast<std::size_t>((d - i) * (d - i + 1) / 2 + (d - i - j));
}

inline std::size_t monomial_index(const Exponent& e) { return monomial_index(e[0], e[1], e[2]); }

class MonomialBasis {
public:
    explicit MonomialBasis(int degree);

    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return monomials_.size(); }
    const Exponent& operator[](std::size_t i) const noexcept { return monomials_[i]; }
    const std::vector<Exponent>& monomials() const noexcept { return monomials_; }

private:
    int degree_;
    std::vector<Exponent> monomials_;
};

MonomialBasis monomial_basis(int d);

std::string monomial_key(const Exponent& e);  // "i,j,k"
std::string monomial_name(const Exponent& e);  // "x^2*y", "1"

/// Product of two homogeneous polynomials given as coefficient vectors in graded-lex order.
template <class T>
std::vector<T> multiply_forms(const std::vector<T>& p, int dp, const std::vector<T>& q, int dq) {
    std::vector<T> out(monomial_count(dp + dq), T(0));
    const MonomialBasis bp(dp), bq(dq);
    for (std::size_t a = 0; a < bp.size(); ++a) {
        if (p[a] == 0) continue;
        for (std::size_t b = 0; b < bq.size(); ++b) {
            if (q[b] == 0) continue;
            out[monomial_index(bp[a][0] + bq[b][0], bp[a][1] + bq[b][1], bp[a][2] + bq[b][2])] += p[a] * q[b];
        }
    }
    return out;
}

}  // namespace freearr
