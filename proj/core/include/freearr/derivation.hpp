#pragma once

#include "freearr/arrangement.hpp"
#include "freearr/monomial.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

namespace freearr {

struct LineKernel {
    Coords u;
    Coords w;
};

/// Two primitive integer vectors spanning {v : a v1 + b v2 + c v3 = 0}.
LineKernel line_kernel_basis(const Line& line);

/// Linear conditions alpha_i | theta(alpha_i) on the stacked coefficients (f, g, h) of a degree-d
/// derivation. Row i*(d+1) + p is the coefficient of s^p t^(d-p) in theta(alpha_i)(s u_i + t w_i).
class DerivationMatrix {
public:
    DerivationMatrix(int degree, std::size_t lines);

    int degree() const noexcept { return degree_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t monomials() const noexcept { return cols_ / 3; }

    const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Integer* row(std::size_t r) const { return entries_.data() + r * cols_; }

    std::size_t row_line(std::size_t r) const noexcept { return r / static_cast<std::size_t>(degree_ + 1); }
    int row_power(std::size_t r) const noexcept { return static_cast<int>(r % static_cast<std::size_t>(degree_ + 1)); }

    /// Exact product M v.
    IntVector apply(const IntVector& v) const;
    RationalVector apply(const RationalVector& v) const;
    bool annihilates(const RationalVector& v) const;

    Eigen::MatrixXd to_double() const;

    /// Plain-text dump: a "rows cols" header, then one line of integers per row.
    void write_text(std::ostream& out) const;

private:
    int degree_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Integer> entries_;
};

DerivationMatrix derivation_matrix(const Arrangement& arrangement, int d);

/// Stacked coefficient vectors of m * theta_E for every monomial m of degree d-1.
std::vector<IntVector> euler_multiples(int d);

/// Coefficients of Q = prod alpha_i in the degree-n monomial basis.
IntVector q_coefficient_vector(const Arrangement& arrangement);
Eigen::VectorXd to_double(const IntVector& v);

/// A derivation f d/dx + g d/dy + h d/dz with homogeneous coefficients of one degree,
/// stored as the stacked vector (f, g, h).
struct Derivation {
    int degree = 0;
    RationalVector coeffs;

    std::size_t monomials() const noexcept { return coeffs.size() / 3; }
    RationalVector component(int which) const;
};

/// x(g1 h2 - g2 h1) - y(f1 h2 - f2 h1) + z(f1 g2 - f2 g1) in the monomial basis of degree d1 + d2 + 1.
RationalVector saito_determinant(const Derivation& theta1, const Derivation& theta2);

}  // namespace freearr
