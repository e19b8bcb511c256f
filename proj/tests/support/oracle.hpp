#pragma once

// Reference computations used as test oracles. Everything here is written from the definitions
// with naive data structures and shares no code with the library's algorithms.

#include "freearr/arrangement.hpp"
#include "freearr/derivation.hpp"

#include <gmpxx.h>

#include <array>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Triple = std::array<long, 3>;

std::filesystem::path data_path(const std::string& name);
freearr::Arrangement fixture(const std::string& name);
freearr::Arrangement make(const std::vector<Triple>& lines);

struct Profile {
    std::map<int, long> t;
    long b2 = 0;
    long pairs = 0;  // sum over points of C(m, 2)
};

/// Intersects every pair with a cross product, normalizes points by their last nonzero coordinate,
/// and counts incident lines by direct evaluation.
Profile brute_profile(const std::vector<Triple>& lines);
Profile brute_profile(const freearr::Arrangement& arrangement);

/// Projective classes of nonzero integer triples with max norm <= R, keyed with the last nonzero
/// coordinate made positive.
std::set<Triple> brute_pool(long R);

/// Sparse polynomial in x, y, z with rational coefficients.
using Poly = std::map<std::array<int, 3>, mpq_class>;

Poly linear(const Triple& abc);
Poly mul(const Poly& p, const Poly& q);
Poly add(const Poly& p, const Poly& q, const mpq_class& scale = 1);
Poly from_coeffs(const freearr::RationalVector& coeffs, int degree);
bool equal(const Poly& p, const Poly& q);
Poly defining_polynomial(const freearr::Arrangement& arrangement);

/// Components (f, g, h) of a derivation given as stacked coefficients.
std::array<Poly, 3> components(const freearr::Derivation& theta);

/// det of the rows (x, y, z), (f1, g1, h1), (f2, g2, h2) by cofactor expansion along the first row.
Poly saito_det(const freearr::Derivation& theta1, const freearr::Derivation& theta2);

/// theta(alpha) for a linear form alpha = a x + b y + c z.
Poly apply(const freearr::Derivation& theta, const Triple& abc);

/// True when alpha divides p: checked by substituting a parametrization of alpha = 0.
bool vanishes_on_line(const Poly& p, const Triple& abc);

/// Rank of a rational matrix by plain Gaussian elimination.
std::size_t rank(std::vector<std::vector<mpq_class>> rows);

/// Random subset of the R pool of the requested size, lines in random order.
std::vector<Triple> random_pool_subset(std::mt19937_64& rng, long R, std::size_t n);

}  // namespace oracle
